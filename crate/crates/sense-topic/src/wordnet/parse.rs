//! Parser for the WordNet 3.0 plain-text database format.
//!
//! Lines are space-separated fixed-field records; glosses follow a `|`
//! delimiter. Header lines (leading whitespace) are skipped. Any malformed
//! line aborts the load with the file name and line number.

use std::borrow::Cow;
use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

use super::{
    normalize_lemma, KnowledgeBase, PartOfSpeech, SenseEntry, SenseKey, Synset, SynsetId,
    Vocabulary,
};

const DATA_FILES: [&str; 4] = ["data.noun", "data.verb", "data.adj", "data.adv"];
const INDEX_FILES: [&str; 4] = ["index.noun", "index.verb", "index.adj", "index.adv"];
const EXC_FILES: [&str; 4] = ["noun.exc", "verb.exc", "adj.exc", "adv.exc"];
const SENSE_FILE: &str = "index.sense";

/// In-memory contents of the database files. [`read_dir`](Self::read_dir)
/// loads them from disk; embedded knowledge bases construct this directly
/// from `include_str!` data.
pub struct WordNetSources<'a> {
    /// `data.{noun,verb,adj,adv}` in that order.
    pub data: [Cow<'a, str>; 4],
    /// `index.{noun,verb,adj,adv}` in that order.
    pub index: [Cow<'a, str>; 4],
    /// `index.sense` with tag counts.
    pub index_sense: Cow<'a, str>,
    /// Optional `{noun,verb,adj,adv}.exc` morphological exception lists.
    pub exceptions: [Option<Cow<'a, str>>; 4],
}

impl WordNetSources<'static> {
    pub fn read_dir(dir: &Path) -> Result<WordNetSources<'static>> {
        let read_required = |name: &'static str| -> Result<Cow<'static, str>> {
            let path = dir.join(name);
            if !path.is_file() {
                return Err(Error::MissingFile {
                    name,
                    dir: dir.to_path_buf(),
                });
            }
            Ok(Cow::Owned(std::fs::read_to_string(&path)?))
        };
        let mut data: [Cow<'static, str>; 4] = Default::default();
        let mut index: [Cow<'static, str>; 4] = Default::default();
        for i in 0..4 {
            data[i] = read_required(DATA_FILES[i])?;
        }
        for i in 0..4 {
            index[i] = read_required(INDEX_FILES[i])?;
        }
        let index_sense = read_required(SENSE_FILE)?;
        let mut exceptions: [Option<Cow<'static, str>>; 4] = Default::default();
        for i in 0..4 {
            let path = dir.join(EXC_FILES[i]);
            if path.is_file() {
                exceptions[i] = Some(Cow::Owned(std::fs::read_to_string(&path)?));
            }
        }
        Ok(WordNetSources {
            data,
            index,
            index_sense,
            exceptions,
        })
    }
}

fn parse_err(file: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Lines of a database file with 1-based numbers, license header skipped.
/// Header lines start with whitespace.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with(' '))
}

struct FieldCursor<'a> {
    file: &'a str,
    line_no: usize,
    fields: std::str::SplitWhitespace<'a>,
}

impl<'a> FieldCursor<'a> {
    fn new(file: &'a str, line_no: usize, text: &'a str) -> FieldCursor<'a> {
        FieldCursor {
            file,
            line_no,
            fields: text.split_whitespace(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.fields
            .next()
            .ok_or_else(|| parse_err(self.file, self.line_no, format!("truncated line: missing {what}")))
    }

    fn next_u32(&mut self, what: &str) -> Result<u32> {
        let tok = self.next(what)?;
        tok.parse()
            .map_err(|_| parse_err(self.file, self.line_no, format!("bad {what} `{tok}`")))
    }

    fn next_hex(&mut self, what: &str) -> Result<u32> {
        let tok = self.next(what)?;
        u32::from_str_radix(tok, 16)
            .map_err(|_| parse_err(self.file, self.line_no, format!("bad {what} `{tok}`")))
    }
}

/// Strip the adjective syntactic marker (`(p)`, `(a)`, `(ip)`) from a word.
fn strip_marker(word: &str) -> &str {
    match word.find('(') {
        Some(i) if word.ends_with(')') => &word[..i],
        _ => word,
    }
}

fn parse_data_file(
    file: &str,
    text: &str,
    pos: PartOfSpeech,
    vocab: &mut Vocabulary,
    synsets: &mut HashMap<SynsetId, Synset>,
) -> Result<()> {
    for (line_no, line) in content_lines(text) {
        let (head, gloss) = line
            .split_once('|')
            .ok_or_else(|| parse_err(file, line_no, "no `|` gloss delimiter"))?;
        let gloss = gloss.trim();
        if gloss.is_empty() {
            return Err(parse_err(file, line_no, "empty gloss"));
        }
        let mut cur = FieldCursor::new(file, line_no, head);
        let offset = cur.next_u32("synset offset")?;
        let _lex_filenum = cur.next("lex_filenum")?;
        let ss_type = cur.next("ss_type")?;
        let ss_char = ss_type.chars().next().unwrap_or('?');
        let line_pos = PartOfSpeech::from_tag(ss_char)
            .ok_or_else(|| parse_err(file, line_no, format!("bad ss_type `{ss_type}`")))?;
        if line_pos != pos {
            return Err(parse_err(
                file,
                line_no,
                format!("ss_type `{ss_type}` does not belong in {file}"),
            ));
        }
        let w_cnt = cur.next_hex("word count")?;
        if w_cnt == 0 {
            return Err(parse_err(file, line_no, "synset with zero words"));
        }
        let mut lemmas = Vec::with_capacity(w_cnt as usize);
        for _ in 0..w_cnt {
            let word = cur.next("word")?;
            let _lex_id = cur.next_hex("lex_id")?;
            let lemma = normalize_lemma(strip_marker(word));
            vocab.intern(&lemma);
            lemmas.push((lemma, 0u32));
        }
        let p_cnt = cur.next_u32("pointer count")?;
        let mut relations = Vec::with_capacity(p_cnt as usize);
        for _ in 0..p_cnt {
            let symbol = cur.next("pointer symbol")?;
            let target_offset = cur.next_u32("pointer offset")?;
            let target_pos_tok = cur.next("pointer pos")?;
            let target_pos = PartOfSpeech::from_tag(target_pos_tok.chars().next().unwrap_or('?'))
                .ok_or_else(|| {
                    parse_err(file, line_no, format!("bad pointer pos `{target_pos_tok}`"))
                })?;
            let _source_target = cur.next("pointer source/target")?;
            relations.push((symbol.to_string(), SynsetId::new(target_offset, target_pos)));
        }
        // Verb frames follow the pointers; they are not used here.
        let id = SynsetId::new(offset, pos);
        let synset = Synset {
            id,
            lemmas,
            gloss: gloss.to_string(),
            relations,
        };
        if synsets.insert(id, synset).is_some() {
            return Err(parse_err(file, line_no, format!("duplicate synset offset {offset}")));
        }
    }
    Ok(())
}

fn parse_index_file(
    file: &str,
    text: &str,
    pos: PartOfSpeech,
    synsets: &HashMap<SynsetId, Synset>,
    sense_index: &mut HashMap<String, [Vec<SenseEntry>; 4]>,
) -> Result<()> {
    for (line_no, line) in content_lines(text) {
        let mut cur = FieldCursor::new(file, line_no, line);
        let lemma = normalize_lemma(cur.next("lemma")?);
        let pos_tok = cur.next("pos")?;
        let line_pos = PartOfSpeech::from_tag(pos_tok.chars().next().unwrap_or('?'))
            .ok_or_else(|| parse_err(file, line_no, format!("bad pos `{pos_tok}`")))?;
        if line_pos != pos {
            return Err(parse_err(
                file,
                line_no,
                format!("pos `{pos_tok}` does not belong in {file}"),
            ));
        }
        let synset_cnt = cur.next_u32("synset count")?;
        let p_cnt = cur.next_u32("pointer count")?;
        for _ in 0..p_cnt {
            cur.next("pointer symbol")?;
        }
        let _sense_cnt = cur.next_u32("sense count")?;
        let _tagsense_cnt = cur.next_u32("tagsense count")?;
        let mut entries = Vec::with_capacity(synset_cnt as usize);
        for rank in 1..=synset_cnt {
            let offset = cur.next_u32("synset offset")?;
            let id = SynsetId::new(offset, pos);
            let synset = synsets.get(&id).ok_or_else(|| {
                parse_err(file, line_no, format!("offset {offset} not present in data file"))
            })?;
            if !synset.has_lemma(&lemma) {
                return Err(parse_err(
                    file,
                    line_no,
                    format!("synset {offset} does not contain lemma `{lemma}`"),
                ));
            }
            entries.push(SenseEntry {
                synset: id,
                sense_rank: rank,
                tag_count: 0,
            });
        }
        let per_pos = sense_index.entry(lemma.clone()).or_default();
        if !per_pos[pos.idx()].is_empty() {
            return Err(parse_err(file, line_no, format!("duplicate index entry for `{lemma}`")));
        }
        per_pos[pos.idx()] = entries;
    }
    Ok(())
}

fn parse_sense_file(
    text: &str,
    synsets: &mut HashMap<SynsetId, Synset>,
    sense_index: &mut HashMap<String, [Vec<SenseEntry>; 4]>,
    key_to_sense: &mut HashMap<String, (SynsetId, String)>,
    sense_to_key: &mut HashMap<(SynsetId, String), SenseKey>,
) -> Result<()> {
    for (line_no, line) in content_lines(text) {
        let mut cur = FieldCursor::new(SENSE_FILE, line_no, line);
        let raw_key = cur.next("sense key")?;
        let offset = cur.next_u32("synset offset")?;
        let _sense_number = cur.next_u32("sense number")?;
        let tag_count = cur.next_u32("tag count")?;
        let key = SenseKey::parse(raw_key)
            .map_err(|e| parse_err(SENSE_FILE, line_no, e.to_string()))?;
        let lemma = normalize_lemma(key.lemma());
        let pos = key.pos();
        let id = SynsetId::new(offset, pos);
        let synset = synsets
            .get_mut(&id)
            .ok_or_else(|| parse_err(SENSE_FILE, line_no, format!("unknown synset {id}")))?;
        let slot = synset
            .lemmas
            .iter_mut()
            .find(|(l, _)| *l == lemma)
            .ok_or_else(|| {
                parse_err(SENSE_FILE, line_no, format!("synset {id} has no lemma `{lemma}`"))
            })?;
        slot.1 = tag_count;
        if let Some(per_pos) = sense_index.get_mut(&lemma) {
            for entry in per_pos[pos.idx()].iter_mut() {
                if entry.synset == id {
                    entry.tag_count = tag_count;
                }
            }
        }
        if key_to_sense
            .insert(raw_key.to_string(), (id, lemma.clone()))
            .is_some()
        {
            return Err(parse_err(SENSE_FILE, line_no, format!("duplicate sense key `{raw_key}`")));
        }
        sense_to_key.insert((id, lemma), key);
    }
    Ok(())
}

fn parse_exception_file(file: &str, text: &str) -> Result<HashMap<String, Vec<String>>> {
    let mut map: HashMap<String, Vec<String>> = HashMap::new();
    for (line_no, line) in content_lines(text) {
        let mut fields = line.split_whitespace();
        let inflected = fields
            .next()
            .ok_or_else(|| parse_err(file, line_no, "empty exception line"))?;
        let bases: Vec<String> = fields.map(normalize_lemma).collect();
        if bases.is_empty() {
            return Err(parse_err(file, line_no, "exception line without base form"));
        }
        map.entry(normalize_lemma(inflected)).or_default().extend(bases);
    }
    Ok(map)
}

pub(super) fn build(sources: &WordNetSources<'_>) -> Result<KnowledgeBase> {
    let mut vocab = Vocabulary::default();
    let mut synsets = HashMap::new();
    for (i, pos) in PartOfSpeech::ALL.into_iter().enumerate() {
        parse_data_file(DATA_FILES[i], &sources.data[i], pos, &mut vocab, &mut synsets)?;
    }

    let mut sense_index = HashMap::new();
    for (i, pos) in PartOfSpeech::ALL.into_iter().enumerate() {
        parse_index_file(INDEX_FILES[i], &sources.index[i], pos, &synsets, &mut sense_index)?;
    }

    let mut key_to_sense = HashMap::new();
    let mut sense_to_key = HashMap::new();
    parse_sense_file(
        &sources.index_sense,
        &mut synsets,
        &mut sense_index,
        &mut key_to_sense,
        &mut sense_to_key,
    )?;

    let mut exceptions: [HashMap<String, Vec<String>>; 4] = Default::default();
    for i in 0..4 {
        if let Some(text) = &sources.exceptions[i] {
            exceptions[i] = parse_exception_file(EXC_FILES[i], text)?;
        }
    }

    // Relation targets must exist; index <-> data consistency was enforced
    // while parsing the index files.
    for synset in synsets.values() {
        for (_, target) in &synset.relations {
            if !synsets.contains_key(target) {
                return Err(Error::Model(format!(
                    "synset {} points at missing synset {}",
                    synset.id, target
                )));
            }
        }
    }

    Ok(KnowledgeBase {
        synsets,
        sense_index,
        vocab,
        key_to_sense,
        sense_to_key,
        exceptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{mini_kb, mini_sources};

    #[test]
    fn loads_mini_fixture() {
        let kb = mini_kb();
        assert!(kb.synset_count() > 20);
        assert!(kb.vocab().len() > 30);
    }

    #[test]
    fn missing_directory_reports_first_missing_file() {
        let dir = tempfile::tempdir().unwrap();
        let err = KnowledgeBase::load(dir.path()).unwrap_err();
        assert!(err.to_string().contains("missing data.noun"), "{err}");
    }

    #[test]
    fn truncated_sense_line_reports_line_number() {
        let mut sources = mini_sources();
        let mut text = sources.index_sense.to_string();
        text.push_str("cell%1:06:99:: 99999999\n");
        let bad_line_no = text.lines().count();
        sources.index_sense = text.into();
        let err = KnowledgeBase::from_sources(&sources).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(&format!("index.sense:{bad_line_no}")), "{msg}");
    }

    #[test]
    fn malformed_data_line_is_not_skipped() {
        let mut sources = mini_sources();
        let mut text = sources.data[0].to_string();
        text.push_str("99999990 06 n 01 widget | \n");
        sources.data[0] = text.into();
        let err = KnowledgeBase::from_sources(&sources).unwrap_err();
        assert!(err.to_string().contains("data.noun"), "{err}");
    }

    #[test]
    fn dangling_relation_target_is_an_error() {
        let mut sources = mini_sources();
        let mut text = sources.data[0].to_string();
        text.push_str(
            "99999991 06 n 01 widget 0 001 @ 12345678 n 0000 | a nonexistent hypernym target\n",
        );
        let mut index = sources.index[0].to_string();
        index.push_str("widget n 1 0 1 0 99999991\n");
        sources.data[0] = text.into();
        sources.index[0] = index.into();
        let err = KnowledgeBase::from_sources(&sources).unwrap_err();
        assert!(err.to_string().contains("missing synset"), "{err}");
    }

    #[test]
    fn loads_from_directory_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let src = mini_sources();
        for (i, name) in DATA_FILES.iter().enumerate() {
            std::fs::write(dir.path().join(name), src.data[i].as_bytes()).unwrap();
        }
        for (i, name) in INDEX_FILES.iter().enumerate() {
            std::fs::write(dir.path().join(name), src.index[i].as_bytes()).unwrap();
        }
        std::fs::write(dir.path().join(SENSE_FILE), src.index_sense.as_bytes()).unwrap();
        for (i, name) in EXC_FILES.iter().enumerate() {
            if let Some(text) = &src.exceptions[i] {
                std::fs::write(dir.path().join(name), text.as_bytes()).unwrap();
            }
        }
        let kb = KnowledgeBase::load(dir.path()).unwrap();
        assert_eq!(kb.synset_count(), mini_kb().synset_count());
    }
}
