//! Immutable in-memory knowledge base over the WordNet 3.0 database files.
//!
//! The knowledge base provides sense inventories per (lemma, part of speech),
//! glosses, per-sense frequency counts, semantic relations, and the sparse
//! Dirichlet prior over each synset's lemma set. It is loaded once and never
//! mutated, so shared references can be used freely across threads.

mod morphy;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

pub use parse::WordNetSources;

/// The four content-word categories. Adjective satellites collapse into
/// [`PartOfSpeech::Adjective`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartOfSpeech {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl PartOfSpeech {
    pub const ALL: [PartOfSpeech; 4] = [
        PartOfSpeech::Noun,
        PartOfSpeech::Verb,
        PartOfSpeech::Adjective,
        PartOfSpeech::Adverb,
    ];

    /// Index into per-POS tables.
    #[inline]
    pub(crate) fn idx(self) -> usize {
        match self {
            PartOfSpeech::Noun => 0,
            PartOfSpeech::Verb => 1,
            PartOfSpeech::Adjective => 2,
            PartOfSpeech::Adverb => 3,
        }
    }

    /// One-letter tag used in the database files (`n`, `v`, `a`, `r`).
    pub fn tag(self) -> char {
        match self {
            PartOfSpeech::Noun => 'n',
            PartOfSpeech::Verb => 'v',
            PartOfSpeech::Adjective => 'a',
            PartOfSpeech::Adverb => 'r',
        }
    }

    /// Parse a database POS tag. `s` (adjective satellite) maps to
    /// `Adjective`.
    pub fn from_tag(c: char) -> Option<PartOfSpeech> {
        match c {
            'n' => Some(PartOfSpeech::Noun),
            'v' => Some(PartOfSpeech::Verb),
            'a' | 's' => Some(PartOfSpeech::Adjective),
            'r' => Some(PartOfSpeech::Adverb),
            _ => None,
        }
    }

    /// Parse the numeric synset type used in sense keys (1=n 2=v 3=a 4=r 5=s).
    pub fn from_ss_type(d: u8) -> Option<PartOfSpeech> {
        match d {
            1 => Some(PartOfSpeech::Noun),
            2 => Some(PartOfSpeech::Verb),
            3 | 5 => Some(PartOfSpeech::Adjective),
            4 => Some(PartOfSpeech::Adverb),
            _ => None,
        }
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PartOfSpeech::Noun => "noun",
            PartOfSpeech::Verb => "verb",
            PartOfSpeech::Adjective => "adjective",
            PartOfSpeech::Adverb => "adverb",
        };
        f.write_str(name)
    }
}

/// Identifies a synset by its byte offset in the source data file plus the
/// part of speech. `(offset, pos)` is unique within one knowledge base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynsetId {
    pub offset: u32,
    pub pos: PartOfSpeech,
}

impl SynsetId {
    pub fn new(offset: u32, pos: PartOfSpeech) -> SynsetId {
        SynsetId { offset, pos }
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos.tag())
    }
}

/// Interned vocabulary identifier for a lemma string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordId(pub u32);

/// A set of synonymous senses sharing one gloss.
#[derive(Debug, Clone)]
pub struct Synset {
    pub id: SynsetId,
    /// Lemmas in database order, each with its tag count (frequency of the
    /// sense in the reference annotated text).
    pub lemmas: Vec<(String, u32)>,
    /// Raw gloss text: definition, optionally followed by `; "example"`
    /// segments.
    pub gloss: String,
    /// Semantic pointers: (pointer symbol, target synset).
    pub relations: Vec<(String, SynsetId)>,
}

impl Synset {
    /// The definition portion of the gloss, with quoted example sentences
    /// stripped.
    pub fn definition(&self) -> String {
        let parts: Vec<&str> = self
            .gloss
            .split("; ")
            .take_while(|seg| !seg.trim_start().starts_with('"'))
            .collect();
        if parts.is_empty() {
            self.gloss.trim().to_string()
        } else {
            parts.join("; ").trim().to_string()
        }
    }

    pub fn has_lemma(&self, lemma: &str) -> bool {
        self.lemmas.iter().any(|(l, _)| l == lemma)
    }
}

/// Canonical WordNet sense-key string, e.g. `cell%1:06:03::`.
///
/// Parsing and formatting round-trip byte-identically: the raw string is
/// kept verbatim and only validated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SenseKey {
    raw: String,
}

impl SenseKey {
    pub fn parse(raw: &str) -> Result<SenseKey> {
        let (lemma, rest) = raw.split_once('%').ok_or_else(|| Error::InvalidArgument(
            format!("sense key `{raw}` has no `%` separator"),
        ))?;
        if lemma.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "sense key `{raw}` has an empty lemma"
            )));
        }
        let fields: Vec<&str> = rest.split(':').collect();
        if fields.len() != 5 {
            return Err(Error::InvalidArgument(format!(
                "sense key `{raw}` has {} `:` fields, expected 5",
                fields.len()
            )));
        }
        let ss_type: u8 = fields[0].parse().map_err(|_| {
            Error::InvalidArgument(format!("sense key `{raw}` has a non-numeric ss_type"))
        })?;
        if PartOfSpeech::from_ss_type(ss_type).is_none() {
            return Err(Error::InvalidArgument(format!(
                "sense key `{raw}` has ss_type {ss_type}, expected 1-5"
            )));
        }
        Ok(SenseKey {
            raw: raw.to_string(),
        })
    }

    pub fn as_str(&self) -> &str {
        &self.raw
    }

    pub fn lemma(&self) -> &str {
        self.raw.split('%').next().unwrap_or("")
    }

    pub fn pos(&self) -> PartOfSpeech {
        let ss = self
            .raw
            .split('%')
            .nth(1)
            .and_then(|r| r.split(':').next())
            .and_then(|d| d.parse::<u8>().ok())
            .unwrap_or(1);
        PartOfSpeech::from_ss_type(ss).unwrap_or(PartOfSpeech::Noun)
    }
}

impl fmt::Display for SenseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

/// One candidate sense of a (lemma, pos) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SenseEntry {
    pub synset: SynsetId,
    /// 1-based rank in the WordNet sense index order (rank 1 = first sense).
    pub sense_rank: u32,
    pub tag_count: u32,
}

/// Sparse Dirichlet prior over one synset's lemma set.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaPrior {
    /// `(word id, tag count + epsilon)` for every lemma of the synset, in
    /// synset lemma order. Words outside the lemma set have weight exactly 0.
    pub entries: Vec<(WordId, f64)>,
    /// Sum of all entries.
    pub l1_norm: f64,
}

/// Bidirectional lemma <-> word-id map.
#[derive(Debug, Default)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, WordId>,
}

impl Vocabulary {
    pub(crate) fn intern(&mut self, word: &str) -> WordId {
        if let Some(&id) = self.index.get(word) {
            return id;
        }
        let id = WordId(self.words.len() as u32);
        self.words.push(word.to_string());
        self.index.insert(word.to_string(), id);
        id
    }

    pub fn id(&self, word: &str) -> Option<WordId> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: WordId) -> Option<&str> {
        self.words.get(id.0 as usize).map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Immutable knowledge base loaded from the WordNet 3.0 database files.
pub struct KnowledgeBase {
    synsets: HashMap<SynsetId, Synset>,
    /// lemma -> per-POS sense lists in WordNet sense-rank order.
    sense_index: HashMap<String, [Vec<SenseEntry>; 4]>,
    vocab: Vocabulary,
    /// raw sense key -> (synset, lemma).
    key_to_sense: HashMap<String, (SynsetId, String)>,
    /// (synset, lemma) -> sense key.
    sense_to_key: HashMap<(SynsetId, String), SenseKey>,
    /// Per-POS morphological exception maps (inflected -> base forms).
    exceptions: [HashMap<String, Vec<String>>; 4],
}

impl KnowledgeBase {
    /// Load from a directory containing the WordNet 3.0 plain-text database:
    /// `data.{noun,verb,adj,adv}`, `index.{noun,verb,adj,adv}` and
    /// `index.sense`. Exception lists (`noun.exc` etc.) are used when present.
    pub fn load(dir: &Path) -> Result<KnowledgeBase> {
        let sources = WordNetSources::read_dir(dir)?;
        Self::from_sources(&sources)
    }

    /// Build from in-memory file contents. This is the loading core; it backs
    /// both [`KnowledgeBase::load`] and embedded knowledge bases that ship
    /// inside a binary.
    pub fn from_sources(sources: &WordNetSources<'_>) -> Result<KnowledgeBase> {
        parse::build(sources)
    }

    /// Number of synsets.
    pub fn synset_count(&self) -> usize {
        self.synsets.len()
    }

    pub fn synset(&self, id: SynsetId) -> Result<&Synset> {
        self.synsets.get(&id).ok_or(Error::UnknownSynset(id))
    }

    pub fn contains(&self, id: SynsetId) -> bool {
        self.synsets.contains_key(&id)
    }

    pub fn synset_ids(&self) -> impl Iterator<Item = SynsetId> + '_ {
        self.synsets.keys().copied()
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Candidate synsets of a normalized lemma in WordNet sense-rank order.
    /// Unknown lemmas yield an empty slice.
    pub fn senses_of(&self, lemma: &str, pos: PartOfSpeech) -> &[SenseEntry] {
        self.sense_index
            .get(lemma)
            .map(|per_pos| per_pos[pos.idx()].as_slice())
            .unwrap_or(&[])
    }

    /// Sparse Dirichlet prior for synset `s`: `tag_count + epsilon` for every
    /// lemma of the synset, exactly zero elsewhere.
    pub fn eta_prior(&self, s: SynsetId, epsilon: f64) -> Result<EtaPrior> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        let synset = self.synset(s)?;
        let mut entries = Vec::with_capacity(synset.lemmas.len());
        let mut l1_norm = 0.0;
        for (lemma, tag_count) in &synset.lemmas {
            let id = self
                .vocab
                .id(lemma)
                .expect("synset lemma must be interned at load");
            let weight = *tag_count as f64 + epsilon;
            l1_norm += weight;
            entries.push((id, weight));
        }
        Ok(EtaPrior { entries, l1_norm })
    }

    /// Resolve a sense key to its synset and lemma.
    pub fn resolve_sense_key(&self, key: &str) -> Option<(SynsetId, &str)> {
        self.key_to_sense
            .get(key)
            .map(|(id, lemma)| (*id, lemma.as_str()))
    }

    /// The sense key of a (synset, lemma) pair.
    pub fn sense_key(&self, synset: SynsetId, lemma: &str) -> Option<&SenseKey> {
        self.sense_to_key.get(&(synset, lemma.to_string()))
    }

    /// Iterate all sense keys (for consistency checks).
    pub fn sense_keys(&self) -> impl Iterator<Item = &str> + '_ {
        self.key_to_sense.keys().map(|s| s.as_str())
    }

    /// Candidate base forms for a surface word: the word itself when it is
    /// in the index, exception-list entries, and suffix-detachment results,
    /// restricted to lemmas known for `pos`.
    pub fn morphy(&self, surface: &str, pos: PartOfSpeech) -> Vec<String> {
        morphy::morphy(self, surface, pos)
    }

    pub(crate) fn exceptions(&self, pos: PartOfSpeech) -> &HashMap<String, Vec<String>> {
        &self.exceptions[pos.idx()]
    }

    pub(crate) fn has_lemma_pos(&self, lemma: &str, pos: PartOfSpeech) -> bool {
        !self.senses_of(lemma, pos).is_empty()
    }
}

/// Normalize a lemma: lowercase with spaces encoded as underscores.
pub fn normalize_lemma(s: &str) -> String {
    s.trim().to_lowercase().replace(' ', "_")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::mini_kb;

    #[test]
    fn pos_tags_round_trip() {
        for pos in PartOfSpeech::ALL {
            assert_eq!(PartOfSpeech::from_tag(pos.tag()), Some(pos));
        }
        assert_eq!(
            PartOfSpeech::from_tag('s'),
            Some(PartOfSpeech::Adjective),
            "satellite collapses to adjective"
        );
        assert_eq!(PartOfSpeech::from_tag('x'), None);
    }

    #[test]
    fn sense_key_parse_rejects_malformed() {
        assert!(SenseKey::parse("cell%1:06:03::").is_ok());
        assert!(SenseKey::parse("cell").is_err());
        assert!(SenseKey::parse("cell%9:06:03::").is_err());
        assert!(SenseKey::parse("cell%1:06:03:").is_err());
        assert!(SenseKey::parse("%1:06:03::").is_err());
    }

    #[test]
    fn sense_key_round_trips_byte_identically() {
        let kb = mini_kb();
        for raw in kb.sense_keys() {
            let parsed = SenseKey::parse(raw).expect("every loaded key parses");
            assert_eq!(parsed.to_string(), raw);
        }
    }

    #[test]
    fn senses_of_unknown_lemma_is_empty() {
        let kb = mini_kb();
        assert!(kb.senses_of("zzzz_not_a_word", PartOfSpeech::Noun).is_empty());
    }

    #[test]
    fn senses_of_cricket_matches_inventory() {
        let kb = mini_kb();
        assert_eq!(kb.senses_of("cricket", PartOfSpeech::Noun).len(), 2);
        assert_eq!(kb.senses_of("cricket", PartOfSpeech::Verb).len(), 1);
    }

    #[test]
    fn senses_of_cell_has_seven_noun_senses() {
        let kb = mini_kb();
        assert_eq!(kb.senses_of("cell", PartOfSpeech::Noun).len(), 7);
    }

    #[test]
    fn sense_rank_order_is_index_order() {
        let kb = mini_kb();
        let senses = kb.senses_of("cricket", PartOfSpeech::Noun);
        let ranks: Vec<u32> = senses.iter().map(|e| e.sense_rank).collect();
        assert_eq!(ranks, vec![1, 2]);
    }

    #[test]
    fn eta_prior_matches_tag_counts() {
        let kb = mini_kb();
        // goal/end synset carries tag counts 57 and 14.
        let senses = kb.senses_of("goal", PartOfSpeech::Noun);
        assert_eq!(senses.len(), 1);
        let eta = kb.eta_prior(senses[0].synset, 0.1).unwrap();
        assert_eq!(eta.entries.len(), 2);
        let weights: Vec<f64> = eta.entries.iter().map(|(_, w)| *w).collect();
        assert!((weights[0] - 57.1).abs() < 1e-12);
        assert!((weights[1] - 14.1).abs() < 1e-12);
        assert!((eta.l1_norm - 71.2).abs() < 1e-12);
    }

    #[test]
    fn eta_prior_zero_tag_counts_fall_back_to_epsilon() {
        let kb = mini_kb();
        // every cell sense has zero tag counts in the fixture except #1
        let senses = kb.senses_of("cell", PartOfSpeech::Noun);
        let eta = kb.eta_prior(senses[2].synset, 0.1).unwrap();
        for (_, w) in &eta.entries {
            assert!((w - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn eta_prior_support_is_lemma_set() {
        let kb = mini_kb();
        for id in kb.synset_ids() {
            let synset = kb.synset(id).unwrap();
            let eta = kb.eta_prior(id, 0.1).unwrap();
            assert_eq!(eta.entries.len(), synset.lemmas.len());
            let total: f64 = eta.entries.iter().map(|(_, w)| w).sum();
            assert!((total - eta.l1_norm).abs() <= 1e-12 * eta.l1_norm.max(1.0));
        }
    }

    #[test]
    fn eta_prior_unknown_synset_errors() {
        let kb = mini_kb();
        let bogus = SynsetId::new(99_999_999, PartOfSpeech::Noun);
        assert!(matches!(
            kb.eta_prior(bogus, 0.1),
            Err(Error::UnknownSynset(_))
        ));
    }

    #[test]
    fn index_and_data_stay_consistent() {
        let kb = mini_kb();
        for (lemma, per_pos) in &kb.sense_index {
            for entries in per_pos {
                for entry in entries {
                    let synset = kb.synset(entry.synset).expect("index target exists");
                    assert!(
                        synset.has_lemma(lemma),
                        "synset {} misses lemma {lemma}",
                        entry.synset
                    );
                }
            }
        }
    }

    #[test]
    fn definition_strips_examples() {
        let kb = mini_kb();
        let senses = kb.senses_of("cricket", PartOfSpeech::Verb);
        let synset = kb.synset(senses[0].synset).unwrap();
        assert!(!synset.definition().contains('"'));
    }
}
