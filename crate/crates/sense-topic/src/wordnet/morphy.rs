//! WordNet's morphological analysis: exception lists plus the documented
//! per-POS suffix detachment rules. Only base forms actually present in the
//! sense index are returned.

use super::{normalize_lemma, KnowledgeBase, PartOfSpeech};

const NOUN_RULES: [(&str, &str); 8] = [
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("men", "man"),
    ("ies", "y"),
];

const VERB_RULES: [(&str, &str); 8] = [
    ("s", ""),
    ("ies", "y"),
    ("es", "e"),
    ("es", ""),
    ("ed", "e"),
    ("ed", ""),
    ("ing", "e"),
    ("ing", ""),
];

const ADJ_RULES: [(&str, &str); 4] = [("er", ""), ("est", ""), ("er", "e"), ("est", "e")];

fn rules(pos: PartOfSpeech) -> &'static [(&'static str, &'static str)] {
    match pos {
        PartOfSpeech::Noun => &NOUN_RULES,
        PartOfSpeech::Verb => &VERB_RULES,
        PartOfSpeech::Adjective => &ADJ_RULES,
        PartOfSpeech::Adverb => &[],
    }
}

pub(super) fn morphy(kb: &KnowledgeBase, surface: &str, pos: PartOfSpeech) -> Vec<String> {
    let surface = normalize_lemma(surface);
    if surface.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<String> = Vec::new();
    let mut push = |lemma: String, kb: &KnowledgeBase| {
        if kb.has_lemma_pos(&lemma, pos) && !out.contains(&lemma) {
            out.push(lemma);
        }
    };
    push(surface.clone(), kb);
    if let Some(bases) = kb.exceptions(pos).get(&surface) {
        for base in bases {
            push(base.clone(), kb);
        }
    }
    for (suffix, replacement) in rules(pos) {
        if let Some(stem) = surface.strip_suffix(suffix) {
            if stem.is_empty() {
                continue;
            }
            push(format!("{stem}{replacement}"), kb);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::mini_kb;

    #[test]
    fn detaches_regular_verb_suffixes() {
        let kb = mini_kb();
        assert_eq!(kb.morphy("played", PartOfSpeech::Verb), vec!["play"]);
        assert_eq!(kb.morphy("playing", PartOfSpeech::Verb), vec!["play"]);
        assert_eq!(kb.morphy("troubled", PartOfSpeech::Verb), vec!["trouble"]);
    }

    #[test]
    fn base_forms_map_to_themselves() {
        let kb = mini_kb();
        assert_eq!(kb.morphy("cricket", PartOfSpeech::Noun), vec!["cricket"]);
    }

    #[test]
    fn unknown_surface_yields_nothing() {
        let kb = mini_kb();
        assert!(kb.morphy("xyzzyq", PartOfSpeech::Noun).is_empty());
        assert!(kb.morphy("", PartOfSpeech::Noun).is_empty());
    }

    #[test]
    fn noun_plural_detachment() {
        let kb = mini_kb();
        assert_eq!(kb.morphy("insects", PartOfSpeech::Noun), vec!["insect"]);
        assert_eq!(kb.morphy("cells", PartOfSpeech::Noun), vec!["cell"]);
    }

    #[test]
    fn exception_list_wins_for_irregulars() {
        let kb = mini_kb();
        // verb.exc in the fixture maps `was` -> `be`.
        assert_eq!(kb.morphy("was", PartOfSpeech::Verb), vec!["be"]);
    }

    #[test]
    fn capitalization_is_normalized() {
        let kb = mini_kb();
        assert_eq!(kb.morphy("Cricket", PartOfSpeech::Noun), vec!["cricket"]);
    }
}
