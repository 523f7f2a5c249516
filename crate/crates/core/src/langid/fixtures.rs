use super::{train_model, LanguageModel};

/// Languages with a bundled training corpus, in declaration order.
pub const FIXTURE_LANGUAGES: [&str; 5] = ["en", "de", "fr", "es", "it"];

const CORPORA: [(&str, &str); 5] = [
    ("en", include_str!("../../data/langid/en.txt")),
    ("de", include_str!("../../data/langid/de.txt")),
    ("fr", include_str!("../../data/langid/fr.txt")),
    ("es", include_str!("../../data/langid/es.txt")),
    ("it", include_str!("../../data/langid/it.txt")),
];

const HELDOUT: [(&str, &str); 5] = [
    ("en", include_str!("../../data/langid/heldout/en.txt")),
    ("de", include_str!("../../data/langid/heldout/de.txt")),
    ("fr", include_str!("../../data/langid/heldout/fr.txt")),
    ("es", include_str!("../../data/langid/heldout/es.txt")),
    ("it", include_str!("../../data/langid/heldout/it.txt")),
];

pub fn fixture_corpus(language: &str) -> Option<&'static str> {
    CORPORA
        .iter()
        .find(|(l, _)| *l == language)
        .map(|(_, c)| *c)
}

/// Models trained on the bundled corpora.
pub fn fixture_models(k: usize) -> Vec<LanguageModel> {
    CORPORA
        .iter()
        .map(|(lang, corpus)| train_model(corpus, lang, k).expect("bundled corpus is non-blank"))
        .collect()
}

/// Held-out `(language, sentence)` pairs, disjoint from the training corpora.
pub fn heldout_sentences() -> Vec<(&'static str, &'static str)> {
    HELDOUT
        .iter()
        .flat_map(|(lang, text)| {
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(move |l| (*lang, l.trim()))
        })
        .collect()
}
