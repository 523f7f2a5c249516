//! Rank-order n-gram language identification.
//!
//! Each language is described by its most frequent character grams of sizes
//! one to five, ranked by count. A message gets the same kind of profile and
//! is assigned to the language whose ranking it is closest to, measured by
//! the out-of-place distance (sum of rank displacements, with a fixed penalty
//! for grams the language never ranked).

mod fixtures;
mod persist;

use std::collections::HashMap;

use serde::Serialize;

pub use fixtures::{fixture_corpus, fixture_models, heldout_sentences, FIXTURE_LANGUAGES};
pub use persist::{load_model, load_models_dir, parse_model, write_model, MODEL_EXTENSION};

use crate::similarity::fold_char;
use crate::{Error, Result};

/// Default number of ranked grams kept per model.
pub const DEFAULT_TOP_K: usize = 300;
/// Messages with fewer normalized characters than this are flagged unconfident.
pub const CONFIDENCE_FLOOR: usize = 10;
/// Boundary marker placed around every word before gram extraction.
pub const WORD_BOUNDARY: char = '_';
const MAX_GRAM: usize = 5;

/// Lowercases and keeps only alphabetic runs, separated by single spaces.
pub fn normalize(text: &str) -> String {
    let folded: String = text
        .chars()
        .map(|c| if c.is_alphabetic() { fold_char(c) } else { ' ' })
        .collect();
    folded.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Character count of [`normalize`]d text.
pub fn normalized_length(text: &str) -> usize {
    normalize(text).chars().count()
}

fn count_grams(normalized: &str) -> HashMap<String, u32> {
    let mut counts: HashMap<String, u32> = HashMap::new();
    let mut padded = Vec::new();
    for word in normalized.split(' ').filter(|w| !w.is_empty()) {
        padded.clear();
        padded.push(WORD_BOUNDARY);
        padded.extend(word.chars());
        padded.push(WORD_BOUNDARY);
        for size in 1..=MAX_GRAM.min(padded.len()) {
            for gram in padded.windows(size) {
                if gram.iter().all(|&c| c == WORD_BOUNDARY) {
                    continue;
                }
                *counts.entry(gram.iter().collect()).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// The top-`k` grams of one language, most frequent first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageModel {
    language: String,
    k: usize,
    ranked: Vec<String>,
    #[serde(skip)]
    ranks: HashMap<String, usize>,
}

impl LanguageModel {
    /// Builds a model from an explicit ranking.
    pub fn from_ranked(language: impl Into<String>, k: usize, ranked: Vec<String>) -> Result<Self> {
        let language = language.into();
        if k == 0 {
            return Err(Error::invalid("model size K must be positive"));
        }
        if ranked.len() > k {
            return Err(Error::invalid(format!(
                "{} ranked grams exceed K = {k}",
                ranked.len()
            )));
        }
        let mut ranks = HashMap::with_capacity(ranked.len());
        for (rank, gram) in ranked.iter().enumerate() {
            if ranks.insert(gram.clone(), rank).is_some() {
                return Err(Error::invalid(format!("duplicate gram {gram:?}")));
            }
        }
        Ok(LanguageModel {
            language,
            k,
            ranked,
            ranks,
        })
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ranked(&self) -> &[String] {
        &self.ranked
    }

    pub fn rank(&self, gram: &str) -> Option<usize> {
        self.ranks.get(gram).copied()
    }

    pub fn len(&self) -> usize {
        self.ranked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranked.is_empty()
    }
}

fn rank_grams(normalized: &str, k: usize) -> Vec<String> {
    let mut counted: Vec<(String, u32)> = count_grams(normalized).into_iter().collect();
    counted.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    counted.truncate(k);
    counted.into_iter().map(|(g, _)| g).collect()
}

/// Trains a model from a corpus: counts grams of sizes 1 to 5 over
/// boundary-padded words, ranks them by count (ties in gram order) and keeps
/// the top `k`.
pub fn train_model(corpus: &str, language: &str, k: usize) -> Result<LanguageModel> {
    if corpus.trim().is_empty() {
        return Err(Error::invalid("training corpus is blank"));
    }
    if k == 0 {
        return Err(Error::invalid("model size K must be positive"));
    }
    LanguageModel::from_ranked(language, k, rank_grams(&normalize(corpus), k))
}

fn distance(doc: &LanguageModel, lang: &LanguageModel) -> u64 {
    doc.ranked
        .iter()
        .enumerate()
        .map(|(i, gram)| match lang.rank(gram) {
            Some(r) => i.abs_diff(r) as u64,
            None => lang.k as u64,
        })
        .sum()
}

/// Out-of-place distance of a document profile from a language profile.
///
/// Grams missing from `lang_model` cost `lang_model.k()`.
pub fn out_of_place(doc_model: &LanguageModel, lang_model: &LanguageModel) -> Result<u64> {
    if doc_model.is_empty() || lang_model.is_empty() {
        return Err(Error::invalid(
            "out-of-place distance needs non-empty models",
        ));
    }
    Ok(distance(doc_model, lang_model))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguagePrediction {
    pub language: String,
    pub distance: u64,
    pub confident: bool,
}

/// Picks the language whose model is nearest to the message.
///
/// The message profile uses the largest K among `models`. Ties go to the model
/// listed first. A message with no letters has distance 0 to every model and
/// resolves to the first one, unconfidently.
pub fn identify(message: &str, models: &[LanguageModel]) -> Result<LanguagePrediction> {
    let k = models
        .iter()
        .map(LanguageModel::k)
        .max()
        .ok_or_else(|| Error::invalid("no language models"))?;
    let normalized = normalize(message);
    let doc = LanguageModel::from_ranked("", k, rank_grams(&normalized, k))?;
    let (best, dist) = models
        .iter()
        .map(|m| (m, distance(&doc, m)))
        .fold(
            None,
            |best: Option<(&LanguageModel, u64)>, cur| match best {
                Some(b) if b.1 <= cur.1 => Some(b),
                _ => Some(cur),
            },
        )
        .expect("models is non-empty");
    Ok(LanguagePrediction {
        language: best.language.clone(),
        distance: dist,
        confident: normalized.chars().count() >= CONFIDENCE_FLOOR,
    })
}
