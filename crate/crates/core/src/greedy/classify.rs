use std::collections::HashSet;

use serde::Serialize;

use super::rules::CategoryRuleSet;
use super::search::{CompiledKeyword, SearchOptions};
use super::word_profile::build_word_profile;
use crate::similarity::{check_threshold, SimilarityScore};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub category: String,
    pub keyword: String,
    pub score: SimilarityScore,
}

struct CompiledRule {
    keyword: CompiledKeyword,
    theta: SimilarityScore,
}

struct CompiledCategory {
    name: String,
    rules: Vec<CompiledRule>,
}

/// Keyword-rule classifier over the greedy search.
///
/// Every rule is searched for; the category owning the highest-scoring match
/// wins, ties going to the category declared first.
pub struct Classifier {
    categories: Vec<CompiledCategory>,
    n: usize,
}

impl Classifier {
    pub fn new(categories: &[CategoryRuleSet], options: SearchOptions) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut compiled = Vec::with_capacity(categories.len());
        for set in categories {
            if !seen.insert(set.category.as_str()) {
                return Err(Error::invalid(format!(
                    "duplicate category {:?}",
                    set.category
                )));
            }
            let rules = set
                .rules
                .iter()
                .map(|r| {
                    Ok(CompiledRule {
                        keyword: CompiledKeyword::new(&r.keyword, options)?,
                        theta: check_threshold(r.theta)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            compiled.push(CompiledCategory {
                name: set.category.clone(),
                rules,
            });
        }
        Ok(Classifier {
            categories: compiled,
            n: options.n,
        })
    }

    pub fn categories(&self) -> impl Iterator<Item = &str> {
        self.categories.iter().map(|c| c.name.as_str())
    }

    pub fn classify(&self, text: &str) -> Option<Classification> {
        // n was validated when the keywords compiled
        let profile = build_word_profile(text, self.n).ok()?;
        let mut best: Option<Classification> = None;
        for category in &self.categories {
            for rule in &category.rules {
                let Some(m) = rule.keyword.search(&profile, rule.theta) else {
                    continue;
                };
                if best.as_ref().is_none_or(|b| m.score > b.score) {
                    best = Some(Classification {
                        category: category.name.clone(),
                        keyword: rule.keyword.text().to_string(),
                        score: m.score,
                    });
                }
            }
        }
        best
    }
}

/// Classifies `text`, returning the winning category name.
pub fn classify(text: &str, categories: &[CategoryRuleSet], n: usize) -> Result<Option<String>> {
    let classifier = Classifier::new(categories, SearchOptions::with_n(n))?;
    Ok(classifier.classify(text).map(|c| c.category))
}

/// Precision and recall of one category.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryMetrics {
    pub category: String,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    /// `None` when nothing was predicted as this category.
    pub precision: Option<f64>,
    /// `None` when no record carries this label.
    pub recall: Option<f64>,
}

/// Accumulates (predicted, expected) pairs for labeled evaluation.
#[derive(Debug, Default, Clone)]
pub struct ConfusionTally {
    pairs: Vec<(Option<String>, Option<String>)>,
}

impl ConfusionTally {
    pub fn record(&mut self, predicted: Option<&str>, expected: Option<&str>) {
        self.pairs
            .push((predicted.map(str::to_string), expected.map(str::to_string)));
    }

    pub fn metrics(&self, category: &str) -> CategoryMetrics {
        let (mut tp, mut fp, mut fn_) = (0, 0, 0);
        for (pred, want) in &self.pairs {
            let p = pred.as_deref() == Some(category);
            let w = want.as_deref() == Some(category);
            match (p, w) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_ += 1,
                (false, false) => {}
            }
        }
        let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        CategoryMetrics {
            category: category.to_string(),
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
            precision: ratio(tp, tp + fp),
            recall: ratio(tp, tp + fn_),
        }
    }
}
