//! Word-tokenised greedy keyword search.
//!
//! Both keyword and text are split into words on whitespace and each word gets
//! its own character n-gram profile. For every word of the text, in order, the
//! runs of `c - 1`, `c` and `c + 1` consecutive words (where `c` is the
//! keyword's word count) are compared with the keyword; the first position
//! whose best run reaches the threshold ends the scan. Grams never cross word
//! boundaries, so `name servers` and `nameservers` differ by a single gram.

mod classify;
mod rules;
mod search;
mod word_profile;

pub use classify::{classify, CategoryMetrics, Classification, Classifier, ConfusionTally};
pub use rules::{parse_rules, CategoryRuleSet, KeywordRule, DEFAULT_THETA};
pub use search::{
    greedy_search, greedy_search_with, CompiledKeyword, LengthBounds, MatchResult, SearchOptions,
    WidthClass,
};
pub use word_profile::{build_word_profile, span_profile, SpanRef, WordProfile};
