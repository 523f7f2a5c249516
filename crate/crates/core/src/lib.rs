//! Fuzzy keyword search over character n-gram profiles.
//!
//! The crate bundles four pieces that share the same n-gram machinery:
//!
//! - [`similarity`]: character n-gram profiles, cosine / Dice / edit distance
//!   and the character-window baseline scanner.
//! - [`greedy`]: the word-tokenised greedy search, which compares a keyword
//!   against runs of one word fewer, equal and one word more than the keyword,
//!   stopping at the first run that reaches the threshold. Also a small
//!   keyword-rule classifier built on top of it.
//! - [`langid`]: a rank-order n-gram language identifier (grams of sizes 1 to 5,
//!   out-of-place distance).
//! - [`metadata`]: `Accept-Language` parsing, country to language lookup and the
//!   agreement report comparing both signals with the identified language.
//!
//! [`bench`] holds the synthetic corpus generator and timing harness comparing
//! the greedy search against the window baseline.

pub mod bench;
mod error;
pub mod greedy;
pub mod langid;
pub mod metadata;
pub mod similarity;

pub use error::{Error, Result};
pub use greedy::{greedy_search, Classifier, MatchResult, WordProfile};
pub use langid::{identify, train_model, LanguageModel, LanguagePrediction};
pub use similarity::{
    build_profile, cosine, dice, edit_distance, window_scan, NGramProfile, SimilarityScore,
    WindowMatch,
};
