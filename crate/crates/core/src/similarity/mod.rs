//! Character n-gram profiles and the string metrics built on them.

mod metrics;
mod profile;
mod window;

use std::fmt;

use serde::Serialize;

pub(crate) use metrics::cosine_unchecked;
pub use metrics::{cosine, dice, edit_distance};
pub use profile::{build_profile, Gram, NGramProfile};
pub use window::{window_scan, WindowMatch};

use crate::{Error, Result};

/// Gram size used when a caller does not choose one.
pub const DEFAULT_GRAM_SIZE: usize = 2;

/// A similarity value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct SimilarityScore(f64);

impl SimilarityScore {
    pub const ZERO: SimilarityScore = SimilarityScore(0.0);
    pub const ONE: SimilarityScore = SimilarityScore(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(SimilarityScore(value))
        } else {
            Err(Error::invalid(format!(
                "similarity {value} is outside [0, 1]"
            )))
        }
    }

    /// Clamps into `[0, 1]`; used for values that can drift by an ulp.
    pub(crate) fn clamped(value: f64) -> Self {
        SimilarityScore(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for SimilarityScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.0)
    }
}

/// Checks a match threshold: it must lie in `(0, 1]`.
pub fn check_threshold(theta: f64) -> Result<SimilarityScore> {
    if theta > 0.0 && theta <= 1.0 {
        Ok(SimilarityScore(theta))
    } else {
        Err(Error::invalid(format!(
            "threshold {theta} is outside (0, 1]"
        )))
    }
}

pub(crate) fn check_gram_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::invalid("gram size must be at least 1"))
    } else {
        Ok(())
    }
}

/// Lowercases one character with a simple (one-to-one) mapping.
///
/// Characters whose lowercase form expands to several code points are kept
/// as they are, so normalization never changes the character count.
pub fn fold_char(c: char) -> char {
    let mut lower = c.to_lowercase();
    match (lower.next(), lower.next()) {
        (Some(l), None) => l,
        _ => c,
    }
}

/// Normalizes text for similarity comparison: simple lowercase, nothing else.
pub fn normalize(text: &str) -> String {
    text.chars().map(fold_char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_keeps_char_count() {
        for s in ["Name", "İstanbul", "ẞ", "ΣΊΣΥΦΟΣ", "tab\there"] {
            assert_eq!(normalize(s).chars().count(), s.chars().count(), "{s}");
        }
        assert_eq!(normalize("Name-Servers"), "name-servers");
    }

    #[test]
    fn thresholds() {
        assert!(check_threshold(1.0).is_ok());
        assert!(check_threshold(0.0001).is_ok());
        assert!(check_threshold(0.0).is_err());
        assert!(check_threshold(1.5).is_err());
        assert!(check_threshold(f64::NAN).is_err());
        assert!(SimilarityScore::new(-0.1).is_err());
    }
}
