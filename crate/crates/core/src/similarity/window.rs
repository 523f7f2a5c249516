use serde::Serialize;

use super::metrics::cosine_unchecked;
use super::{check_gram_size, check_threshold, fold_char, NGramProfile, SimilarityScore};
use crate::{Error, Result};

/// A window of the scanned text whose profile reached the threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowMatch {
    /// Character offset into the normalized text.
    pub offset: usize,
    pub window: String,
    pub score: SimilarityScore,
}

/// Character-window baseline scanner.
///
/// Slides a window exactly as long as the keyword over the lowercased text,
/// one character at a time, and returns the first window whose cosine
/// similarity with the keyword reaches `theta`. Whitespace inside the window
/// takes part in the grams.
pub fn window_scan(keyword: &str, text: &str, theta: f64, n: usize) -> Result<Option<WindowMatch>> {
    check_gram_size(n)?;
    let theta = check_threshold(theta)?;
    let key: Vec<char> = keyword.chars().map(fold_char).collect();
    if key.is_empty() {
        return Err(Error::invalid("keyword is empty"));
    }
    let key_profile = NGramProfile::from_chars(&key, n);
    let text: Vec<char> = text.chars().map(fold_char).collect();
    if text.len() < key.len() {
        return Ok(None);
    }
    for offset in 0..=text.len() - key.len() {
        let window = &text[offset..offset + key.len()];
        let score = cosine_unchecked(&key_profile, &NGramProfile::from_chars(window, n));
        if score >= theta {
            return Ok(Some(WindowMatch {
                offset,
                window: window.iter().collect(),
                score,
            }));
        }
    }
    Ok(None)
}
