use serde::Serialize;

use crate::similarity::{check_gram_size, fold_char, NGramProfile};
use crate::{Error, Result};

/// Ordered words of a text with their lengths and per-word gram profiles.
#[derive(Debug, Clone)]
pub struct WordProfile {
    n: usize,
    words: Vec<String>,
    lengths: Vec<usize>,
    grams: Vec<NGramProfile>,
    // prefix[i] = characters in words[..i]
    prefix: Vec<usize>,
}

/// A run of `width` consecutive words starting at word `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpanRef {
    pub start: usize,
    pub width: usize,
    /// Characters in the run's words, separators excluded.
    pub char_length: usize,
}

impl WordProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn grams(&self) -> &[NGramProfile] {
        &self.grams
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Total characters over all words.
    pub fn char_length(&self) -> usize {
        *self.prefix.last().unwrap_or(&0)
    }

    /// The span `[start, start + width)`, or `None` if it runs past the end.
    pub fn span(&self, start: usize, width: usize) -> Option<SpanRef> {
        let end = start.checked_add(width)?;
        if end > self.words.len() {
            return None;
        }
        Some(SpanRef {
            start,
            width,
            char_length: self.prefix[end] - self.prefix[start],
        })
    }

    /// The span's words joined by single spaces.
    pub fn span_text(&self, span: SpanRef) -> String {
        self.words[span.start..span.start + span.width].join(" ")
    }

    pub(crate) fn span_profile_unchecked(&self, span: SpanRef) -> NGramProfile {
        let words = &self.grams[span.start..span.start + span.width];
        match words {
            [] => NGramProfile::empty(self.n),
            [only] => only.clone(),
            [first, rest @ ..] => rest.iter().fold(first.clone(), |acc, p| acc.sum(p)),
        }
    }
}

/// Splits lowercased text into whitespace-separated words and profiles each.
pub fn build_word_profile(text: &str, n: usize) -> Result<WordProfile> {
    check_gram_size(n)?;
    let mut words = Vec::new();
    let mut lengths = Vec::new();
    let mut grams = Vec::new();
    let mut prefix = vec![0];
    for word in text.split_whitespace() {
        let chars: Vec<char> = word.chars().map(fold_char).collect();
        lengths.push(chars.len());
        prefix.push(prefix.last().unwrap() + chars.len());
        grams.push(NGramProfile::from_chars(&chars, n));
        words.push(chars.into_iter().collect());
    }
    Ok(WordProfile {
        n,
        words,
        lengths,
        grams,
        prefix,
    })
}

/// Multiset sum of the gram profiles of the span's words.
pub fn span_profile(profile: &WordProfile, span: SpanRef) -> Result<NGramProfile> {
    match profile.span(span.start, span.width) {
        Some(checked) if checked.char_length == span.char_length => {
            Ok(profile.span_profile_unchecked(checked))
        }
        Some(_) => Err(Error::invalid(
            "span character length does not match its words",
        )),
        None => Err(Error::invalid(format!(
            "span {}+{} exceeds {} words",
            span.start,
            span.width,
            profile.word_count()
        ))),
    }
}
