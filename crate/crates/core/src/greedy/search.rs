use serde::Serialize;

use super::word_profile::{build_word_profile, SpanRef, WordProfile};
use crate::similarity::{
    check_threshold, cosine_unchecked, NGramProfile, SimilarityScore, DEFAULT_GRAM_SIZE,
};
use crate::{Error, Result};

/// Which of the three candidate widths produced a match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WidthClass {
    /// One word fewer than the keyword.
    Shorter,
    /// Same word count as the keyword.
    Same,
    /// One word more than the keyword.
    Longer,
}

impl WidthClass {
    /// Evaluation order; on equal scores the earlier class wins.
    const PREFERENCE: [WidthClass; 3] = [WidthClass::Same, WidthClass::Shorter, WidthClass::Longer];

    pub fn offset(self) -> i8 {
        match self {
            WidthClass::Shorter => -1,
            WidthClass::Same => 0,
            WidthClass::Longer => 1,
        }
    }

    fn width(self, keyword_words: usize) -> usize {
        match self {
            WidthClass::Shorter => keyword_words.saturating_sub(1),
            WidthClass::Same => keyword_words,
            WidthClass::Longer => keyword_words + 1,
        }
    }
}

/// Character-length filter applied before a span is scored.
///
/// `l` is the keyword's character count and `c` the span's, separators
/// excluded on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LengthBounds {
    /// `theta * l <= c <= (2 - theta) * l`: the tolerance shrinks as the
    /// threshold rises.
    #[default]
    Tolerance,
    /// `(1 - theta) * l <= c <= (1 + theta) * l`.
    Symmetric,
    /// Every span is scored.
    Unbounded,
}

impl LengthBounds {
    pub fn admits(self, theta: f64, keyword_chars: usize, span_chars: usize) -> bool {
        let (l, c) = (keyword_chars as f64, span_chars as f64);
        match self {
            LengthBounds::Tolerance => theta * l <= c && c <= (2.0 - theta) * l,
            LengthBounds::Symmetric => (1.0 - theta) * l <= c && c <= (1.0 + theta) * l,
            LengthBounds::Unbounded => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub n: usize,
    pub bounds: LengthBounds,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            n: DEFAULT_GRAM_SIZE,
            bounds: LengthBounds::default(),
        }
    }
}

impl SearchOptions {
    pub fn with_n(n: usize) -> Self {
        SearchOptions {
            n,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchResult {
    pub score: SimilarityScore,
    pub span: SpanRef,
    pub width_class: WidthClass,
}

/// A keyword with its word profile and summed gram profile computed once.
#[derive(Debug, Clone)]
pub struct CompiledKeyword {
    text: String,
    words: WordProfile,
    grams: NGramProfile,
    bounds: LengthBounds,
}

impl CompiledKeyword {
    pub fn new(keyword: &str, options: SearchOptions) -> Result<Self> {
        let words = build_word_profile(keyword, options.n)?;
        if words.word_count() == 0 {
            return Err(Error::invalid("keyword is blank"));
        }
        let grams = words
            .grams()
            .iter()
            .skip(1)
            .fold(words.grams()[0].clone(), |acc, p| acc.sum(p));
        Ok(CompiledKeyword {
            text: keyword.to_string(),
            words,
            grams,
            bounds: options.bounds,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn n(&self) -> usize {
        self.words.n()
    }

    pub fn word_profile(&self) -> &WordProfile {
        &self.words
    }

    /// Sum of the keyword's per-word gram profiles.
    pub fn profile(&self) -> &NGramProfile {
        &self.grams
    }

    pub fn bounds(&self) -> LengthBounds {
        self.bounds
    }

    /// Scores one span of `text` against the keyword, ignoring length bounds.
    pub fn score_span(&self, text: &WordProfile, span: SpanRef) -> SimilarityScore {
        cosine_unchecked(&self.grams, &text.span_profile_unchecked(span))
    }

    /// Runs the greedy scan over an already profiled text.
    ///
    /// `text` must have been built with the same gram size as the keyword.
    pub fn search(&self, text: &WordProfile, theta: SimilarityScore) -> Option<MatchResult> {
        debug_assert_eq!(text.n(), self.n());
        let theta_v = theta.value();
        let keyword_words = self.words.word_count();
        let keyword_chars = self.words.char_length();
        for start in 0..text.word_count() {
            let mut best: Option<MatchResult> = None;
            for class in WidthClass::PREFERENCE {
                let width = class.width(keyword_words);
                if width == 0 {
                    continue;
                }
                let Some(span) = text.span(start, width) else {
                    continue;
                };
                if !self.bounds.admits(theta_v, keyword_chars, span.char_length) {
                    continue;
                }
                let score = self.score_span(text, span);
                if best.is_none_or(|b| score > b.score) {
                    best = Some(MatchResult {
                        score,
                        span,
                        width_class: class,
                    });
                }
            }
            if let Some(found) = best.filter(|b| b.score >= theta) {
                return Some(found);
            }
        }
        None
    }
}

/// Greedy word-tokenised search with the default length bounds.
///
/// Returns the first position (in word order) whose best candidate span
/// reaches `theta`, together with that span.
pub fn greedy_search(
    keyword: &str,
    text: &str,
    theta: f64,
    n: usize,
) -> Result<Option<MatchResult>> {
    greedy_search_with(keyword, text, theta, SearchOptions::with_n(n))
}

pub fn greedy_search_with(
    keyword: &str,
    text: &str,
    theta: f64,
    options: SearchOptions,
) -> Result<Option<MatchResult>> {
    let theta = check_threshold(theta)?;
    let keyword = CompiledKeyword::new(keyword, options)?;
    let text = build_word_profile(text, options.n)?;
    Ok(keyword.search(&text, theta))
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use proptest::prelude::*;

    use super::*;

    type Grams = HashMap<String, usize>;

    fn word_grams(words: &[&str], n: usize) -> Grams {
        let mut m = Grams::new();
        for w in words {
            let chars: Vec<char> = w.to_lowercase().chars().collect();
            for g in chars.windows(n) {
                *m.entry(g.iter().collect()).or_insert(0) += 1;
            }
        }
        m
    }

    fn cos(a: &Grams, b: &Grams) -> f64 {
        let dot: usize = a.iter().map(|(g, c)| c * b.get(g).unwrap_or(&0)).sum();
        let na: usize = a.values().map(|c| c * c).sum();
        let nb: usize = b.values().map(|c| c * c).sum();
        if na == 0 || nb == 0 {
            0.0
        } else {
            dot as f64 / ((na * nb) as f64).sqrt()
        }
    }

    /// Scores every span of the three widths, then applies the first-match rule.
    fn brute_force(
        keyword: &str,
        text: &str,
        theta: f64,
        n: usize,
        bounds: LengthBounds,
    ) -> Option<(usize, usize, f64)> {
        let kw: Vec<&str> = keyword.split_whitespace().collect();
        let tw: Vec<&str> = text.split_whitespace().collect();
        let kg = word_grams(&kw, n);
        let klen: usize = kw.iter().map(|w| w.chars().count()).sum();
        let c = kw.len();
        let mut scored = Vec::new();
        for start in 0..tw.len() {
            for width in [c, c - 1, c + 1] {
                if width == 0 || start + width > tw.len() {
                    continue;
                }
                let words = &tw[start..start + width];
                let slen: usize = words.iter().map(|w| w.chars().count()).sum();
                if !bounds.admits(theta, klen, slen) {
                    continue;
                }
                scored.push((start, width, cos(&kg, &word_grams(words, n))));
            }
        }
        // stable max per start keeps the [c, c-1, c+1] preference on ties
        let first_start = scored.iter().find(|s| s.2 >= theta)?.0;
        scored.into_iter().filter(|s| s.0 == first_start).fold(
            None,
            |best: Option<(usize, usize, f64)>, s| match best {
                Some(b) if b.2 >= s.2 => Some(b),
                _ => Some(s),
            },
        )
    }

    #[test]
    fn merged_text_matches_split_keyword() {
        let m = greedy_search("name servers", "my nameservers are broken", 0.9, 2)
            .unwrap()
            .unwrap();
        assert_eq!(m.span.start, 1);
        assert_eq!(m.span.width, 1);
        assert_eq!(m.width_class, WidthClass::Shorter);
        assert_eq!(m.width_class.offset(), -1);
        assert!((m.score.value() - 11.0 / 132f64.sqrt()).abs() < 1e-12);
        assert!((m.score.value() - 0.9574).abs() < 1e-4);
        let oracle = brute_force(
            "name servers",
            "my nameservers are broken",
            0.9,
            2,
            LengthBounds::Tolerance,
        );
        assert_eq!(oracle.map(|o| (o.0, o.1)), Some((1, 1)));
    }

    #[test]
    fn symmetric_bounds_stop_on_the_leading_word() {
        // "my nameservers" is 13 chars, inside (1 +/- 0.9) * 11, and scores 11/sqrt(143)
        let m = greedy_search_with(
            "name servers",
            "my nameservers are broken",
            0.9,
            SearchOptions {
                n: 2,
                bounds: LengthBounds::Symmetric,
            },
        )
        .unwrap()
        .unwrap();
        assert_eq!((m.span.start, m.span.width), (0, 2));
        assert!((m.score.value() - 11.0 / 143f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn split_text_matches_merged_keyword() {
        let m = greedy_search("nameservers", "my name servers are broken", 0.9, 2)
            .unwrap()
            .unwrap();
        assert_eq!((m.span.start, m.span.width), (1, 2));
        assert_eq!(m.width_class, WidthClass::Longer);
        assert!((m.score.value() - 11.0 / 132f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_word_exact() {
        let m = greedy_search("dns", "dns is down", 0.99, 2)
            .unwrap()
            .unwrap();
        assert_eq!((m.span.start, m.span.width), (0, 1));
        assert_eq!(m.width_class, WidthClass::Same);
        assert_eq!(m.score.value(), 1.0);
    }

    #[test]
    fn unrelated_text() {
        assert!(
            greedy_search("name servers", "totally unrelated text", 0.9, 2)
                .unwrap()
                .is_none()
        );
        assert!(greedy_search("name servers", "", 0.9, 2).unwrap().is_none());
    }

    #[test]
    fn invalid_arguments() {
        assert!(greedy_search("  ", "text", 0.9, 2).is_err());
        assert!(greedy_search("dns", "text", 0.0, 2).is_err());
        assert!(greedy_search("dns", "text", 1.2, 2).is_err());
        assert!(greedy_search("dns", "text", 0.5, 0).is_err());
    }

    #[test]
    fn prefix_lowers_the_score() {
        let plain = greedy_search("name servers", "nameservers are broken", 0.5, 2)
            .unwrap()
            .unwrap();
        let prefixed = greedy_search("name servers", "Xnameservers are broken", 0.5, 2)
            .unwrap()
            .unwrap();
        assert!(prefixed.score < plain.score);
        assert_eq!(prefixed.span.start, 0);
    }

    #[test]
    fn ties_prefer_same_width() {
        // "ab ab" keyword; span "ab ab" (same) and "ab ab ab" (longer) both
        // score 1, and the equal-width one is reported
        let m = greedy_search("ab ab", "ab ab ab", 1.0, 2).unwrap().unwrap();
        assert_eq!(m.width_class, WidthClass::Same);
        // single-word keyword: "ab" vs "ab" and "ab ab" both score 1
        let m = greedy_search_with(
            "ab",
            "ab ab",
            1.0,
            SearchOptions {
                n: 2,
                bounds: LengthBounds::Unbounded,
            },
        )
        .unwrap()
        .unwrap();
        assert_eq!((m.span.width, m.width_class), (1, WidthClass::Same));
    }

    #[test]
    fn bounds_predicates() {
        assert!(LengthBounds::Tolerance.admits(0.9, 11, 11));
        assert!(LengthBounds::Tolerance.admits(0.9, 11, 12));
        assert!(!LengthBounds::Tolerance.admits(0.9, 11, 13));
        assert!(!LengthBounds::Tolerance.admits(0.9, 11, 9));
        assert!(LengthBounds::Symmetric.admits(0.9, 11, 13));
        assert!(!LengthBounds::Symmetric.admits(0.9, 11, 21));
        assert!(LengthBounds::Tolerance.admits(1.0, 5, 5));
        assert!(!LengthBounds::Tolerance.admits(1.0, 5, 6));
    }

    fn text_strategy() -> impl Strategy<Value = (String, String)> {
        let word = "[abc]{1,5}";
        (
            prop::collection::vec(word, 1..4),
            prop::collection::vec(word, 0..21),
        )
            .prop_map(|(k, t)| (k.join(" "), t.join(" ")))
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force((kw, text) in text_strategy(), theta in 0.3f64..=1.0, bounds_ix in 0usize..3) {
            let bounds = [LengthBounds::Tolerance, LengthBounds::Symmetric, LengthBounds::Unbounded][bounds_ix];
            let got = greedy_search_with(&kw, &text, theta, SearchOptions { n: 2, bounds }).unwrap();
            let want = brute_force(&kw, &text, theta, 2, bounds);
            match (got, want) {
                (None, None) => {}
                (Some(m), Some((start, width, score))) => {
                    prop_assert_eq!((m.span.start, m.span.width), (start, width));
                    prop_assert!((m.score.value() - score).abs() <= 1e-9);
                }
                other => prop_assert!(false, "mismatch {:?}", other),
            }
        }

        #[test]
        fn exact_containment_scores_one(
            kw in prop::collection::vec("[a-d]{2,6}", 1..4),
            before in prop::collection::vec("[a-z]{1,8}", 0..6),
            after in prop::collection::vec("[a-z]{1,8}", 0..6),
            theta in 0.05f64..=1.0,
        ) {
            let keyword = kw.join(" ");
            let position = before.len();
            let text = [before, kw, after].concat().join(" ");
            let m = greedy_search(&keyword, &text, theta, 2).unwrap().unwrap();
            prop_assert!(m.span.start <= position);
            if m.span.start == position {
                prop_assert_eq!(m.score.value(), 1.0);
            }
        }

        #[test]
        fn merged_word_beats_disjoint_spans(
            a in "[a-m]{2,6}",
            b in "[a-m]{2,6}",
            filler in prop::collection::vec("[n-z]{1,6}", 0..8),
            at in 0usize..8,
        ) {
            let keyword = format!("{a} {b}");
            let mut words = filler.clone();
            let at = at.min(words.len());
            words.insert(at, format!("{a}{b}"));
            let text = build_word_profile(&words.join(" "), 2).unwrap();
            let kw = CompiledKeyword::new(&keyword, SearchOptions::default()).unwrap();
            let merged = text.span(at, 1).unwrap();
            prop_assert_eq!(merged.char_length, kw.word_profile().char_length());
            prop_assert!(LengthBounds::Tolerance.admits(0.99, kw.word_profile().char_length(), merged.char_length));
            let merged_score = kw.score_span(&text, merged);
            for start in 0..text.word_count() {
                for width in 1..=3 {
                    let Some(span) = text.span(start, width) else { continue };
                    if start + width <= at || start > at {
                        prop_assert!(kw.score_span(&text, span) < merged_score);
                    }
                }
            }
        }
    }
}
