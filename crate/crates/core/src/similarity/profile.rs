use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::{check_gram_size, fold_char};
use crate::Result;

/// One character n-gram. Ordered like the equivalent string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gram(SmallVec<[char; 5]>);

impl Gram {
    pub fn from_chars(chars: &[char]) -> Self {
        Gram(SmallVec::from_slice(chars))
    }

    pub fn chars(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Gram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0
            .iter()
            .try_for_each(|c| fmt::Write::write_char(f, *c))
    }
}

/// Multiset of the character n-grams of a string.
///
/// Grams are kept sorted, so two profiles can be compared with a linear merge.
/// `total` and the squared norm are exact integers; the norm itself is derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramProfile {
    n: usize,
    grams: Vec<(Gram, u32)>,
    total: u64,
    norm_sq: u64,
}

impl NGramProfile {
    pub fn empty(n: usize) -> Self {
        NGramProfile {
            n,
            grams: Vec::new(),
            total: 0,
            norm_sq: 0,
        }
    }

    /// Builds a profile from already-normalized characters, without padding.
    pub fn from_chars(chars: &[char], n: usize) -> Self {
        if n == 0 || chars.len() < n {
            return NGramProfile::empty(n);
        }
        let mut all: Vec<Gram> = chars.windows(n).map(Gram::from_chars).collect();
        all.sort_unstable();
        let mut grams: Vec<(Gram, u32)> = Vec::with_capacity(all.len());
        for gram in all {
            match grams.last_mut() {
                Some((last, count)) if *last == gram => *count += 1,
                _ => grams.push((gram, 1)),
            }
        }
        Self::from_sorted(n, grams)
    }

    fn from_sorted(n: usize, grams: Vec<(Gram, u32)>) -> Self {
        let total = grams.iter().map(|(_, c)| u64::from(*c)).sum();
        let norm_sq = grams.iter().map(|(_, c)| u64::from(*c).pow(2)).sum();
        NGramProfile {
            n,
            grams,
            total,
            norm_sq,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of grams counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct grams.
    pub fn distinct(&self) -> usize {
        self.grams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grams.is_empty()
    }

    pub fn norm_squared(&self) -> u64 {
        self.norm_sq
    }

    /// Euclidean norm of the count vector.
    pub fn norm(&self) -> f64 {
        (self.norm_sq as f64).sqrt()
    }

    /// Count of `gram`; zero when absent.
    pub fn get(&self, gram: &str) -> u32 {
        let key: SmallVec<[char; 5]> = gram.chars().collect();
        self.grams
            .binary_search_by(|(g, _)| g.0.as_slice().cmp(key.as_slice()))
            .map(|i| self.grams[i].1)
            .unwrap_or(0)
    }

    /// Grams in ascending order with their counts.
    pub fn iter(&self) -> impl Iterator<Item = (&Gram, u32)> + '_ {
        self.grams.iter().map(|(g, c)| (g, *c))
    }

    /// Multiset sum of two profiles of the same gram size.
    pub fn sum(&self, other: &NGramProfile) -> NGramProfile {
        debug_assert_eq!(self.n, other.n);
        let mut merged = Vec::with_capacity(self.grams.len() + other.grams.len());
        let (mut a, mut b) = (self.grams.iter().peekable(), other.grams.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ga, ca)), Some((gb, cb))) => match ga.cmp(gb) {
                    Ordering::Less => {
                        merged.push((ga.clone(), *ca));
                        a.next();
                    }
                    Ordering::Greater => {
                        merged.push((gb.clone(), *cb));
                        b.next();
                    }
                    Ordering::Equal => {
                        merged.push((ga.clone(), ca + cb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    merged.extend(a.cloned());
                    break;
                }
                (None, Some(_)) => {
                    merged.extend(b.cloned());
                    break;
                }
                (None, None) => break,
            }
        }
        NGramProfile::from_sorted(self.n, merged)
    }

    /// Walks the grams present in both profiles, yielding both counts.
    pub(crate) fn for_each_shared(&self, other: &NGramProfile, mut f: impl FnMut(u32, u32)) {
        let (mut i, mut j) = (0, 0);
        while i < self.grams.len() && j < other.grams.len() {
            match self.grams[i].0.cmp(&other.grams[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    f(self.grams[i].1, other.grams[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

/// Profile of every contiguous length-`n` substring of the lowercased text.
pub fn build_profile(text: &str, n: usize) -> Result<NGramProfile> {
    check_gram_size(n)?;
    let chars: Vec<char> = text.chars().map(fold_char).collect();
    Ok(NGramProfile::from_chars(&chars, n))
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use proptest::prelude::*;

    use super::*;

    fn brute_force(text: &str, n: usize) -> HashMap<String, u32> {
        let chars: Vec<char> = text.to_lowercase().chars().collect();
        let mut counts = HashMap::new();
        for start in 0..chars.len() {
            if start + n > chars.len() {
                break;
            }
            let gram: String = chars[start..start + n].iter().collect();
            *counts.entry(gram).or_insert(0) += 1;
        }
        counts
    }

    fn as_map(p: &NGramProfile) -> HashMap<String, u32> {
        p.iter().map(|(g, c)| (g.to_string(), c)).collect()
    }

    #[test]
    fn abab_bigrams() {
        let p = build_profile("abab", 2).unwrap();
        assert_eq!(p.get("ab"), 2);
        assert_eq!(p.get("ba"), 1);
        assert_eq!(p.distinct(), 2);
        assert_eq!(p.total(), 3);
    }

    #[test]
    fn shorter_than_n_is_empty() {
        let p = build_profile("a", 2).unwrap();
        assert!(p.is_empty());
        assert_eq!(p.total(), 0);
        assert_eq!(p.norm(), 0.0);
    }

    #[test]
    fn lowercases_before_counting() {
        let p = build_profile("Name", 2).unwrap();
        assert_eq!(as_map(&p), brute_force("Name", 2));
        assert_eq!(
            as_map(&p),
            HashMap::from([("na".into(), 1), ("am".into(), 1), ("me".into(), 1)])
        );
    }

    #[test]
    fn zero_gram_size_is_rejected() {
        assert!(build_profile("abc", 0).is_err());
    }

    #[test]
    fn sum_adds_counts() {
        let a = build_profile("name", 2).unwrap();
        let b = build_profile("servers", 2).unwrap();
        let s = a.sum(&b);
        assert_eq!(s.total(), 3 + 6);
        assert_eq!(s.get("er"), 2);
        assert_eq!(s.get("es"), 0);
        assert_eq!(s.norm_squared(), 11);
    }

    proptest! {
        #[test]
        fn matches_substring_enumeration(text in "[a-dA-D ]{0,40}", n in 1usize..5) {
            let p = build_profile(&text, n).unwrap();
            prop_assert_eq!(as_map(&p), brute_force(&text, n));
            let len = text.chars().count();
            prop_assert_eq!(p.total() as usize, (len + 1).saturating_sub(n));
            let sq: u64 = p.iter().map(|(_, c)| u64::from(c) * u64::from(c)).sum();
            prop_assert_eq!(p.norm_squared(), sq);
            prop_assert!((p.norm() * p.norm() - sq as f64).abs() <= 1e-9 * (sq as f64).max(1.0));
            for (g, _) in p.iter() {
                prop_assert_eq!(g.len(), n);
            }
        }
    }
}
