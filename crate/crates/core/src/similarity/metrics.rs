use super::{NGramProfile, SimilarityScore};
use crate::{Error, Result};

fn check_same_n(p: &NGramProfile, q: &NGramProfile) -> Result<()> {
    if p.n() == q.n() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "gram sizes differ: {} vs {}",
            p.n(),
            q.n()
        )))
    }
}

/// Cosine of the angle between two gram count vectors.
///
/// Zero when either profile is empty. The denominator is taken as the root of
/// the product of squared norms, so proportional profiles score exactly 1.
pub fn cosine(p: &NGramProfile, q: &NGramProfile) -> Result<SimilarityScore> {
    check_same_n(p, q)?;
    Ok(cosine_unchecked(p, q))
}

pub(crate) fn cosine_unchecked(p: &NGramProfile, q: &NGramProfile) -> SimilarityScore {
    if p.norm_squared() == 0 || q.norm_squared() == 0 {
        return SimilarityScore::ZERO;
    }
    let mut dot = 0u64;
    p.for_each_shared(q, |a, b| dot += u64::from(a) * u64::from(b));
    let denom = (p.norm_squared() as f64 * q.norm_squared() as f64).sqrt();
    SimilarityScore::clamped(dot as f64 / denom)
}

/// Dice coefficient over gram multisets: `2 |p ∩ q| / (|p| + |q|)`.
pub fn dice(p: &NGramProfile, q: &NGramProfile) -> Result<SimilarityScore> {
    check_same_n(p, q)?;
    let totals = p.total() + q.total();
    if totals == 0 {
        return Ok(SimilarityScore::ZERO);
    }
    let mut shared = 0u64;
    p.for_each_shared(q, |a, b| shared += u64::from(a.min(b)));
    Ok(SimilarityScore::clamped(
        2.0 * shared as f64 / totals as f64,
    ))
}

/// Levenshtein distance over characters (substitute, delete, insert; unit cost).
pub fn edit_distance(x: &str, y: &str) -> usize {
    let a: Vec<char> = x.chars().collect();
    let b: Vec<char> = y.chars().collect();

    let prefix = a.iter().zip(&b).take_while(|(p, q)| p == q).count();
    let (a, b) = (&a[prefix..], &b[prefix..]);
    let suffix = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(p, q)| p == q)
        .count();
    let (a, b) = (&a[..a.len() - suffix], &b[..b.len() - suffix]);
    // keep the row over the shorter string
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }

    let mut row: Vec<usize> = (0..=short.len()).collect();
    for (i, lc) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, sc) in short.iter().enumerate() {
            let above = row[j + 1];
            row[j + 1] = if lc == sc {
                diag
            } else {
                1 + diag.min(above).min(row[j])
            };
            diag = above;
        }
    }
    row[short.len()]
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use proptest::prelude::*;

    use super::*;
    use crate::similarity::build_profile;

    fn prof(s: &str) -> NGramProfile {
        build_profile(s, 2).unwrap()
    }

    /// Edit distance straight from its recursive definition, memoized.
    fn edit_oracle(x: &[char], y: &[char], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if x.is_empty() {
            return y.len();
        }
        if y.is_empty() {
            return x.len();
        }
        if let Some(&d) = memo.get(&(x.len(), y.len())) {
            return d;
        }
        let change = usize::from(x[0] != y[0]) + edit_oracle(&x[1..], &y[1..], memo);
        let delete = 1 + edit_oracle(&x[1..], y, memo);
        let insert = 1 + edit_oracle(x, &y[1..], memo);
        let d = change.min(delete).min(insert);
        memo.insert((x.len(), y.len()), d);
        d
    }

    fn oracle(x: &str, y: &str) -> usize {
        let a: Vec<char> = x.chars().collect();
        let b: Vec<char> = y.chars().collect();
        edit_oracle(&a, &b, &mut HashMap::new())
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(cosine(&prof("abcd"), &prof("abcd")).unwrap().value(), 1.0);
        assert_eq!(cosine(&prof("abcd"), &prof("wxyz")).unwrap().value(), 0.0);
        // {ab, bc, cd} vs {ab, bc, ce}: dot 2, norms sqrt(3) each
        let s = cosine(&prof("abcd"), &prof("abce")).unwrap().value();
        assert!((s - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_with_empty_is_zero() {
        assert_eq!(cosine(&prof("a"), &prof("abc")).unwrap().value(), 0.0);
        assert_eq!(cosine(&prof(""), &prof("")).unwrap().value(), 0.0);
    }

    #[test]
    fn mismatched_n_is_rejected() {
        let p = build_profile("abcd", 2).unwrap();
        let q = build_profile("abcd", 3).unwrap();
        assert!(cosine(&p, &q).is_err());
        assert!(dice(&p, &q).is_err());
    }

    #[test]
    fn dice_examples() {
        assert_eq!(dice(&prof("abcd"), &prof("abcd")).unwrap().value(), 1.0);
        assert_eq!(dice(&prof("abcd"), &prof("wxyz")).unwrap().value(), 0.0);
        let s = dice(&prof("abcd"), &prof("abce")).unwrap().value();
        assert!((s - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(dice(&prof(""), &prof("")).unwrap().value(), 0.0);
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance("abc", "abc"), 0);
        assert_eq!(edit_distance("", "abc"), 3);
        assert_eq!(edit_distance("abc", ""), 3);
        assert_eq!(edit_distance("kitten", "sitting"), 3);
        assert_eq!(oracle("kitten", "sitting"), 3);
        assert_eq!(edit_distance("flaw", "lawn"), 2);
        assert_eq!(edit_distance("día", "dia"), 1);
    }

    #[test]
    fn anagram_gram_multisets_score_one() {
        // rotations of a closed walk: both are {ab, bc, ca}
        let p = prof("abca");
        let q = prof("bcab");
        assert_eq!(p.iter().collect::<Vec<_>>(), q.iter().collect::<Vec<_>>());
        assert_eq!(cosine(&p, &q).unwrap().value(), 1.0);
        assert_eq!(dice(&p, &q).unwrap().value(), 1.0);
    }

    proptest! {
        #[test]
        fn edit_distance_matches_oracle(x in "[abcd]{0,12}", y in "[abcd]{0,12}", z in "[abcd]{0,12}") {
            let dxy = edit_distance(&x, &y);
            prop_assert_eq!(dxy, oracle(&x, &y));
            prop_assert_eq!(dxy, edit_distance(&y, &x));
            prop_assert_eq!(dxy == 0, x == y);
            prop_assert!(dxy <= x.len().max(y.len()));
            prop_assert!(dxy <= edit_distance(&x, &z) + edit_distance(&z, &y));
        }

        #[test]
        fn metric_axioms(x in "[a-e ]{0,30}", y in "[a-e ]{0,30}") {
            let (p, q) = (prof(&x), prof(&y));
            let c = cosine(&p, &q).unwrap().value();
            let d = dice(&p, &q).unwrap().value();
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!((0.0..=1.0).contains(&d));
            prop_assert_eq!(c, cosine(&q, &p).unwrap().value());
            prop_assert_eq!(d, dice(&q, &p).unwrap().value());
            if !p.is_empty() {
                prop_assert!((cosine(&p, &p).unwrap().value() - 1.0).abs() <= 1e-9);
                prop_assert_eq!(dice(&p, &p).unwrap().value(), 1.0);
            }
        }
    }
}
