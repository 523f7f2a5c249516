use std::fmt::Write as _;

use serde::Serialize;

use super::accept_language::parse_accept_language;
use super::country::CountryLanguageTable;
use super::record::ChatRecord;
use crate::langid::{identify, normalized_length, LanguageModel};
use crate::{Error, Result};

/// Which metadata signals agree with the identified language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatchBucket {
    All,
    HeaderOnly,
    CountryOnly,
    None,
}

impl MatchBucket {
    pub fn from_matches(header: bool, country: bool) -> Self {
        match (header, country) {
            (true, true) => MatchBucket::All,
            (true, false) => MatchBucket::HeaderOnly,
            (false, true) => MatchBucket::CountryOnly,
            (false, false) => MatchBucket::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementRecord {
    pub id: String,
    pub classified: String,
    pub confident: bool,
    pub message_length: usize,
    pub header_match: bool,
    pub country_match: bool,
    pub bucket: MatchBucket,
}

impl AgreementRecord {
    pub fn new(
        id: impl Into<String>,
        classified: impl Into<String>,
        message_length: usize,
        header_match: bool,
        country_match: bool,
    ) -> Self {
        AgreementRecord {
            id: id.into(),
            classified: classified.into(),
            confident: true,
            message_length,
            header_match,
            country_match,
            bucket: MatchBucket::from_matches(header_match, country_match),
        }
    }
}

/// Identifies the message language and checks it against both signals.
///
/// Languages are compared by base code. Missing metadata never matches.
pub fn evaluate_record(
    record: &ChatRecord,
    models: &[LanguageModel],
    table: &CountryLanguageTable,
) -> Result<AgreementRecord> {
    let prediction = identify(&record.message, models)?;
    let classified = prediction.language;
    let header_match = record
        .accept_language
        .as_deref()
        .is_some_and(|h| parse_accept_language(h).accepts(&classified));
    let country_match = record
        .country
        .as_deref()
        .is_some_and(|c| table.languages(c).contains(&classified));
    let mut out = AgreementRecord::new(
        record.id.clone(),
        classified,
        normalized_length(&record.message),
        header_match,
        country_match,
    );
    out.confident = prediction.confident;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct BucketCounts {
    pub all: usize,
    pub header_only: usize,
    pub country_only: usize,
    pub none: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BucketFractions {
    pub all: f64,
    pub header_only: f64,
    pub country_only: f64,
    pub none: f64,
}

/// Match rates for messages with `lower <= length < upper`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthBin {
    pub lower: usize,
    /// `None` for the open-ended last bin.
    pub upper: Option<usize>,
    pub count: usize,
    pub header_match_rate: f64,
    pub country_match_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub total: usize,
    pub counts: BucketCounts,
    pub fractions: BucketFractions,
    pub header_matches: usize,
    pub country_matches: usize,
    pub either_matches: usize,
    pub header_match_rate: f64,
    pub country_match_rate: f64,
    pub either_match_rate: f64,
    pub length_bins: Vec<LengthBin>,
}

fn rate(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Tallies agreement buckets, overall rates and per-length-bin rates.
///
/// Bins are `[e_i, e_{i+1})` plus a final open bin from the last edge. When
/// the first edge is above zero an extra `[0, e_0)` bin comes first.
pub fn aggregate(records: &[AgreementRecord], bin_edges: &[usize]) -> Result<AgreementReport> {
    if bin_edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!(
            "bin edges must be strictly ascending: {bin_edges:?}"
        )));
    }
    let mut counts = BucketCounts::default();
    for r in records {
        match r.bucket {
            MatchBucket::All => counts.all += 1,
            MatchBucket::HeaderOnly => counts.header_only += 1,
            MatchBucket::CountryOnly => counts.country_only += 1,
            MatchBucket::None => counts.none += 1,
        }
    }
    let total = records.len();
    let header_matches = counts.all + counts.header_only;
    let country_matches = counts.all + counts.country_only;
    let either_matches = total - counts.none;

    let mut bounds: Vec<(usize, Option<usize>)> = Vec::new();
    let mut edges = bin_edges.to_vec();
    if edges.first().is_none_or(|&e| e > 0) {
        edges.insert(0, 0);
    }
    for w in edges.windows(2) {
        bounds.push((w[0], Some(w[1])));
    }
    bounds.push((*edges.last().unwrap(), None));

    let length_bins = bounds
        .into_iter()
        .map(|(lower, upper)| {
            let inside: Vec<&AgreementRecord> = records
                .iter()
                .filter(|r| r.message_length >= lower && upper.is_none_or(|u| r.message_length < u))
                .collect();
            let n = inside.len();
            LengthBin {
                lower,
                upper,
                count: n,
                header_match_rate: rate(inside.iter().filter(|r| r.header_match).count(), n),
                country_match_rate: rate(inside.iter().filter(|r| r.country_match).count(), n),
            }
        })
        .collect();

    Ok(AgreementReport {
        total,
        counts,
        fractions: BucketFractions {
            all: rate(counts.all, total),
            header_only: rate(counts.header_only, total),
            country_only: rate(counts.country_only, total),
            none: rate(counts.none, total),
        },
        header_matches,
        country_matches,
        either_matches,
        header_match_rate: rate(header_matches, total),
        country_match_rate: rate(country_matches, total),
        either_match_rate: rate(either_matches, total),
        length_bins,
    })
}

impl AgreementReport {
    /// Plain-text rendering for terminals.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "records: {}", self.total);
        let _ = writeln!(out, "{:<14} {:>7} {:>9}", "bucket", "count", "fraction");
        for (name, count, frac) in [
            ("ALL", self.counts.all, self.fractions.all),
            (
                "HEADER_ONLY",
                self.counts.header_only,
                self.fractions.header_only,
            ),
            (
                "COUNTRY_ONLY",
                self.counts.country_only,
                self.fractions.country_only,
            ),
            ("NONE", self.counts.none, self.fractions.none),
        ] {
            let _ = writeln!(out, "{name:<14} {count:>7} {frac:>9.4}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "header match rate:  {:.4}", self.header_match_rate);
        let _ = writeln!(out, "country match rate: {:.4}", self.country_match_rate);
        let _ = writeln!(out, "either match rate:  {:.4}", self.either_match_rate);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<12} {:>7} {:>8} {:>8}",
            "length", "count", "header", "country"
        );
        for bin in &self.length_bins {
            let label = match bin.upper {
                Some(u) => format!("[{}, {})", bin.lower, u),
                None => format!("[{}, inf)", bin.lower),
            };
            let _ = writeln!(
                out,
                "{label:<12} {:>7} {:>8.4} {:>8.4}",
                bin.count, bin.header_match_rate, bin.country_match_rate
            );
        }
        out
    }
}
