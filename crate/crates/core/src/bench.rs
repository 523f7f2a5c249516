//! Timing harness comparing the greedy word search with the character-window
//! baseline on a reproducible synthetic ticket corpus.
//!
//! Documents are random filler words with one keyword planted per document.
//! The planted form is the keyword verbatim (40%), with a word split in two
//! (20%), with words merged (20%), or with one character changed (20%).

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::greedy::greedy_search;
use crate::similarity::{check_threshold, window_scan};
use crate::{Error, Result};

const KEYWORD_POOL: &[&str] = &[
    "name servers",
    "ssl certificate",
    "load balancer",
    "firewall rules",
    "cache purge",
    "rate limiting",
    "page rules",
    "origin server",
    "dns record",
    "api token",
    "worker script",
    "zone transfer",
    "ip address",
    "health check",
    "access denied",
    "bad gateway",
    "billing invoice",
    "password reset",
    "domain registrar",
    "email routing",
    "web application",
    "bot management",
    "image resizing",
    "tunnel connector",
    "edge certificate",
    "custom hostname",
    "redirect loop",
    "mixed content",
    "origin pull",
    "argo routing",
    "analytics dashboard",
    "account member",
    "two factor",
    "spectrum app",
    "stream video",
    "page shield",
    "dnssec",
    "healthchecks",
    "wildcard",
    "subdomain",
];

const FILLER: &[&str] = &[
    "the",
    "a",
    "we",
    "our",
    "you",
    "please",
    "help",
    "today",
    "since",
    "after",
    "before",
    "when",
    "with",
    "from",
    "about",
    "could",
    "would",
    "should",
    "have",
    "has",
    "been",
    "was",
    "were",
    "not",
    "still",
    "again",
    "every",
    "some",
    "many",
    "few",
    "all",
    "there",
    "here",
    "this",
    "that",
    "these",
    "those",
    "customer",
    "team",
    "office",
    "morning",
    "evening",
    "night",
    "week",
    "month",
    "yesterday",
    "tomorrow",
    "update",
    "change",
    "issue",
    "problem",
    "question",
    "answer",
    "reply",
    "thanks",
    "hello",
    "regards",
    "urgent",
    "slow",
    "fast",
    "broken",
    "working",
    "visitors",
    "users",
    "people",
    "website",
    "site",
    "page",
    "pages",
    "shop",
    "store",
    "order",
    "orders",
    "payment",
    "plan",
    "upgrade",
    "support",
    "ticket",
    "message",
    "phone",
    "call",
    "email",
    "screen",
    "browser",
    "mobile",
    "desktop",
    "error",
    "warning",
    "notice",
    "report",
    "log",
    "logs",
    "time",
    "times",
    "minutes",
    "hours",
    "days",
    "again",
    "because",
    "while",
    "until",
    "during",
    "without",
    "within",
    "really",
    "very",
    "quite",
    "just",
    "only",
    "also",
    "maybe",
    "perhaps",
    "think",
    "know",
    "see",
    "look",
    "check",
    "try",
    "tried",
    "changed",
    "moved",
    "added",
    "removed",
    "noticed",
    "seems",
    "looks",
    "happens",
    "happened",
    "started",
    "stopped",
    "finished",
    "launch",
    "product",
    "new",
    "old",
    "first",
    "last",
    "next",
    "other",
    "same",
    "different",
    "large",
    "small",
    "traffic",
    "country",
    "region",
    "partner",
    "company",
    "business",
    "staff",
    "manager",
];

/// Number of keywords available to the generator.
pub fn keyword_pool_size() -> usize {
    KEYWORD_POOL.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchConfig {
    pub docs: usize,
    pub doc_length: usize,
    pub keywords: usize,
    pub theta: f64,
    pub seed: u64,
    pub n: usize,
    /// Leading documents searched once, untimed, before measuring.
    pub warmup_docs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            docs: 500,
            doc_length: 1000,
            keywords: 20,
            theta: 0.85,
            seed: 42,
            n: 2,
            warmup_docs: 20,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.docs == 0 || self.doc_length == 0 || self.keywords == 0 || self.n == 0 {
            return Err(Error::invalid(
                "docs, doc length, keyword count and gram size must be positive",
            ));
        }
        if self.keywords > KEYWORD_POOL.len() {
            return Err(Error::invalid(format!(
                "at most {} keywords are available",
                KEYWORD_POOL.len()
            )));
        }
        check_threshold(self.theta)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mutation {
    Verbatim,
    Split,
    Merged,
    Edit,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::Verbatim,
        Mutation::Split,
        Mutation::Merged,
        Mutation::Edit,
    ];

    fn sample(rng: &mut impl Rng) -> Self {
        match rng.gen_range(0..10) {
            0..=3 => Mutation::Verbatim,
            4..=5 => Mutation::Split,
            6..=7 => Mutation::Merged,
            _ => Mutation::Edit,
        }
    }

    fn apply(self, keyword: &str, rng: &mut impl Rng) -> String {
        match self {
            Mutation::Verbatim => keyword.to_string(),
            Mutation::Split => {
                let words: Vec<&str> = keyword.split(' ').collect();
                let (idx, longest) = words
                    .iter()
                    .enumerate()
                    .max_by_key(|(i, w)| (w.len(), std::cmp::Reverse(*i)))
                    .expect("keywords are non-empty");
                if longest.len() < 4 {
                    return keyword.to_string();
                }
                let mid = longest.len() / 2;
                let mut out = words.clone();
                let split = format!("{} {}", &longest[..mid], &longest[mid..]);
                out[idx] = &split;
                out.join(" ")
            }
            Mutation::Merged => match keyword.split_once(' ') {
                Some((a, b)) => format!("{a}{b}"),
                None => {
                    let mid = keyword.len() / 2;
                    format!("{}-{}", &keyword[..mid], &keyword[mid..])
                }
            },
            Mutation::Edit => {
                let mut chars: Vec<char> = keyword.chars().collect();
                let letters: Vec<usize> = (0..chars.len()).filter(|&i| chars[i] != ' ').collect();
                let pos = letters[rng.gen_range(0..letters.len())];
                let replacement = loop {
                    let c = rng.gen_range(b'a'..=b'z') as char;
                    if c != chars[pos] {
                        break c;
                    }
                };
                chars[pos] = replacement;
                chars.into_iter().collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlantedKeyword {
    pub doc: usize,
    pub keyword: usize,
    pub mutation: Mutation,
    pub surface: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyntheticCorpus {
    pub keywords: Vec<String>,
    pub docs: Vec<String>,
    pub planted: Vec<PlantedKeyword>,
}

/// Generates the corpus for `config`; identical seeds give identical corpora.
pub fn generate_corpus(config: &BenchConfig) -> Result<SyntheticCorpus> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut pool: Vec<&str> = KEYWORD_POOL.to_vec();
    pool.shuffle(&mut rng);
    let keywords: Vec<String> = pool[..config.keywords]
        .iter()
        .map(|s| s.to_string())
        .collect();

    let mut docs = Vec::with_capacity(config.docs);
    let mut planted = Vec::with_capacity(config.docs);
    for doc in 0..config.docs {
        let keyword = rng.gen_range(0..keywords.len());
        let mutation = Mutation::sample(&mut rng);
        let surface = mutation.apply(&keywords[keyword], &mut rng);

        let budget = config.doc_length.saturating_sub(surface.len() + 1);
        let mut words: Vec<&str> = Vec::new();
        let mut len = 0;
        while len < budget {
            let w = FILLER[rng.gen_range(0..FILLER.len())];
            len += w.len() + usize::from(!words.is_empty());
            words.push(w);
        }
        let at = rng.gen_range(0..=words.len());
        words.insert(at, &surface);
        docs.push(words.join(" "));
        planted.push(PlantedKeyword {
            doc,
            keyword,
            mutation,
            surface,
        });
    }
    Ok(SyntheticCorpus {
        keywords,
        docs,
        planted,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Baseline,
    Greedy,
}

impl Method {
    fn matches(self, keyword: &str, doc: &str, theta: f64, n: usize) -> Result<bool> {
        Ok(match self {
            Method::Baseline => window_scan(keyword, doc, theta, n)?.is_some(),
            Method::Greedy => greedy_search(keyword, doc, theta, n)?.is_some(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchResult {
    pub method: Method,
    pub corpus_size: usize,
    pub keyword_count: usize,
    /// Per-document wall time over all keywords.
    pub mean_seconds: f64,
    pub median_seconds: f64,
    pub matches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MutationRecall {
    pub mutation: Mutation,
    pub planted: usize,
    pub baseline_found: usize,
    pub greedy_found: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub baseline: BenchResult,
    pub greedy: BenchResult,
    /// Baseline mean time over greedy mean time.
    pub ratio: f64,
    pub planted: Vec<MutationRecall>,
}

impl BenchReport {
    pub fn recall(&self, mutation: Mutation) -> &MutationRecall {
        self.planted
            .iter()
            .find(|r| r.mutation == mutation)
            .expect("every mutation is reported")
    }
}

/// `flags[doc][keyword]`: whether `method` matched.
pub type MatchMatrix = Vec<Vec<bool>>;

/// Runs one method over the whole corpus, timing each document.
pub fn run_method(
    corpus: &SyntheticCorpus,
    method: Method,
    theta: f64,
    n: usize,
) -> Result<(MatchMatrix, Vec<f64>)> {
    let mut flags = Vec::with_capacity(corpus.docs.len());
    let mut seconds = Vec::with_capacity(corpus.docs.len());
    for doc in &corpus.docs {
        let start = Instant::now();
        let row = corpus
            .keywords
            .iter()
            .map(|k| method.matches(k, doc, theta, n))
            .collect::<Result<Vec<bool>>>()?;
        seconds.push(start.elapsed().as_secs_f64());
        flags.push(row);
    }
    Ok((flags, seconds))
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Generates the corpus, warms up both methods, then times each in turn.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    let corpus = generate_corpus(config)?;
    let warm = SyntheticCorpus {
        keywords: corpus.keywords.clone(),
        docs: corpus.docs[..config.warmup_docs.min(corpus.docs.len())].to_vec(),
        planted: Vec::new(),
    };
    for method in [Method::Baseline, Method::Greedy] {
        run_method(&warm, method, config.theta, config.n)?;
    }

    let summarize = |method, flags: &MatchMatrix, secs: &[f64]| BenchResult {
        method,
        corpus_size: corpus.docs.len(),
        keyword_count: corpus.keywords.len(),
        mean_seconds: mean(secs),
        median_seconds: median(secs),
        matches: flags.iter().flatten().filter(|&&m| m).count(),
    };
    let (base_flags, base_secs) = run_method(&corpus, Method::Baseline, config.theta, config.n)?;
    let (greedy_flags, greedy_secs) = run_method(&corpus, Method::Greedy, config.theta, config.n)?;
    let baseline = summarize(Method::Baseline, &base_flags, &base_secs);
    let greedy = summarize(Method::Greedy, &greedy_flags, &greedy_secs);

    let planted = Mutation::ALL
        .iter()
        .map(|&mutation| {
            let subset: Vec<&PlantedKeyword> = corpus
                .planted
                .iter()
                .filter(|p| p.mutation == mutation)
                .collect();
            MutationRecall {
                mutation,
                planted: subset.len(),
                baseline_found: subset
                    .iter()
                    .filter(|p| base_flags[p.doc][p.keyword])
                    .count(),
                greedy_found: subset
                    .iter()
                    .filter(|p| greedy_flags[p.doc][p.keyword])
                    .count(),
            }
        })
        .collect();

    let ratio = if greedy.mean_seconds > 0.0 {
        baseline.mean_seconds / greedy.mean_seconds
    } else {
        f64::INFINITY
    };
    Ok(BenchReport {
        config: *config,
        baseline,
        greedy,
        ratio,
        planted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig {
            docs: 30,
            doc_length: 300,
            keywords: 5,
            warmup_docs: 2,
            ..Default::default()
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(
            generate_corpus(&small()).unwrap(),
            generate_corpus(&small()).unwrap()
        );
        let other = BenchConfig { seed: 7, ..small() };
        assert_ne!(
            generate_corpus(&small()).unwrap(),
            generate_corpus(&other).unwrap()
        );
    }

    #[test]
    fn documents_carry_their_planted_keyword() {
        let c = generate_corpus(&small()).unwrap();
        for p in &c.planted {
            assert!(c.docs[p.doc].contains(&p.surface));
            assert!(c.docs[p.doc].len() <= small().doc_length + 12);
        }
    }

    #[test]
    fn mutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            Mutation::Split.apply("name servers", &mut rng),
            "name ser vers"
        );
        assert_eq!(Mutation::Split.apply("dnssec", &mut rng), "dns sec");
        assert_eq!(
            Mutation::Merged.apply("name servers", &mut rng),
            "nameservers"
        );
        assert_eq!(Mutation::Merged.apply("wildcard", &mut rng), "wild-card");
        let edited = Mutation::Edit.apply("api token", &mut rng);
        assert_eq!(edited.len(), 9);
        assert_eq!(crate::edit_distance("api token", &edited), 1);
    }

    #[test]
    fn match_counts_are_reproducible() {
        let a = run_bench(&small()).unwrap();
        let b = run_bench(&small()).unwrap();
        assert_eq!(a.baseline.matches, b.baseline.matches);
        assert_eq!(a.greedy.matches, b.greedy.matches);
        assert_eq!(a.planted, b.planted);
        assert!(a.greedy.matches <= 30 * 5);
        assert!(a.baseline.mean_seconds >= 0.0 && a.greedy.median_seconds >= 0.0);
    }

    #[test]
    fn rejects_bad_sizes() {
        for bad in [
            BenchConfig { docs: 0, ..small() },
            BenchConfig {
                doc_length: 0,
                ..small()
            },
            BenchConfig {
                keywords: 0,
                ..small()
            },
            BenchConfig {
                keywords: 999,
                ..small()
            },
            BenchConfig {
                theta: 0.0,
                ..small()
            },
        ] {
            assert!(run_bench(&bad).is_err());
        }
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&[]), 0.0);
    }
}
