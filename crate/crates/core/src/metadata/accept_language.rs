use serde::Serialize;

/// One `language-range[;q=value]` element of the header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LanguageRange {
    pub range: String,
    pub quality: f64,
}

impl LanguageRange {
    /// Lowercased primary subtag when it is a two or three letter language code.
    pub fn base_code(&self) -> Option<String> {
        let primary = self.range.split('-').next()?;
        let is_code =
            (2..=3).contains(&primary.len()) && primary.chars().all(|c| c.is_ascii_alphabetic());
        is_code.then(|| primary.to_ascii_lowercase())
    }
}

/// A parsed `Accept-Language` header.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct AcceptLanguage {
    entries: Vec<LanguageRange>,
    primary_codes: Vec<String>,
}

impl AcceptLanguage {
    fn from_entries(entries: Vec<LanguageRange>) -> Self {
        let mut by_quality: Vec<&LanguageRange> = entries.iter().collect();
        // stable: equal qualities keep header order
        by_quality.sort_by(|a, b| b.quality.total_cmp(&a.quality));
        let mut primary_codes: Vec<String> = Vec::new();
        for entry in by_quality {
            // q=0 marks a language as not acceptable
            if entry.quality <= 0.0 {
                continue;
            }
            if let Some(code) = entry.base_code() {
                if !primary_codes.contains(&code) {
                    primary_codes.push(code);
                }
            }
        }
        AcceptLanguage {
            entries,
            primary_codes,
        }
    }

    /// Entries in header order.
    pub fn entries(&self) -> &[LanguageRange] {
        &self.entries
    }

    /// Distinct base language codes, highest quality first.
    pub fn primary_codes(&self) -> &[String] {
        &self.primary_codes
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn accepts(&self, code: &str) -> bool {
        self.primary_codes.iter().any(|c| c == code)
    }

    /// Header text that parses back to the same entries.
    pub fn to_header_value(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                if e.quality >= 1.0 {
                    e.range.clone()
                } else {
                    let q = format!("{:.3}", e.quality);
                    format!(
                        "{};q={}",
                        e.range,
                        q.trim_end_matches('0').trim_end_matches('.')
                    )
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn valid_range(range: &str) -> bool {
    if range == "*" {
        return true;
    }
    let mut subtags = range.split('-');
    let primary_ok = subtags
        .next()
        .is_some_and(|p| (1..=8).contains(&p.len()) && p.chars().all(|c| c.is_ascii_alphabetic()));
    primary_ok
        && subtags
            .all(|s| (1..=8).contains(&s.len()) && s.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// Accepts `[-]digits[.d{0,3}]`, clamped into `[0, 1]`.
fn parse_quality(value: &str) -> Option<f64> {
    let unsigned = value.strip_prefix('-').unwrap_or(value);
    let (int, frac) = match unsigned.split_once('.') {
        Some((i, f)) => (i, f),
        None => (unsigned, ""),
    };
    let digits = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if int.is_empty() || !digits(int) || frac.len() > 3 || !digits(frac) {
        return None;
    }
    let q: f64 = value.trim_end_matches('.').parse().ok()?;
    Some(q.clamp(0.0, 1.0))
}

fn parse_entry(raw: &str) -> Option<LanguageRange> {
    let mut parts = raw.split(';');
    let range = parts.next()?.trim();
    if !valid_range(range) {
        return None;
    }
    let mut quality = 1.0;
    for param in parts {
        let (name, value) = param.split_once('=')?;
        if name.trim().eq_ignore_ascii_case("q") {
            quality = parse_quality(value.trim())?;
        }
    }
    Some(LanguageRange {
        range: range.to_string(),
        quality,
    })
}

/// Parses an `Accept-Language` value. Malformed elements are dropped.
pub fn parse_accept_language(header: &str) -> AcceptLanguage {
    let entries = header
        .split(',')
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .filter_map(parse_entry)
        .collect();
    AcceptLanguage::from_entries(entries)
}
