use serde::Serialize;

use crate::similarity::check_threshold;
use crate::{Error, Result};

/// Threshold used when a rule line omits one.
pub const DEFAULT_THETA: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeywordRule {
    pub keyword: String,
    pub theta: f64,
}

impl KeywordRule {
    pub fn new(keyword: impl Into<String>, theta: f64) -> Result<Self> {
        let keyword = keyword.into();
        if keyword.trim().is_empty() {
            return Err(Error::invalid("rule keyword is blank"));
        }
        check_threshold(theta)?;
        Ok(KeywordRule { keyword, theta })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryRuleSet {
    pub category: String,
    pub rules: Vec<KeywordRule>,
}

impl CategoryRuleSet {
    pub fn new(category: impl Into<String>, rules: Vec<KeywordRule>) -> Result<Self> {
        let category = category.into();
        if category.trim().is_empty() {
            return Err(Error::invalid("category name is blank"));
        }
        if rules.is_empty() {
            return Err(Error::invalid(format!("category {category} has no rules")));
        }
        Ok(CategoryRuleSet { category, rules })
    }
}

/// Parses a rules file: one `category<TAB>keyword<TAB>theta` rule per line.
///
/// The theta column may be omitted ([`DEFAULT_THETA`]). Blank lines and lines
/// starting with `#` are skipped. Rules for the same category are grouped
/// under its first appearance, so categories keep file order.
pub fn parse_rules(src: &str, source_name: &str) -> Result<Vec<CategoryRuleSet>> {
    let mut sets: Vec<CategoryRuleSet> = Vec::new();
    for (idx, line) in src.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let (category, keyword, theta) = match fields.as_slice() {
            [c, k] => (c.trim(), *k, DEFAULT_THETA),
            [c, k, t] => {
                let theta = t.trim().parse::<f64>().map_err(|_| {
                    Error::parse(source_name, lineno, format!("bad threshold {t:?}"))
                })?;
                (c.trim(), *k, theta)
            }
            _ => {
                return Err(Error::parse(
                    source_name,
                    lineno,
                    format!(
                        "expected 2 or 3 tab-separated fields, found {}",
                        fields.len()
                    ),
                ))
            }
        };
        if category.is_empty() {
            return Err(Error::parse(source_name, lineno, "empty category"));
        }
        let rule = KeywordRule::new(keyword.trim(), theta)
            .map_err(|e| Error::parse(source_name, lineno, e.to_string()))?;
        match sets.iter_mut().find(|s| s.category == category) {
            Some(set) => set.rules.push(rule),
            None => sets.push(CategoryRuleSet {
                category: category.to_string(),
                rules: vec![rule],
            }),
        }
    }
    Ok(sets)
}
