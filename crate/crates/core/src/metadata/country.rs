use std::collections::HashMap;

use crate::{Error, Result};

const BUNDLED: &str = include_str!("../../data/country_languages.tsv");

/// ISO 3166-1 alpha-2 country code to the languages spoken there.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountryLanguageTable {
    countries: HashMap<String, Vec<String>>,
}

impl CountryLanguageTable {
    /// The table shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED, "country_languages.tsv").expect("bundled table is well-formed")
    }

    /// Parses `CC<TAB>ll,ll,...` lines; `#` comments and blank lines are skipped.
    pub fn parse(src: &str, source_name: &str) -> Result<Self> {
        let mut countries = HashMap::new();
        for (idx, line) in src.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (country, langs) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(source_name, lineno, "expected CC<TAB>languages"))?;
            let country = country.trim().to_ascii_uppercase();
            if country.len() != 2 || !country.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(Error::parse(
                    source_name,
                    lineno,
                    format!("bad country code {country:?}"),
                ));
            }
            let mut languages: Vec<String> = Vec::new();
            for lang in langs.split(',').map(|l| l.trim().to_ascii_lowercase()) {
                if lang.is_empty() {
                    continue;
                }
                if !languages.contains(&lang) {
                    languages.push(lang);
                }
            }
            if languages.is_empty() {
                return Err(Error::parse(source_name, lineno, "no languages listed"));
            }
            if countries.insert(country.clone(), languages).is_some() {
                return Err(Error::parse(
                    source_name,
                    lineno,
                    format!("duplicate country {country}"),
                ));
            }
        }
        Ok(CountryLanguageTable { countries })
    }

    pub fn from_entries<'a>(entries: impl IntoIterator<Item = (&'a str, &'a [&'a str])>) -> Self {
        let countries = entries
            .into_iter()
            .map(|(c, langs)| {
                (
                    c.to_ascii_uppercase(),
                    langs.iter().map(|l| l.to_ascii_lowercase()).collect(),
                )
            })
            .collect();
        CountryLanguageTable { countries }
    }

    /// Languages for `country` (case-insensitive); empty when unknown.
    pub fn languages(&self, country: &str) -> &[String] {
        self.countries
            .get(&country.trim().to_ascii_uppercase())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.countries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.countries.is_empty()
    }
}

pub fn country_languages<'t>(table: &'t CountryLanguageTable, country: &str) -> &'t [String] {
    table.languages(country)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lookups() {
        let t = CountryLanguageTable::bundled();
        assert!(t.len() > 240);
        assert_eq!(country_languages(&t, "CH"), ["de", "fr", "it"]);
        assert_eq!(country_languages(&t, "ch"), ["de", "fr", "it"]);
        assert_eq!(country_languages(&t, "US"), ["en"]);
        assert_eq!(country_languages(&t, "DE"), ["de"]);
        assert!(country_languages(&t, "ZZ").is_empty());
    }

    #[test]
    fn parse_normalizes_case_and_duplicates() {
        let t = CountryLanguageTable::parse("be\tNL,fr,nl\n# x\n\n", "t").unwrap();
        assert_eq!(t.languages("BE"), ["nl", "fr"]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        for bad in ["CH de", "CHE\tde", "CH\t ,", "CH\tde\nCH\tfr"] {
            let err = CountryLanguageTable::parse(bad, "t.tsv").unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "{bad}: {err}");
        }
    }
}
