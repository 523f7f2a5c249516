use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One chat: the first message plus the metadata that came with it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatRecord {
    pub id: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept_language: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub country: Option<String>,
    /// Expected category, for labeled classification datasets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl ChatRecord {
    pub fn new(id: impl Into<String>, message: impl Into<String>) -> Self {
        ChatRecord {
            id: id.into(),
            message: message.into(),
            accept_language: None,
            country: None,
            label: None,
        }
    }
}

/// Parses line-delimited JSON records, rejecting duplicate ids.
pub fn parse_chat_records(src: &str, source_name: &str) -> Result<Vec<ChatRecord>> {
    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for (idx, line) in src.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: ChatRecord = serde_json::from_str(line)
            .map_err(|e| Error::parse(source_name, idx + 1, e.to_string()))?;
        if !seen.insert(record.id.clone()) {
            return Err(Error::parse(
                source_name,
                idx + 1,
                format!("duplicate id {:?}", record.id),
            ));
        }
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optional_fields() {
        let src = r#"{"id":"1","message":"hi","accept_language":"en-US","country":"US"}

{"id":"2","message":"hallo"}
"#;
        let recs = parse_chat_records(src, "d.jsonl").unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].country.as_deref(), Some("US"));
        assert_eq!(recs[1].accept_language, None);
    }

    #[test]
    fn rejects_duplicates_and_bad_json() {
        let dup = "{\"id\":\"1\",\"message\":\"a\"}\n{\"id\":\"1\",\"message\":\"b\"}\n";
        assert!(matches!(
            parse_chat_records(dup, "d").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_chat_records("{\"id\":1}\n", "d").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn serializes_back() {
        let mut r = ChatRecord::new("a", "text");
        r.country = Some("FR".into());
        let line = serde_json::to_string(&r).unwrap();
        assert_eq!(line, r#"{"id":"a","message":"text","country":"FR"}"#);
        assert_eq!(parse_chat_records(&line, "d").unwrap(), vec![r]);
    }
}
