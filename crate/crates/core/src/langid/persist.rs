//! Model files: a `<code>\t<K>` header, then one `<gram>\t<rank>` line per
//! gram in rank order. Backslash, tab and newline in grams are escaped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::LanguageModel;
use crate::{Error, Result};

/// File extension of model files inside a models directory.
pub const MODEL_EXTENSION: &str = "model";

fn escape(gram: &str) -> String {
    let mut out = String::with_capacity(gram.len());
    for c in gram.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(field: &str) -> Option<String> {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next()? {
            '\\' => out.push('\\'),
            't' => out.push('\t'),
            'n' => out.push('\n'),
            _ => return None,
        }
    }
    Some(out)
}

pub fn write_model(model: &LanguageModel) -> String {
    let mut out = format!("{}\t{}\n", model.language(), model.k());
    for (rank, gram) in model.ranked().iter().enumerate() {
        let _ = writeln!(out, "{}\t{rank}", escape(gram));
    }
    out
}

pub fn parse_model(src: &str, source_name: &str) -> Result<LanguageModel> {
    let mut lines = src.split('\n').enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(source_name, 1, "missing header"))?;
    let (language, k) = header
        .split_once('\t')
        .ok_or_else(|| Error::parse(source_name, 1, "header must be <code>\\t<K>"))?;
    let k: usize = k
        .trim()
        .parse()
        .map_err(|_| Error::parse(source_name, 1, format!("bad K {k:?}")))?;
    let mut ranked = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (gram, rank) = line
            .rsplit_once('\t')
            .ok_or_else(|| Error::parse(source_name, lineno, "expected <gram>\\t<rank>"))?;
        let gram = unescape(gram)
            .ok_or_else(|| Error::parse(source_name, lineno, "bad escape sequence"))?;
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::parse(source_name, lineno, format!("bad rank {rank:?}")))?;
        if rank != ranked.len() {
            return Err(Error::parse(
                source_name,
                lineno,
                format!("rank {rank} out of order, expected {}", ranked.len()),
            ));
        }
        ranked.push(gram);
    }
    LanguageModel::from_ranked(language.trim(), k, ranked)
        .map_err(|e| Error::parse(source_name, 1, e.to_string()))
}

pub fn load_model(path: &Path) -> Result<LanguageModel> {
    let src = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_model(&src, &path.display().to_string())
}

/// Loads every `*.model` file in `dir`, ordered by file name.
pub fn load_models_dir(dir: &Path) -> Result<Vec<LanguageModel>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().is_some_and(|ext| ext == MODEL_EXTENSION) {
            paths.push(path);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(Error::invalid(format!(
            "no .{MODEL_EXTENSION} files in {}",
            dir.display()
        )));
    }
    paths.iter().map(|p| load_model(p)).collect()
}
