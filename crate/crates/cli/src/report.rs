//! Line-oriented `key=value` output closed by a `json=` line.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub input: String,
    pub invariant: String,
    pub value: String,
    pub elapsed_us: u64,
    pub metadata: BTreeMap<String, String>,
}

/// Keys that metadata entries may not use.
const RESERVED: [&str; 5] = ["input", "invariant", "value", "elapsed_us", "json"];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("line without `=`: {0}")]
    MissingEquals(String),
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("bad elapsed time `{0}`")]
    BadElapsed(String),
    #[error("bad escape sequence in `{0}`")]
    BadEscape(String),
    #[error("invalid json block: {0}")]
    Json(String),
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Result<String, ReportError> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(ch) = chars.next() {
        if ch != '\\' {
            out.push(ch);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            _ => return Err(ReportError::BadEscape(s.to_string())),
        }
    }
    Ok(out)
}

impl InvariantReport {
    pub fn new(input: impl Into<String>, invariant: impl Into<String>) -> Self {
        Self {
            input: input.into(),
            invariant: invariant.into(),
            value: String::new(),
            elapsed_us: 0,
            metadata: BTreeMap::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Reads the `json=` line when present, otherwise the `key=value` lines.
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        if let Some(json) = text.lines().find_map(|l| l.strip_prefix("json=")) {
            return serde_json::from_str(json).map_err(|e| ReportError::Json(e.to_string()));
        }
        Self::parse_lines(text)
    }

    /// Parses only the `key=value` lines, ignoring any `json=` line.
    pub fn parse_lines(text: &str) -> Result<Self, ReportError> {
        let mut fields: BTreeMap<String, String> = BTreeMap::new();
        for line in text.lines().filter(|l| !l.is_empty() && !l.starts_with("json=")) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ReportError::MissingEquals(line.into()))?;
            fields.insert(k.to_string(), unescape(v)?);
        }
        let mut take = |k: &'static str| fields.remove(k).ok_or(ReportError::MissingField(k));
        let input = take("input")?;
        let invariant = take("invariant")?;
        let value = take("value")?;
        let elapsed = take("elapsed_us")?;
        let elapsed_us = elapsed.parse().map_err(|_| ReportError::BadElapsed(elapsed))?;
        Ok(Self {
            input,
            invariant,
            value,
            elapsed_us,
            metadata: fields,
        })
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input={}", escape(&self.input))?;
        writeln!(f, "invariant={}", escape(&self.invariant))?;
        writeln!(f, "value={}", escape(&self.value))?;
        writeln!(f, "elapsed_us={}", self.elapsed_us)?;
        for (k, v) in &self.metadata {
            if !RESERVED.contains(&k.as_str()) {
                writeln!(f, "{k}={}", escape(v))?;
            }
        }
        writeln!(f, "json={}", self.to_json())
    }
}
