//! `key = value` text files. Values may be wrapped in double quotes; lines
//! starting with `#` are comments.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KvError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { key: String, line: usize },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("line {line}: unknown key `{key}`")]
    Unknown { key: String, line: usize },
    #[error("line {line}: bad value for `{key}`: {msg}")]
    Value { key: String, line: usize, msg: String },
}

#[derive(Clone, Debug, Default)]
pub struct KvDoc {
    entries: BTreeMap<String, (String, usize)>,
}

impl KvDoc {
    pub fn parse(text: &str) -> Result<Self, KvError> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let (k, v) = s.split_once('=').ok_or(KvError::Syntax { line })?;
            let key = k.trim();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(KvError::Syntax { line });
            }
            let mut value = v.trim();
            if let Some(inner) = value.strip_prefix('"') {
                value = inner.strip_suffix('"').ok_or(KvError::Syntax { line })?;
            }
            if entries
                .insert(key.to_string(), (value.to_string(), line))
                .is_some()
            {
                return Err(KvError::Duplicate {
                    key: key.to_string(),
                    line,
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    pub fn line(&self, key: &str) -> usize {
        self.entries.get(key).map_or(0, |(_, l)| *l)
    }

    pub fn require(&self, key: &str) -> Result<&str, KvError> {
        self.get(key).ok_or_else(|| KvError::Missing(key.to_string()))
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), KvError> {
        match self.entries.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            Some((k, (_, line))) => Err(KvError::Unknown {
                key: k.clone(),
                line: *line,
            }),
            None => Ok(()),
        }
    }

    pub fn value_error(&self, key: &str, msg: impl ToString) -> KvError {
        KvError::Value {
            key: key.to_string(),
            line: self.line(key),
            msg: msg.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quoted_and_bare_values() {
        let d = KvDoc::parse("# c\nname = x\n gong = \"(0^7)\"\n\nlambda=1/2\n").unwrap();
        assert_eq!(d.get("name"), Some("x"));
        assert_eq!(d.get("gong"), Some("(0^7)"));
        assert_eq!(d.get("lambda"), Some("1/2"));
        assert_eq!(d.line("lambda"), 5);
        assert!(d.check_keys(&["name", "gong"]).is_err());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert_eq!(KvDoc::parse("a\n").unwrap_err(), KvError::Syntax { line: 1 });
        assert!(matches!(
            KvDoc::parse("a = 1\na = 2").unwrap_err(),
            KvError::Duplicate { line: 2, .. }
        ));
        assert!(KvDoc::parse("a = \"x").is_err());
    }
}
