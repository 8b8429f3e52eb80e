//! `key=v1,v2;key2=a..b` parameter strings for families and search bounds.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    entries: BTreeMap<String, Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(u64),
    /// Inclusive range.
    Range(u64, u64),
    Word(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Range(a, b) => write!(f, "{a}..{b}"),
            Value::Word(w) => f.write_str(w),
        }
    }
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column,
        message: message.into(),
    }
}

fn is_word(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

fn parse_value(raw: &str, column: usize) -> Result<Value> {
    if let Some((a, b)) = raw.split_once("..") {
        let lo = a.parse::<u64>().map_err(|_| syntax(column, format!("bad range start `{a}`")))?;
        let hi = b
            .parse::<u64>()
            .map_err(|_| syntax(column + a.len() + 2, format!("bad range end `{b}`")))?;
        if lo > hi {
            return Err(syntax(column, format!("empty range {lo}..{hi}")));
        }
        return Ok(Value::Range(lo, hi));
    }
    if raw.starts_with(|c: char| c.is_ascii_digit()) {
        if let Ok(n) = raw.parse::<u64>() {
            return Ok(Value::Int(n));
        }
    }
    if is_word(raw) {
        Ok(Value::Word(raw.to_string()))
    } else {
        Err(syntax(column, format!("unexpected value `{raw}`")))
    }
}

impl Params {
    /// Parses `key=v,...;key=...`. Whitespace around tokens is ignored.
    /// Columns in errors are 1-based.
    pub fn parse(text: &str) -> Result<Params> {
        let mut entries = BTreeMap::new();
        let mut offset = 0;
        for clause in text.split(';') {
            let start = offset;
            offset += clause.len() + 1;
            if clause.trim().is_empty() {
                continue;
            }
            let Some((key, values)) = clause.split_once('=') else {
                return Err(syntax(start + 1, format!("expected `key=value` in `{}`", clause.trim())));
            };
            let key = key.trim();
            if !is_word(key) {
                return Err(syntax(start + 1, format!("bad key `{key}`")));
            }
            if entries.contains_key(key) {
                return Err(syntax(start + 1, format!("key `{key}` given twice")));
            }
            let mut parsed = Vec::new();
            let mut col = start + clause.find('=').unwrap_or(0) + 2;
            for raw in values.split(',') {
                let at = col + (raw.len() - raw.trim_start().len());
                col += raw.len() + 1;
                parsed.push(parse_value(raw.trim(), at)?);
            }
            entries.insert(key.to_string(), parsed);
        }
        Ok(Params { entries })
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Integer values with ranges expanded, in the order given.
    pub fn ints(&self, key: &str) -> Result<Option<Vec<u64>>> {
        let Some(values) = self.entries.get(key) else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for v in values {
            match v {
                Value::Int(n) => out.push(*n),
                Value::Range(a, b) => {
                    if b - a > 1_000_000 {
                        return Err(Error::malformed(key, format!("range {a}..{b} is too long")));
                    }
                    out.extend(*a..=*b)
                }
                Value::Word(w) => return Err(Error::malformed(key, format!("expected an integer, got `{w}`"))),
            }
        }
        Ok(Some(out))
    }

    pub fn ints_or(&self, key: &str, default: &[u64]) -> Result<Vec<u64>> {
        Ok(self.ints(key)?.unwrap_or_else(|| default.to_vec()))
    }

    /// A single integer.
    pub fn int(&self, key: &str) -> Result<Option<u64>> {
        match self.ints(key)? {
            None => Ok(None),
            Some(v) if v.len() == 1 => Ok(Some(v[0])),
            Some(_) => Err(Error::malformed(key, "expected a single integer")),
        }
    }

    pub fn values(&self, key: &str) -> Option<&[Value]> {
        self.entries.get(key).map(Vec::as_slice)
    }

    pub fn words(&self, key: &str) -> Option<Vec<String>> {
        self.entries
            .get(key)
            .map(|values| values.iter().map(ToString::to_string).collect())
    }

    /// Rejects keys outside `allowed`.
    pub fn expect_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(Error::Unknown {
                kind: "parameter",
                name: k.to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn insert(&mut self, key: &str, values: Vec<Value>) {
        self.entries.insert(key.to_string(), values);
    }
}

/// Canonical form: keys sorted, values in the order given.
impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (k, vs)) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}=")?;
            for (j, v) in vs.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

pub fn parse_params(text: &str) -> Result<Params> {
    Params::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        let p = Params::parse("p=2,3; n=1..2;family=matrix-pattern").unwrap();
        assert_eq!(p.ints("p").unwrap(), Some(vec![2, 3]));
        assert_eq!(p.ints("n").unwrap(), Some(vec![1, 2]));
        assert_eq!(p.words("family"), Some(vec!["matrix-pattern".to_string()]));
        assert_eq!(p.to_string(), "family=matrix-pattern;n=1..2;p=2,3");
        assert_eq!(Params::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn errors_carry_columns() {
        match Params::parse("p=2;n=3..1") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Params::parse("p"), Err(Error::Syntax { column: 1, .. })));
        assert!(Params::parse("p=2;p=3").is_err());
        assert!(Params::parse("p=$").is_err());
    }

    #[test]
    fn empty_is_fine() {
        assert_eq!(Params::parse("").unwrap(), Params::default());
        assert_eq!(Params::parse(" ; ").unwrap().to_string(), "");
    }

    #[test]
    fn words_are_not_ints() {
        let p = Params::parse("p=abc").unwrap();
        assert!(p.ints("p").is_err());
    }
}
