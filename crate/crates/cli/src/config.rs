//! Flat `key = value` configuration.
//!
//! Every experiment starts from its own table of defaults. A config file and
//! then command-line flags override entries; keys the experiment does not
//! know are rejected. Values are kept as the strings the user wrote so the
//! resolved table can be echoed into the report verbatim.

use std::collections::BTreeMap;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; keys may use `-` or `_`.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {}: expected `key = value`, got `{line}`", n + 1)));
        };
        let key = normalize_key(k);
        let value = v.trim();
        if key.is_empty() || value.is_empty() {
            return Err(CliError::Config(format!("line {}: empty key or value", n + 1)));
        }
        if out.insert(key.clone(), value.to_string()).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key `{key}`", n + 1)));
        }
    }
    Ok(out)
}

pub fn normalize_key(k: &str) -> String {
    k.trim().replace('-', "_")
}

impl Config {
    pub fn from_defaults<K: Into<String>, V: Into<String>>(defaults: impl IntoIterator<Item = (K, V)>) -> Self {
        Config { values: defaults.into_iter().map(|(k, v)| (k.into(), v.into())).collect() }
    }

    /// Overrides known keys; an unknown key is a config error.
    pub fn apply(&mut self, overrides: &BTreeMap<String, String>) -> Result<(), CliError> {
        for (k, v) in overrides {
            match self.values.get_mut(k) {
                Some(slot) => *slot = v.clone(),
                None => {
                    let known: Vec<&str> = self.values.keys().map(String::as_str).collect();
                    return Err(CliError::Config(format!("unknown key `{k}`; known keys: {}", known.join(", "))));
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.values.get(key).map(String::as_str).ok_or_else(|| CliError::Config(format!("missing key `{key}`")))
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str, what: &str) -> Result<T, CliError> {
        let raw = self.raw(key)?;
        raw.parse().map_err(|_| CliError::Config(format!("`{key}` = `{raw}` is not {what}")))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let v: f64 = self.parsed(key, "a number")?;
        if !v.is_finite() {
            return Err(CliError::Config(format!("`{key}` must be finite")));
        }
        Ok(v)
    }

    pub fn u64(&self, key: &str) -> Result<u64, CliError> {
        self.parsed(key, "a nonnegative integer")
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        self.parsed(key, "a nonnegative integer")
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        self.parsed(key, "`true` or `false`")
    }

    /// Comma-separated list of numbers.
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let raw = self.raw(key)?;
        raw.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Config(format!("`{key}` = `{raw}` is not a list of numbers")))
            })
            .collect()
    }

    /// Number of trials, at least one.
    pub fn trials(&self) -> Result<u64, CliError> {
        let n = self.u64("trials")?;
        if n == 0 {
            return Err(CliError::Config("`trials` must be positive".into()));
        }
        Ok(n)
    }
}
