//! Flat key=value experiment configuration: one key per line, `#` comments,
//! no nesting. Unknown and duplicate keys are errors so a typo cannot
//! silently fall back to a default.

use std::collections::BTreeMap;
use std::path::Path;

use twotone_core::Error;

#[derive(Clone, Debug, Default)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, Error> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidParam(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(Error::InvalidParam(format!(
                    "config line {}: empty key",
                    lineno + 1
                )));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(Error::InvalidParam(format!("duplicate config key `{key}`")));
            }
        }
        Ok(Config { entries })
    }

    pub fn from_file(path: &Path) -> Result<Config, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidParam(format!("cannot read config {}: {e}", path.display()))
        })?;
        Config::parse(&text)
    }

    /// Reject keys outside the experiment's schema.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), Error> {
        for key in self.entries.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::InvalidParam(format!(
                    "unknown config key `{key}` (allowed: {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }

    pub fn get_str(&self, key: &str) -> Result<&str, Error> {
        self.entries
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidParam(format!("missing config key `{key}`")))
    }

    pub fn get_f64(&self, key: &str) -> Result<f64, Error> {
        self.get_str(key)?.parse().map_err(|_| {
            Error::InvalidParam(format!("config key `{key}` is not a number"))
        })
    }

    pub fn get_usize(&self, key: &str) -> Result<usize, Error> {
        self.get_str(key)?.parse().map_err(|_| {
            Error::InvalidParam(format!("config key `{key}` is not a non-negative integer"))
        })
    }

    pub fn get_f64_or(&self, key: &str, default: f64) -> Result<f64, Error> {
        match self.entries.get(key) {
            Some(_) => self.get_f64(key),
            None => Ok(default),
        }
    }

    pub fn get_usize_or(&self, key: &str, default: usize) -> Result<usize, Error> {
        match self.entries.get(key) {
            Some(_) => self.get_usize(key),
            None => Ok(default),
        }
    }

    /// Override or insert a key (CLI flags beat the file).
    pub fn set(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), value);
    }

    /// FNV-1a 64 over the canonical `key=value\n` lines in sorted key order,
    /// so the hash identifies the effective configuration independent of
    /// comments, ordering and whitespace.
    pub fn hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for (k, v) in &self.entries {
            for byte in k.bytes().chain(b"=".iter().copied()).chain(v.bytes()).chain(b"\n".iter().copied()) {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}
