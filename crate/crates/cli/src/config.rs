//! Optional key=value config files.
//!
//! Lines are `key = value`; blank lines and lines starting with `#` are
//! skipped. Keys may use `-` or `_`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{Context, Result};

use crate::usage;

pub const SEED_ENV: &str = "CWSOC_SEED";

const KNOWN_KEYS: [&str; 11] = [
    "n", "sigma", "sweeps", "burn_in", "thin", "chains", "seed", "proposal_scale", "out", "samples", "n_list",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key=value, got '{line}'", i + 1)))?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(usage(format!(
                    "config line {}: unknown key '{key}' (known: {})",
                    i + 1,
                    KNOWN_KEYS.join(", ")
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                Self::parse(&text)
            }
        }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| usage(format!("config key {key}: cannot parse '{raw}'"))),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// flag, else config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    /// Seed precedence: flag, config, CWSOC_SEED, 0.
    pub fn seed(&self, flag: Option<u64>) -> Result<u64> {
        if let Some(s) = flag {
            return Ok(s);
        }
        if let Some(s) = self.get("seed")? {
            return Ok(s);
        }
        env_seed().map(|s| s.unwrap_or(0))
    }
}

pub fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{SEED_ENV}='{raw}' is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

/// "5-30", "5,8,13" or a mix such as "5-8,12".
pub fn parse_n_list(raw: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || usage(format!("invalid n-list entry '{part}'"));
        if let Some((a, b)) = part.split_once('-') {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(usage("n-list is empty"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prefers_flags() {
        let c = ConfigFile::parse("# run\nn = 64\nburn-in=10\n\nsigma= 2.5\n").unwrap();
        assert_eq!(c.pick(None, "n", 1usize).unwrap(), 64);
        assert_eq!(c.pick(Some(8), "n", 1usize).unwrap(), 8);
        assert_eq!(c.pick(None, "burn_in", 0u64).unwrap(), 10);
        assert_eq!(c.pick(None, "thin", 3u64).unwrap(), 3);
        assert_eq!(c.pick(None, "sigma", 1.0).unwrap(), 2.5);
        assert_eq!(c.seed(Some(4)).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(ConfigFile::parse("nonsense").is_err());
        assert!(ConfigFile::parse("colour = red").is_err());
        let c = ConfigFile::parse("n = many").unwrap();
        assert!(c.get::<usize>("n").is_err());
    }

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("5-8").unwrap(), vec![5, 6, 7, 8]);
        assert_eq!(parse_n_list("32, 64,128").unwrap(), vec![32, 64, 128]);
        assert_eq!(parse_n_list("5-6,10").unwrap(), vec![5, 6, 10]);
        assert!(parse_n_list("").is_err());
        assert!(parse_n_list("9-5").is_err());
        assert!(parse_n_list("x").is_err());
    }
}
