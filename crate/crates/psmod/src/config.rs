//! Run configuration from a flat `key = value` file, overridden by command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use psmod_core::rootsys::CartanType;
use psmod_core::suites::SuiteConfig;

pub const DEFAULT_OUT: &str = "psmod-report.json";

/// Keys accepted in a config file.
pub const KEYS: [&str; 8] = ["type", "q", "char", "seed", "out", "threads", "allow-defining-char", "verification-mode"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub suite: SuiteConfig,
    pub out: PathBuf,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig { suite: SuiteConfig::default(), out: PathBuf::from(DEFAULT_OUT), threads: 0 }
    }
}

/// Parse `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| ConfigError(format!("line {}: expected key = value", no + 1)))?;
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError(format!("line {}: unknown key {key:?}", no + 1)));
        }
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(ConfigError(format!("line {}: duplicate key {key:?}", no + 1)));
        }
    }
    Ok(out)
}

pub fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| ConfigError(format!("{key}: bad value {s:?}: {e}"))))
        .collect()
}

pub fn parse_types(value: &str) -> Result<Vec<CartanType>, ConfigError> {
    parse_list("type", value)
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(ConfigError(format!("{key}: expected true or false, got {value:?}"))),
    }
}

impl RunConfig {
    pub fn apply_pairs(&mut self, pairs: &BTreeMap<String, String>) -> Result<(), ConfigError> {
        for (k, v) in pairs {
            match k.as_str() {
                "type" => self.suite.types = parse_types(v)?,
                "q" => self.suite.qs = parse_list(k, v)?,
                "char" => self.suite.chars = parse_list(k, v)?,
                "seed" => self.suite.seed = v.parse().map_err(|e| ConfigError(format!("seed: {e}")))?,
                "out" => self.out = PathBuf::from(v),
                "threads" => self.threads = v.parse().map_err(|e| ConfigError(format!("threads: {e}")))?,
                "allow-defining-char" => self.suite.allow_defining_char = parse_bool(k, v)?,
                "verification-mode" => self.suite.verification_mode = parse_bool(k, v)?,
                _ => return Err(ConfigError(format!("unknown key {k:?}"))),
            }
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        cfg.apply_pairs(&parse_pairs(&text)?)?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let text = "# grid\ntype = A2, B2\nq = 2,3\nchar=0\nseed = 9\nallow_defining_char = yes\n\n";
        let mut cfg = RunConfig::default();
        cfg.apply_pairs(&parse_pairs(text).unwrap()).unwrap();
        assert_eq!(cfg.suite.types, vec![CartanType::A(2), CartanType::B2]);
        assert_eq!(cfg.suite.qs, vec![2, 3]);
        assert_eq!(cfg.suite.chars, vec![0]);
        assert_eq!(cfg.suite.seed, 9);
        assert!(cfg.suite.allow_defining_char);
        assert!(!cfg.suite.verification_mode);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_pairs("type A2").is_err());
        assert!(parse_pairs("colour = red").is_err());
        assert!(parse_pairs("q = 2\nq = 3").is_err());
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_pairs(&parse_pairs("type = X9").unwrap()).is_err());
        assert!(cfg.apply_pairs(&parse_pairs("verification-mode = maybe").unwrap()).is_err());
    }
}
