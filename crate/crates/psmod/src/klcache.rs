//! On-disk Kazhdan-Lusztig tables: one JSON file per type, entries keyed by the reduced-word
//! strings of `y` and `w`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use psmod_core::coxeter::WeylGroup;
use psmod_core::kl::KLTable;
use psmod_core::rootsys::CartanType;
use serde::{Deserialize, Serialize};

use crate::run::write_atomic;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "PSMOD_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".psmod-cache";
pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlCacheFile {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub order: usize,
    /// `entries[y][w]` holds the coefficients of `P_{y,w}`, low degree first, for `y <= w`.
    pub entries: BTreeMap<String, BTreeMap<String, Vec<i64>>>,
}

#[derive(Debug)]
pub enum CacheError {
    Io(String),
    Table(String),
    Missing(PathBuf),
    Corrupt(String),
    /// First pair whose stored polynomial disagrees with a fresh computation.
    Mismatch {
        y: String,
        w: String,
        stored: Option<Vec<i64>>,
        computed: Option<Vec<i64>>,
    },
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) | CacheError::Table(e) => f.write_str(e),
            CacheError::Missing(p) => write!(f, "no cache file at {}", p.display()),
            CacheError::Corrupt(e) => write!(f, "unreadable cache file: {e}"),
            CacheError::Mismatch { y, w, stored, computed } => {
                write!(f, "mismatch at (y, w) = ({y}, {w}): stored {stored:?}, computed {computed:?}")
            }
        }
    }
}

impl std::error::Error for CacheError {}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

pub fn cache_path(dir: &Path, t: CartanType) -> PathBuf {
    dir.join(format!("kl-{t}.json"))
}

fn compute(t: CartanType) -> Result<KlCacheFile, CacheError> {
    let weyl = WeylGroup::of_type(t).map_err(|e| CacheError::Table(e.to_string()))?;
    let table = KLTable::new(&weyl).map_err(|e| CacheError::Table(e.to_string()))?;
    let el = table.elements();
    let mut entries: BTreeMap<String, BTreeMap<String, Vec<i64>>> = BTreeMap::new();
    for (y, w, p) in table.entries() {
        if el.bruhat_leq(y, w) {
            entries.entry(el.get(y).word_string()).or_default().insert(el.get(w).word_string(), p.to_vec());
        }
    }
    Ok(KlCacheFile { schema_version: CACHE_SCHEMA_VERSION, cartan_type: t.to_string(), order: el.len(), entries })
}

pub fn build(dir: &Path, t: CartanType) -> Result<PathBuf, CacheError> {
    let file = compute(t)?;
    std::fs::create_dir_all(dir).map_err(|e| CacheError::Io(format!("{}: {e}", dir.display())))?;
    let path = cache_path(dir, t);
    let mut json = serde_json::to_string_pretty(&file).expect("serializable");
    json.push('\n');
    write_atomic(&path, json.as_bytes()).map_err(|e| CacheError::Io(e.to_string()))?;
    Ok(path)
}

pub fn load(dir: &Path, t: CartanType) -> Result<KlCacheFile, CacheError> {
    let path = cache_path(dir, t);
    if !path.exists() {
        return Err(CacheError::Missing(path));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| CacheError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CacheError::Corrupt(e.to_string()))
}

/// Recompute the table and compare. Returns the number of entries on success.
pub fn verify(dir: &Path, t: CartanType) -> Result<usize, CacheError> {
    let stored = load(dir, t)?;
    let fresh = compute(t)?;
    if stored.schema_version != CACHE_SCHEMA_VERSION || stored.cartan_type != fresh.cartan_type {
        return Err(CacheError::Corrupt(format!(
            "header is (schema {}, type {}), expected (schema {CACHE_SCHEMA_VERSION}, type {})",
            stored.schema_version, stored.cartan_type, fresh.cartan_type
        )));
    }
    let lookup = |f: &KlCacheFile, y: &str, w: &str| f.entries.get(y).and_then(|m| m.get(w)).cloned();
    let mut count = 0;
    for (y, row) in &fresh.entries {
        for (w, p) in row {
            let s = lookup(&stored, y, w);
            if s.as_ref() != Some(p) {
                return Err(CacheError::Mismatch { y: y.clone(), w: w.clone(), stored: s, computed: Some(p.clone()) });
            }
            count += 1;
        }
    }
    for (y, row) in &stored.entries {
        for (w, p) in row {
            if lookup(&fresh, y, w).is_none() {
                return Err(CacheError::Mismatch {
                    y: y.clone(),
                    w: w.clone(),
                    stored: Some(p.clone()),
                    computed: None,
                });
            }
        }
    }
    Ok(count)
}

/// Remove the file for `t`, or every table file when `t` is `None`. Returns how many were removed.
pub fn clear(dir: &Path, t: Option<CartanType>) -> Result<usize, CacheError> {
    let io = |e: std::io::Error| CacheError::Io(format!("{}: {e}", dir.display()));
    let targets: Vec<PathBuf> = match t {
        Some(t) => vec![cache_path(dir, t)],
        None => match std::fs::read_dir(dir) {
            Ok(rd) => rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("kl-") && n.ends_with(".json"))
                })
                .collect(),
            Err(_) => Vec::new(),
        },
    };
    let mut removed = 0;
    for p in targets {
        if p.exists() {
            std::fs::remove_file(&p).map_err(io)?;
            removed += 1;
        }
    }
    Ok(removed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_verify_tamper_clear() {
        let dir = tempfile::tempdir().unwrap();
        let t = CartanType::A(2);
        let path = build(dir.path(), t).unwrap();
        // every Bruhat-comparable pair of the six elements
        assert_eq!(verify(dir.path(), t).unwrap(), 19);
        let text = std::fs::read_to_string(&path).unwrap();
        let mut file: KlCacheFile = serde_json::from_str(&text).unwrap();
        file.entries.get_mut("1").unwrap().insert(String::from("1-2-1"), vec![1, 1]);
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        match verify(dir.path(), t) {
            Err(CacheError::Mismatch { y, w, .. }) => assert_eq!((y.as_str(), w.as_str()), ("1", "1-2-1")),
            other => panic!("{other:?}"),
        }
        assert_eq!(clear(dir.path(), None).unwrap(), 1);
        assert!(matches!(verify(dir.path(), t), Err(CacheError::Missing(_))));
    }
}
