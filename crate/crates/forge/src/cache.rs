//! Resumable search cache: newline-delimited JSON with a version header.
//! Stale-version or corrupt caches are ignored, not migrated. Writes go to a
//! temp file in the same directory and are renamed into place.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Header {
    version: u32,
    kind: String,
    n: usize,
}

/// One checkpoint: the verdict for a single colour count.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AfcnEntry {
    pub c: u32,
    pub colourable: bool,
    pub nodes: u64,
}

/// Per-n cache for the afcn search, keyed by colour count.
#[derive(Debug)]
pub struct AfcnCache {
    path: Option<PathBuf>,
    n: usize,
    entries: BTreeMap<u32, AfcnEntry>,
}

impl AfcnCache {
    /// Load (or start empty) the cache for grid width `n`. `dir = None`
    /// disables persistence.
    pub fn load(dir: Option<&Path>, n: usize) -> AfcnCache {
        let path = dir.map(|d| d.join(format!("afcn_n{n}.ndjson")));
        let mut entries = BTreeMap::new();
        if let Some(path) = &path {
            if let Ok(text) = fs::read_to_string(path) {
                let mut lines = text.lines();
                let header_ok = lines
                    .next()
                    .and_then(|l| serde_json::from_str::<Header>(l).ok())
                    .map(|h| h.version == CACHE_VERSION && h.kind == "afcn" && h.n == n)
                    .unwrap_or(false);
                if header_ok {
                    for line in lines {
                        if let Ok(e) = serde_json::from_str::<AfcnEntry>(line) {
                            entries.insert(e.c, e);
                        }
                    }
                }
            }
        }
        AfcnCache { path, n, entries }
    }

    pub fn get(&self, c: u32) -> Option<AfcnEntry> {
        self.entries.get(&c).copied()
    }

    pub fn put(&mut self, entry: AfcnEntry) -> std::io::Result<()> {
        self.entries.insert(entry.c, entry);
        self.save()
    }

    fn save(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension("ndjson.tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            let header = Header {
                version: CACHE_VERSION,
                kind: "afcn".to_string(),
                n: self.n,
            };
            writeln!(f, "{}", serde_json::to_string(&header)?)?;
            for e in self.entries.values() {
                writeln!(f, "{}", serde_json::to_string(e)?)?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, path)
    }
}

/// Resolve the cache directory: explicit flag, then ANAGRAM_FORGE_CACHE,
/// then disabled.
pub fn resolve_cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("ANAGRAM_FORGE_CACHE").map(PathBuf::from))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_stale_version() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = AfcnCache::load(Some(dir.path()), 3);
        assert!(cache.get(2).is_none());
        cache
            .put(AfcnEntry {
                c: 2,
                colourable: false,
                nodes: 17,
            })
            .unwrap();
        let cache = AfcnCache::load(Some(dir.path()), 3);
        assert!(!cache.get(2).unwrap().colourable);
        // A different n ignores this file entirely.
        let other = AfcnCache::load(Some(dir.path()), 4);
        assert!(other.get(2).is_none());
        // Corrupt the header: cache is ignored.
        let path = dir.path().join("afcn_n3.ndjson");
        std::fs::write(&path, "{\"version\":99,\"kind\":\"afcn\",\"n\":3}\n").unwrap();
        let cache = AfcnCache::load(Some(dir.path()), 3);
        assert!(cache.get(2).is_none());
    }
}
