//! Append-only persistent cache for computed coefficients, one JSON
//! object per line, keyed by the sorted tuple of partitions.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Serialize, Deserialize)]
struct CacheLine {
    key: Vec<Vec<u32>>,
    value: String,
}

/// In-memory map with an optional append-only backing file. Writers are
/// serialized through the mutex; lookups hit only the map.
#[derive(Debug, Default)]
pub struct CoefficientCache {
    inner: Mutex<CacheInner>,
}

#[derive(Debug, Default)]
struct CacheInner {
    map: HashMap<Vec<Vec<u32>>, BigInt>,
    file: Option<File>,
    path: Option<PathBuf>,
}

/// Canonical key: the partitions sorted (they all share one size, so any
/// total order works; lexicographic on parts).
pub fn cache_key(parts: &[Partition]) -> Vec<Vec<u32>> {
    let mut key: Vec<Vec<u32>> = parts.iter().map(|p| p.parts().to_vec()).collect();
    key.sort();
    key
}

impl CoefficientCache {
    /// Purely in-memory cache.
    pub fn in_memory() -> Self {
        CoefficientCache::default()
    }

    /// Cache backed by a JSON-lines file; existing lines are loaded,
    /// later inserts are appended. Malformed lines are a parse error.
    pub fn open(path: &Path) -> Result<Self> {
        let mut map = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (no, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: CacheLine = serde_json::from_str(&line).map_err(|e| {
                    Error::Parse(format!("cache line {}: {e}", no + 1))
                })?;
                let value: BigInt = parsed
                    .value
                    .parse()
                    .map_err(|_| Error::Parse(format!("cache line {}: bad value", no + 1)))?;
                map.insert(parsed.key, value);
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(CoefficientCache {
            inner: Mutex::new(CacheInner {
                map,
                file: Some(file),
                path: Some(path.to_path_buf()),
            }),
        })
    }

    pub fn path(&self) -> Option<PathBuf> {
        self.inner.lock().unwrap().path.clone()
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &[Vec<u32>]) -> Option<BigInt> {
        self.inner.lock().unwrap().map.get(key).cloned()
    }

    /// Insert and append to the backing file. Re-inserting an existing
    /// key is a no-op (the first stored value wins; the caller computes
    /// deterministically, so values agree).
    pub fn put(&self, key: Vec<Vec<u32>>, value: &BigInt) -> Result<()> {
        let mut inner = self.inner.lock().unwrap();
        if inner.map.contains_key(&key) {
            return Ok(());
        }
        if let Some(file) = inner.file.as_mut() {
            let line = serde_json::to_string(&CacheLine {
                key: key.clone(),
                value: value.to_string(),
            })
            .map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(file, "{line}")?;
        }
        inner.map.insert(key, value.clone());
        Ok(())
    }

    /// Flush and fsync the backing file, if any.
    pub fn sync(&self) -> Result<()> {
        let mut inner = self.inner.lock().unwrap();
        if let Some(file) = inner.file.as_mut() {
            file.flush()?;
            file.sync_all()?;
        }
        Ok(())
    }
}

impl Drop for CoefficientCache {
    fn drop(&mut self) {
        let _ = self.sync();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(parts: &[&[u32]]) -> Vec<Vec<u32>> {
        cache_key(
            &parts
                .iter()
                .map(|p| Partition::new(p.to_vec()).unwrap())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn key_is_order_independent() {
        assert_eq!(key(&[&[2, 1], &[3]]), key(&[&[3], &[2, 1]]));
    }

    #[test]
    fn in_memory_roundtrip() {
        let c = CoefficientCache::in_memory();
        let k = key(&[&[2, 2], &[2, 2], &[2, 2]]);
        assert!(c.get(&k).is_none());
        c.put(k.clone(), &BigInt::from(1)).unwrap();
        assert_eq!(c.get(&k), Some(BigInt::from(1)));
        // duplicate put keeps the first value
        c.put(k.clone(), &BigInt::from(99)).unwrap();
        assert_eq!(c.get(&k), Some(BigInt::from(1)));
    }

    #[test]
    fn file_backed_roundtrip() {
        let dir = std::env::temp_dir().join(format!("ti-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.jsonl");
        let _ = std::fs::remove_file(&path);
        let k = key(&[&[3, 1], &[2, 2], &[2, 1, 1]]);
        {
            let c = CoefficientCache::open(&path).unwrap();
            c.put(k.clone(), &BigInt::from(42)).unwrap();
            c.sync().unwrap();
        }
        let c2 = CoefficientCache::open(&path).unwrap();
        assert_eq!(c2.get(&k), Some(BigInt::from(42)));
        assert_eq!(c2.len(), 1);
        std::fs::remove_file(&path).unwrap();
    }
}
