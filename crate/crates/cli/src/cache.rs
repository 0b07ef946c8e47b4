//! Content-addressed on-disk store of check results.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::checks::{Check, CheckResult, Status};

/// Bump when check semantics change so stale entries are ignored.
const CACHE_VERSION: &str = "binedge-results-v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O at {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt cache entry {path}: {source}")]
    Corrupt { path: PathBuf, source: serde_json::Error },
}

pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| CacheError::Io { path: dir.clone(), source })?;
        Ok(ResultCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex SHA-256 of (version, prime, check, canonical graph).
    pub fn key(graph_id: &str, prime: u32, check: Check) -> String {
        let mut hasher = Sha256::new();
        for part in [CACHE_VERSION, &prime.to_string(), check.name(), graph_id] {
            hasher.update(part.as_bytes());
            hasher.update([0u8]);
        }
        hex::encode(hasher.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Result<Option<CheckResult>, CacheError> {
        let path = self.path(key);
        match fs::read(&path) {
            Ok(bytes) => serde_json::from_slice(&bytes).map(Some).map_err(|source| CacheError::Corrupt { path, source }),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(source) => Err(CacheError::Io { path, source }),
        }
    }

    /// Stores `result` unless it reflects an exhausted budget.
    pub fn put(&self, key: &str, result: &CheckResult) -> Result<(), CacheError> {
        if result.status == Status::EnvelopeExceeded {
            return Ok(());
        }
        let path = self.path(key);
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        let bytes = serde_json::to_vec(result).expect("result serializes");
        fs::write(&tmp, bytes).map_err(|source| CacheError::Io { path: tmp.clone(), source })?;
        fs::rename(&tmp, &path).map_err(|source| CacheError::Io { path, source })
    }

    /// Cached result for `(graph, prime, check)`, computing and storing it on
    /// a miss.
    pub fn get_or_compute(
        &self,
        graph_id: &str,
        prime: u32,
        check: Check,
        compute: impl FnOnce() -> CheckResult,
    ) -> Result<CheckResult, CacheError> {
        let key = Self::key(graph_id, prime, check);
        if let Some(hit) = self.get(&key)? {
            return Ok(hit);
        }
        let result = compute();
        self.put(&key, &result)?;
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Map;

    fn sample(status: Status) -> CheckResult {
        CheckResult { graph: "Bw".into(), n: 3, check: Check::Smk, status, witness: Map::new(), runtime_ms: 7 }
    }

    #[test]
    fn keys_separate_primes_and_checks() {
        let a = ResultCache::key("Bw", 32003, Check::Smk);
        assert_eq!(a.len(), 64);
        assert_ne!(a, ResultCache::key("Bw", 2, Check::Smk));
        assert_ne!(a, ResultCache::key("Bw", 32003, Check::HibiMatsuda));
        assert_ne!(a, ResultCache::key("Bo", 32003, Check::Smk));
    }

    #[test]
    fn round_trip_and_envelope_skip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path()).unwrap();
        let r = cache.get_or_compute("Bw", 3, Check::Smk, || sample(Status::Holds)).unwrap();
        let again = cache.get_or_compute("Bw", 3, Check::Smk, || panic!("should hit")).unwrap();
        assert_eq!(r, again);
        cache.get_or_compute("Bw", 5, Check::Smk, || sample(Status::EnvelopeExceeded)).unwrap();
        assert!(cache.get(&ResultCache::key("Bw", 5, Check::Smk)).unwrap().is_none());
    }
}
