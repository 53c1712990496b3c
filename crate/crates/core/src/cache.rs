//! Content-addressed cache of command results.
//!
//! Each entry is a JSON file named by the SHA-256 of its key and stamped
//! with a schema tag; entries with another tag or key are ignored. Files
//! are written to a temporary name and renamed into place, so concurrent
//! writers never expose a partial entry.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

/// Bumped whenever the format of any cached output changes.
pub const SCHEMA: &str = "plethysm-cache-v1";

pub const CACHE_DIR_VAR: &str = "PLETHYSM_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema: String,
    pub key: String,
    /// Seconds since the Unix epoch.
    pub created: u64,
    pub code: i32,
    pub stdout: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$PLETHYSM_CACHE_DIR`, else the user cache directory.
    pub fn from_env() -> Option<Self> {
        if let Some(dir) = std::env::var_os(CACHE_DIR_VAR) {
            return Some(Cache::new(dir));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))?;
        Some(Cache::new(base.join("plethysm")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(format!("{SCHEMA}\n{key}").as_bytes());
        self.dir.join(format!("{digest:x}.json"))
    }

    /// The stored entry for `key`, if present and current.
    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.schema == SCHEMA && entry.key == key).then_some(entry)
    }

    pub fn put(&self, key: &str, code: i32, stdout: &str) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            schema: SCHEMA.to_string(),
            key: key.to_string(),
            created: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            code,
            stdout: stdout.to_string(),
        };
        let mut file = tempfile::NamedTempFile::new_in(&self.dir)?;
        file.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        file.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
