//! On-disk result cache: one JSON document per key, named by the SHA-256 of
//! the key and sharded by its first two hex digits. Entries are written
//! once through a temporary file and an atomic rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dto::SCHEMA;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema: u32,
    pub tool_version: String,
    pub key: String,
    /// Seconds since the epoch; not part of any comparison.
    pub timestamp: u64,
    pub value: serde_json::Value,
}

impl CacheEntry {
    pub fn decode(bytes: &[u8]) -> Result<CacheEntry, serde_json::Error> {
        serde_json::from_slice(bytes)
    }

    pub fn encode(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("cache entries serialize")
    }

    /// Valid for `key` under the running tool version.
    pub fn is_current(&self, key: &str) -> bool {
        self.schema == SCHEMA && self.tool_version == TOOL_VERSION && self.key == key
    }
}

/// `op|canonical input|mode`
pub fn cache_key(op: &str, input: &str, mode: &str) -> String {
    format!("{op}|{input}|{mode}")
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    version: String,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None, version: TOOL_VERSION.to_string() }
    }

    /// Opens `dir`, creating it if needed; on failure prints a warning and
    /// returns a disabled cache.
    pub fn open(dir: &Path) -> Self {
        Self::open_with_version(dir, TOOL_VERSION)
    }

    pub fn open_with_version(dir: &Path, version: &str) -> Self {
        match fs::create_dir_all(dir) {
            Ok(()) => Cache { dir: Some(dir.to_path_buf()), version: version.to_string() },
            Err(e) => {
                eprintln!("warning: cache directory {} unusable ({e}); caching disabled", dir.display());
                Cache::disabled()
            }
        }
    }

    /// FLT_CACHE_DIR, else $XDG_CACHE_HOME/flt, else ~/.cache/flt.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os("FLT_CACHE_DIR") {
            return Some(PathBuf::from(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(PathBuf::from(d).join("flt"));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("flt"))
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let digest = hex::encode(Sha256::digest(format!("{SCHEMA}\0{key}").as_bytes()));
        Some(dir.join(&digest[..2]).join(format!("{digest}.json")))
    }

    pub fn get(&self, key: &str) -> Option<serde_json::Value> {
        let path = self.path_for(key)?;
        let bytes = fs::read(&path).ok()?;
        match CacheEntry::decode(&bytes) {
            Ok(e) if e.schema == SCHEMA && e.tool_version == self.version && e.key == key => Some(e.value),
            Ok(_) => None,
            Err(err) => {
                eprintln!("warning: ignoring corrupt cache entry {} ({err})", path.display());
                None
            }
        }
    }

    pub fn get_raw(&self, key: &str) -> Option<Vec<u8>> {
        fs::read(self.path_for(key)?).ok()
    }

    /// Stores `value` unless a current entry already exists. Failures are
    /// reported as warnings.
    pub fn put(&self, key: &str, value: &serde_json::Value) {
        let Some(path) = self.path_for(key) else { return };
        if self.get(key).is_some() {
            return;
        }
        let entry = CacheEntry {
            schema: SCHEMA,
            tool_version: self.version.clone(),
            key: key.to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            value: value.clone(),
        };
        if let Err(e) = write_atomic(&path, &entry.encode()) {
            eprintln!("warning: could not write cache entry {} ({e})", path.display());
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let parent = path.parent().expect("cache paths have a shard directory");
    fs::create_dir_all(parent)?;
    let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    // replaces stale or corrupt entries; readers always see a whole file
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
