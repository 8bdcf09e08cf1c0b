//! Persistent coefficient cache: one JSON file per key, written atomically.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Version string folded into every key, so entries never cross code versions.
pub const CODE_VERSION: &str =
    concat!(env!("CARGO_PKG_NAME"), "-", env!("CARGO_PKG_VERSION"), "-1");

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "RADEMACHER_CACHE_DIR";

/// A cached coefficient value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub query: String,
    pub value_re: f64,
    pub value_im: f64,
    pub tail_estimate: f64,
    pub c_max: i64,
    pub sigma_p: String,
    pub sigma_q: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lookup {
    Hit(CacheEntry),
    Miss,
    /// The file exists but cannot be used; the reason is attached.
    Corrupt(String),
}

/// Stable hex key for a query description and code version.
pub fn cache_key(query: &str, version: &str) -> String {
    let mut h = Sha256::new();
    h.update(version.as_bytes());
    h.update([0u8]);
    h.update(query.as_bytes());
    hex::encode(h.finalize())
}

pub fn now_secs() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let text = match fs::read_to_string(self.path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(entry) if entry.key == key => Lookup::Hit(entry),
            Ok(entry) => Lookup::Corrupt(format!("entry holds key {}", entry.key)),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    /// Writes to a temporary file in the cache directory, then renames it into place.
    pub fn put(&self, entry: &CacheEntry) -> io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(&entry.key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Removes entries created more than `max_age_secs` before `now`, and unreadable entries.
    pub fn purge(&self, max_age_secs: u64, now: u64) -> io::Result<usize> {
        let mut removed = 0;
        for item in fs::read_dir(&self.dir)? {
            let path = item?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let stale = match fs::read_to_string(&path)
                .ok()
                .and_then(|t| serde_json::from_str::<CacheEntry>(&t).ok())
            {
                Some(entry) => now.saturating_sub(entry.created_at) > max_age_secs,
                None => true,
            };
            if stale {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}
