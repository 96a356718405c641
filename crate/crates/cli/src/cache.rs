//! Content-addressed store of computed reports.

use std::fs;
use std::path::PathBuf;

use log::{debug, warn};
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    /// Hex SHA-256 of the length-prefixed parts, so that no two part lists collide.
    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(concat!("gimel-", env!("CARGO_PKG_VERSION")).as_bytes());
        for p in parts {
            h.update((p.len() as u64).to_le_bytes());
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        debug!("cache hit {key}");
        Some(text)
    }

    /// Best effort: a failed write only loses the cache entry.
    pub fn put(&self, key: &str, value: &str) {
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        let res = fs::create_dir_all(&self.dir)
            .and_then(|_| fs::write(&tmp, value))
            .and_then(|_| fs::rename(&tmp, self.path(key)));
        if let Err(e) = res {
            warn!("could not write cache entry {key}: {e}");
        }
    }
}
