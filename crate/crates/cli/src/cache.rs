//! Per-prime point-count cache: `<dir>/<curve hash>/<p>.json`.
//!
//! Entries are written to a temporary file and renamed into place, so a
//! reader sees either nothing or a complete entry. Unreadable or mismatched
//! entries are treated as misses and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Entry {
    curve: String,
    p: u64,
    counts: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct CountCache {
    dir: PathBuf,
    curve: String,
}

impl CountCache {
    pub fn open(root: &Path, curve_hash: &str) -> std::io::Result<Self> {
        let dir = root.join(curve_hash);
        fs::create_dir_all(&dir)?;
        Ok(CountCache { dir, curve: curve_hash.to_string() })
    }

    fn path(&self, p: u64) -> PathBuf {
        self.dir.join(format!("{p}.json"))
    }

    /// Cached `N_1 .. N_g`, if present and well formed.
    pub fn get(&self, p: u64, genus: usize) -> Option<Vec<u64>> {
        let text = fs::read_to_string(self.path(p)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.curve == self.curve && entry.p == p && entry.counts.len() == genus).then_some(entry.counts)
    }

    pub fn put(&self, p: u64, counts: &[u64]) -> std::io::Result<()> {
        let entry = Entry { curve: self.curve.clone(), p, counts: counts.to_vec() };
        let tmp = self.dir.join(format!(".{p}.{}.tmp", std::process::id()));
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(serde_json::to_string(&entry).expect("plain data").as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, self.path(p))
    }
}
