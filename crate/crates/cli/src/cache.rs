//! Content-addressed report cache. The key hashes the canonical run
//! configuration together with the report schema and crate version; each
//! entry stores a hash of its payload and is ignored if the two disagree.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::report::{Report, SCHEMA};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    payload_sha256: String,
    payload: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$SEVERI_CACHE`, else `$XDG_CACHE_HOME/severi`, else `~/.cache/severi`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os("SEVERI_CACHE") {
            return Some(d.into());
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Path::new(&d).join("severi"));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("severi"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(config: &RunConfig) -> String {
        let canonical = serde_json::to_string(config).expect("config serializes");
        let tagged = format!("{SCHEMA}\n{}\n{canonical}", env!("CARGO_PKG_VERSION"));
        sha256_hex(tagged.as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached report, or `None` when absent, unreadable or corrupt.
    pub fn load(&self, config: &RunConfig) -> Option<Report> {
        let key = Self::key(config);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.key != key || sha256_hex(entry.payload.as_bytes()) != entry.payload_sha256 {
            return None;
        }
        let report: Report = serde_json::from_str(&entry.payload).ok()?;
        (report.schema == SCHEMA).then_some(report)
    }

    pub fn store(&self, config: &RunConfig, report: &Report) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = Self::key(config);
        let payload = report.to_json();
        let entry = Entry { key: key.clone(), payload_sha256: sha256_hex(payload.as_bytes()), payload };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&entry).expect("entry serializes"))?;
        fs::rename(&tmp, self.path(&key))
    }
}
