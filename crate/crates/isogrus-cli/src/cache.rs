//! On-disk cache of normalized products, keyed by rank and canonical word.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::render::TermRecord;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "ISOGRUS_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Entry {
    version: u32,
    key: String,
    n: usize,
    word: String,
    terms: Vec<TermRecord>,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(root: &Path) -> Cache {
        Cache { dir: root.join(format!("v{}", CACHE_VERSION)) }
    }

    pub fn from_env() -> Option<Cache> {
        std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(|d| Cache::new(Path::new(&d)))
    }

    pub fn key(n: usize, word: &str) -> String {
        let header = format!("isogrus-cache v{}\nn={}\n{}", CACHE_VERSION, n, word);
        hex::encode(Sha256::digest(header.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key))
    }

    /// A stored entry whose header matches; anything else is a miss.
    pub fn load(&self, n: usize, word: &str) -> Option<Vec<TermRecord>> {
        let key = Cache::key(n, word);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        (e.version == CACHE_VERSION && e.key == key && e.n == n && e.word == word).then_some(e.terms)
    }

    pub fn store(&self, n: usize, word: &str, terms: &[TermRecord]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = Cache::key(n, word);
        let e = Entry { version: CACHE_VERSION, key: key.clone(), n, word: word.into(), terms: terms.to_vec() };
        let tmp = self.dir.join(format!("{}.tmp", key));
        fs::write(&tmp, serde_json::to_string_pretty(&e)?)?;
        fs::rename(tmp, self.path(&key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        assert!(c.load(2, "L(uu,1-2)").is_none());
        let t = vec![TermRecord { lambda: "dd".into(), mu: "dd".into(), nu: "uu".into(), coeff: [1, 0] }];
        c.store(2, "L(uu,1-2)", &t).unwrap();
        assert_eq!(c.load(2, "L(uu,1-2)"), Some(t));
        assert!(c.load(3, "L(uu,1-2)").is_none());
        assert_eq!(Cache::key(2, "x").len(), 64);
    }
}
