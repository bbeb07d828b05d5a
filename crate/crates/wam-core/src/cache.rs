//! Disk cache for pipeline intermediates, keyed by descriptor, size cap and
//! engine version.
//!
//! Layout: one directory per key holding `subgroups.json`, `chartab.json`
//! and `monomial.json`. The monomial file is the one consulted on load (it
//! subsumes the others for classification and the order calculus); the
//! lattice and table files are written alongside for inspection. Corrupt or
//! stale entries fail digest/version checks and trigger recomputation.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::data::{
    engine_matches, import_monomial_data, write_json, CharacterTableFile, MonomialDataFile,
    SubgroupLatticeFile,
};
use crate::error::Result;

pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Cache {
        Cache { root: root.into() }
    }

    /// Cache key: digest of descriptor, size cap and engine version.
    pub fn key(descriptor: &str, size_cap: u64) -> String {
        let mut hasher = Sha256::new();
        hasher.update(descriptor.as_bytes());
        hasher.update(size_cap.to_le_bytes());
        hasher.update(crate::ENGINE_VERSION.as_bytes());
        let digest = hasher.finalize();
        hex_prefix(&digest, 16)
    }

    pub fn entry_dir(&self, key: &str) -> PathBuf {
        self.root.join(key)
    }

    /// Loads a verified monomial data file, or `None` when absent, stale, or
    /// corrupt.
    pub fn load(&self, key: &str, descriptor: &str) -> Option<MonomialDataFile> {
        let path = self.entry_dir(key).join("monomial.json");
        if !path.exists() {
            return None;
        }
        match import_monomial_data(&path) {
            Ok(file)
                if engine_matches(&file.engine_version) && file.descriptor == descriptor =>
            {
                Some(file)
            }
            _ => None,
        }
    }

    pub fn store(
        &self,
        key: &str,
        monomial: &MonomialDataFile,
        lattice: &SubgroupLatticeFile,
        table: &CharacterTableFile,
    ) -> Result<()> {
        let dir = self.entry_dir(key);
        write_json(lattice, &dir.join("subgroups.json"))?;
        write_json(table, &dir.join("chartab.json"))?;
        write_json(monomial, &dir.join("monomial.json"))?;
        Ok(())
    }

    pub fn monomial_path(&self, key: &str) -> PathBuf {
        self.entry_dir(key).join("monomial.json")
    }
}

fn hex_prefix(digest: &[u8], bytes: usize) -> String {
    digest
        .iter()
        .take(bytes)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Convenience for paths like `Path::new("cache")`.
impl From<&Path> for Cache {
    fn from(p: &Path) -> Cache {
        Cache::new(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_depend_on_inputs() {
        let a = Cache::key("SL(2,3)", 10_000);
        let b = Cache::key("SL(2,3)", 20_000);
        let c = Cache::key("GL(2,3)", 10_000);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, Cache::key("SL(2,3)", 10_000));
        assert_eq!(a.len(), 32);
    }

    #[test]
    fn missing_entries_load_none() {
        let cache = Cache::new(std::env::temp_dir().join("wam-cache-test-none"));
        assert!(cache.load("deadbeef", "Sym(3)").is_none());
    }
}
