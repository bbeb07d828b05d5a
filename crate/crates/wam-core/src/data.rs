//! On-disk artifact formats: the monomial data file, subgroup lattice and
//! character table exports, and the classification report wrapper.
//!
//! All artifacts are JSON with stable field order; every monomial data file
//! carries a SHA-256 digest of its own content so that tampering and cache
//! corruption are detected on import.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classify::ClassificationReport;
use crate::error::{Error, Result};
use crate::monoid::TaggedVector;
use crate::ENGINE_VERSION;

pub const SCHEMA_VERSION: u32 = 1;

/// The complete monomial-character data of one group: enough to classify it
/// and to run the order calculus without recomputation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonomialDataFile {
    pub schema_version: u32,
    pub engine_version: String,
    pub descriptor: String,
    pub seed: u64,
    pub group_order: u64,
    pub r: usize,
    pub degrees: Vec<u64>,
    pub class_sizes: Vec<u64>,
    pub class_element_orders: Vec<u64>,
    pub prime: u64,
    pub unity: u64,
    pub subgroup_class_count: usize,
    pub vectors: Vec<TaggedVector>,
    pub hilbert_basis: Vec<Vec<u32>>,
    /// `sha256:<hex>` over the canonical serialization of all other fields.
    pub digest: String,
}

impl MonomialDataFile {
    pub fn compute_digest(&self) -> String {
        let mut copy = self.clone();
        copy.digest = String::new();
        let canonical = serde_json::to_string(&copy).expect("serializable");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        format!("sha256:{:x}", hasher.finalize())
    }

    pub fn seal(mut self) -> MonomialDataFile {
        self.digest = self.compute_digest();
        self
    }

    /// Schema and digest verification; run on every import and cache load.
    pub fn verify(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersionMismatch {
                expected: SCHEMA_VERSION,
                got: self.schema_version,
            });
        }
        let actual = self.compute_digest();
        if actual != self.digest {
            return Err(Error::DigestMismatch {
                claimed: self.digest.clone(),
                actual,
            });
        }
        Ok(())
    }

    pub fn raw_vectors(&self) -> Vec<Vec<u32>> {
        self.vectors.iter().map(|t| t.vector.clone()).collect()
    }
}

/// Subgroup lattice export: per class, the order, class length and a
/// generating set in cycle notation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupLatticeFile {
    pub schema_version: u32,
    pub engine_version: String,
    pub descriptor: String,
    pub classes: Vec<SubgroupClassEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupClassEntry {
    pub order: u64,
    pub class_length: u64,
    pub generators: Vec<String>,
}

/// Character table export in the modular encoding.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTableFile {
    pub schema_version: u32,
    pub engine_version: String,
    pub descriptor: String,
    pub order: u64,
    pub exponent: u64,
    pub prime: u64,
    pub unity: u64,
    pub seed: u64,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<u64>>,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
}

/// Classification report with provenance, as written by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyArtifact {
    pub schema_version: u32,
    pub engine_version: String,
    pub descriptor: String,
    pub seed: u64,
    pub group_order: u64,
    pub report: ClassificationReport,
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let body = serde_json::to_string_pretty(value)?;
    atomic_write(path, body.as_bytes())
}

/// Write-temp-then-rename so concurrent readers never see partial files.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Imports and verifies a monomial data file.
pub fn import_monomial_data(path: &Path) -> Result<MonomialDataFile> {
    let body = std::fs::read_to_string(path)?;
    let file: MonomialDataFile = serde_json::from_str(&body)?;
    file.verify()?;
    Ok(file)
}

pub fn export_monomial_data(file: &MonomialDataFile, path: &Path) -> Result<()> {
    write_json(file, path)
}

/// True when the file was produced by this engine version.
pub fn engine_matches(version: &str) -> bool {
    version == ENGINE_VERSION
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MonomialDataFile {
        MonomialDataFile {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            descriptor: "Cyclic(2)".into(),
            seed: 0,
            group_order: 2,
            r: 2,
            degrees: vec![1, 1],
            class_sizes: vec![1, 1],
            class_element_orders: vec![1, 2],
            prime: 5,
            unity: 4,
            subgroup_class_count: 2,
            vectors: vec![TaggedVector {
                vector: vec![1, 0],
                subgroup_class: 1,
                linear_index: 0,
                subgroup_order: 2,
            }],
            hilbert_basis: vec![vec![0, 1], vec![1, 0]],
            digest: String::new(),
        }
        .seal()
    }

    #[test]
    fn digest_roundtrip_and_tamper_detection() {
        let file = sample();
        assert!(file.verify().is_ok());
        let mut tampered = file.clone();
        tampered.hilbert_basis[0][0] = 9;
        assert!(matches!(
            tampered.verify(),
            Err(Error::DigestMismatch { .. })
        ));
        let mut wrong_schema = file;
        wrong_schema.schema_version = 99;
        assert!(matches!(
            wrong_schema.verify(),
            Err(Error::SchemaVersionMismatch { .. })
        ));
    }

    #[test]
    fn export_import_is_lossless() {
        let dir = std::env::temp_dir().join(format!("wam-data-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sample.json");
        let file = sample();
        export_monomial_data(&file, &path).unwrap();
        let back = import_monomial_data(&path).unwrap();
        assert_eq!(file, back);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
