//! End-to-end orchestration: group construction → subgroup lattice →
//! character table → monomial vectors → Hilbert basis → classification,
//! with caching and optional thread-pool control.

use std::path::PathBuf;

use crate::cache::Cache;
use crate::chartab::{self, CharacterTable};
use crate::classify::{self, ClassificationReport};
use crate::data::{
    CharacterTableFile, ClassifyArtifact, MonomialDataFile, SubgroupClassEntry,
    SubgroupLatticeFile, SCHEMA_VERSION,
};
use crate::descriptor::GroupSpec;
use crate::error::Result;
use crate::group::PermGroup;
use crate::monoid;
use crate::subgroup::subgroup_conjugacy_classes;
use crate::{DEFAULT_SIZE_CAP, ENGINE_VERSION};

#[derive(Clone, Debug)]
pub struct Config {
    pub size_cap: u64,
    pub seed: u64,
    /// Thread count for the parallel stages; `None` uses the default pool.
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            size_cap: DEFAULT_SIZE_CAP,
            seed: 0,
            jobs: None,
            cache_dir: None,
        }
    }
}

pub struct Pipeline {
    pub config: Config,
}

impl Pipeline {
    pub fn new(config: Config) -> Pipeline {
        Pipeline { config }
    }

    fn with_pool<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.config.jobs {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }

    /// Monomial data for a descriptor, consulted from cache when possible.
    pub fn monomial_data(&self, spec: &GroupSpec) -> Result<MonomialDataFile> {
        let descriptor = spec.render();
        let key = Cache::key(&descriptor, self.config.size_cap);
        let cache = self.config.cache_dir.as_ref().map(Cache::new);
        if let Some(cache) = &cache {
            if let Some(hit) = cache.load(&key, &descriptor) {
                return Ok(hit);
            }
        }
        let (monomial, lattice, table) = self.compute(spec, &descriptor)?;
        if let Some(cache) = &cache {
            cache.store(&key, &monomial, &lattice, &table)?;
        }
        Ok(monomial)
    }

    fn compute(
        &self,
        spec: &GroupSpec,
        descriptor: &str,
    ) -> Result<(MonomialDataFile, SubgroupLatticeFile, CharacterTableFile)> {
        let group = spec.build(self.config.size_cap)?;
        let seed = self.config.seed;
        let (table, classes, vectors, basis) =
            self.with_pool(|| -> Result<_> {
                let table = chartab::character_table(&group, seed)?;
                let classes = subgroup_conjugacy_classes(&group);
                let vectors = monoid::monomial_vectors(&group, &table, &classes)?;
                let basis = monoid::hilbert_basis(&vectors.raw_vectors());
                Ok((table, classes, vectors, basis))
            })?;

        let monomial = MonomialDataFile {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            descriptor: descriptor.to_string(),
            seed,
            group_order: group.order(),
            r: table.r(),
            degrees: table.degrees.clone(),
            class_sizes: table.class_sizes.clone(),
            class_element_orders: table.class_orders.clone(),
            prime: table.prime,
            unity: table.unity,
            subgroup_class_count: classes.len(),
            vectors: vectors.vectors,
            hilbert_basis: basis,
            digest: String::new(),
        }
        .seal();

        let lattice = SubgroupLatticeFile {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            descriptor: descriptor.to_string(),
            classes: classes
                .iter()
                .map(|c| SubgroupClassEntry {
                    order: c.order,
                    class_length: c.class_length,
                    generators: c
                        .representative
                        .generators()
                        .iter()
                        .map(|p| p.cycle_string())
                        .collect(),
                })
                .collect(),
        };
        let table_file = table_to_file(&table, descriptor);
        Ok((monomial, lattice, table_file))
    }

    /// Full classification of a descriptor's group.
    pub fn classify(&self, spec: &GroupSpec) -> Result<(ClassifyArtifact, MonomialDataFile)> {
        let data = self.monomial_data(spec)?;
        let report = self.classify_data(&data)?;
        Ok((report, data))
    }

    /// Classification from already-computed (or imported) monomial data.
    pub fn classify_data(&self, data: &MonomialDataFile) -> Result<ClassifyArtifact> {
        let report: ClassificationReport =
            self.with_pool(|| classify::classify(&data.hilbert_basis, data.r))?;
        Ok(ClassifyArtifact {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            descriptor: data.descriptor.clone(),
            seed: data.seed,
            group_order: data.group_order,
            report,
        })
    }

    /// Builds just the group (for inspection commands).
    pub fn build_group(&self, spec: &GroupSpec) -> Result<PermGroup> {
        spec.build(self.config.size_cap)
    }
}

fn table_to_file(table: &CharacterTable, descriptor: &str) -> CharacterTableFile {
    CharacterTableFile {
        schema_version: SCHEMA_VERSION,
        engine_version: ENGINE_VERSION.to_string(),
        descriptor: descriptor.to_string(),
        order: table.order,
        exponent: table.exponent,
        prime: table.prime,
        unity: table.unity,
        seed: table.seed,
        degrees: table.degrees.clone(),
        values: table.values.clone(),
        class_sizes: table.class_sizes.clone(),
        class_orders: table.class_orders.clone(),
        inverse_class: table.inverse_class.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::parse_group_spec;

    #[test]
    fn abelian_group_is_monomial() {
        let pipeline = Pipeline::new(Config::default());
        let spec = parse_group_spec("Cyclic(6)").unwrap();
        let (artifact, data) = pipeline.classify(&spec).unwrap();
        assert_eq!(data.r, 6);
        assert!(artifact.report.flags.monomial);
        assert!(artifact.report.flags.nam);
        assert!(artifact.report.flags.wam);
        assert!(artifact.report.flags.bam);
        // All unit vectors present among the monomial vectors.
        for i in 0..6 {
            let unit: Vec<u32> = (0..6).map(|j| u32::from(i == j)).collect();
            assert!(data.vectors.iter().any(|t| t.vector == unit));
        }
    }

    #[test]
    fn trivial_group_pipeline() {
        let pipeline = Pipeline::new(Config::default());
        let spec = parse_group_spec("Cyclic(1)").unwrap();
        let (artifact, data) = pipeline.classify(&spec).unwrap();
        assert_eq!(data.r, 1);
        assert_eq!(data.hilbert_basis, vec![vec![1]]);
        assert!(artifact.report.flags.monomial);
    }

    #[test]
    fn sym3_is_monomial() {
        let pipeline = Pipeline::new(Config::default());
        let spec = parse_group_spec("Sym(3)").unwrap();
        let (artifact, data) = pipeline.classify(&spec).unwrap();
        assert!(artifact.report.flags.monomial, "basis {:?}", data.hilbert_basis);
    }
}
