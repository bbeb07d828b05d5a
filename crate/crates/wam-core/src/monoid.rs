//! The monoid generated by the monomial character vectors inside ℕʳ:
//! collection, membership with certificates, Hilbert basis, rank.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{class_fusion, induce_vector, CharacterTable};
use crate::error::Result;
use crate::group::PermGroup;
use crate::linchar::linear_characters;
use crate::subgroup::SubgroupClass;

/// An induced-character multiplicity vector together with one witnessing
/// (subgroup class, linear character) pair.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TaggedVector {
    pub vector: Vec<u32>,
    pub subgroup_class: usize,
    pub linear_index: usize,
    pub subgroup_order: u64,
}

/// The deduplicated set of all monomial character vectors of a group.
#[derive(Clone, Debug)]
pub struct MonomialVectorSet {
    pub r: usize,
    pub vectors: Vec<TaggedVector>,
}

/// Canonical vector order: by coordinate sum, then lexicographically.
pub fn canonical_vector_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let sa: u64 = a.iter().map(|&x| x as u64).sum();
    let sb: u64 = b.iter().map(|&x| x as u64).sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

/// Induces every linear character of every subgroup class and collects the
/// distinct multiplicity vectors. The witness recorded for a vector is the
/// first (class, character) pair producing it in canonical order.
pub fn monomial_vectors(
    g: &PermGroup,
    table: &CharacterTable,
    classes: &[SubgroupClass],
) -> Result<MonomialVectorSet> {
    let per_class: Vec<Result<Vec<(usize, Vec<u32>, u64)>>> = classes
        .par_iter()
        .enumerate()
        .map(|(ci, sc)| {
            let h = &sc.representative;
            let fusion = class_fusion(h, g)?;
            let lams = linear_characters(h);
            let mut out = Vec::with_capacity(lams.len());
            for (li, lam) in lams.iter().enumerate() {
                let v = induce_vector(table, h, &fusion, lam)?;
                out.push((li, v, sc.order));
            }
            Ok(out)
        })
        .collect();

    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    let mut vectors = Vec::new();
    for (ci, class_result) in per_class.into_iter().enumerate() {
        for (li, v, h_order) in class_result? {
            if !seen.contains_key(&v) {
                seen.insert(v.clone(), ());
                vectors.push(TaggedVector {
                    vector: v,
                    subgroup_class: ci,
                    linear_index: li,
                    subgroup_order: h_order,
                });
            }
        }
    }
    vectors.sort_by(|a, b| canonical_vector_cmp(&a.vector, &b.vector));
    Ok(MonomialVectorSet {
        r: table.r(),
        vectors,
    })
}

impl MonomialVectorSet {
    pub fn raw_vectors(&self) -> Vec<Vec<u32>> {
        self.vectors.iter().map(|t| t.vector.clone()).collect()
    }
}

fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn sub(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

/// Memoized descent: a vector is a member of the monoid generated by `gens`
/// iff it is zero or some generator fits under it with a member remainder.
struct MembershipOracle {
    gens: Vec<Vec<u32>>,
    /// Maps a vector to the index of the first generator that descends to a
    /// member, or `None` when the vector is not a member.
    memo: HashMap<Vec<u32>, Option<usize>>,
}

impl MembershipOracle {
    fn new(gens: &[Vec<u32>]) -> MembershipOracle {
        let mut cleaned: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| g.iter().any(|&x| x > 0))
            .cloned()
            .collect();
        cleaned.sort_by(|a, b| canonical_vector_cmp(a, b));
        cleaned.dedup();
        MembershipOracle {
            gens: cleaned,
            memo: HashMap::new(),
        }
    }

    fn is_member(&mut self, v: &[u32]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(hit) = self.memo.get(v) {
            return hit.is_some();
        }
        // Mark in-progress as failure; cycles are impossible (descent is
        // strictly decreasing) but this keeps the map total.
        self.memo.insert(v.to_vec(), None);
        for gi in 0..self.gens.len() {
            if le(&self.gens[gi], v) && self.is_member(&sub(v, &self.gens[gi])) {
                self.memo.insert(v.to_vec(), Some(gi));
                return true;
            }
        }
        false
    }

    fn certificate(&mut self, v: &[u32]) -> Option<Vec<Vec<u32>>> {
        if !self.is_member(v) {
            return None;
        }
        let mut parts = Vec::new();
        let mut current = v.to_vec();
        while current.iter().any(|&x| x > 0) {
            let gi = self.memo[&current].expect("member vectors have a recorded descent");
            parts.push(self.gens[gi].clone());
            current = sub(&current, &self.gens[gi]);
        }
        parts.sort_by(|a, b| canonical_vector_cmp(a, b));
        Some(parts)
    }
}

/// Whether `v` is an ℕ-combination of `gens`; returns the summands (as a
/// sorted multiset) when it is. The zero vector is the empty combination.
pub fn is_member(v: &[u32], gens: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    MembershipOracle::new(gens).certificate(v)
}

/// Minimal generating set of the monoid generated by `vectors`: the elements
/// that are not a sum of two nonzero members.
pub fn hilbert_basis(vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut set: Vec<Vec<u32>> = vectors
        .iter()
        .filter(|v| v.iter().any(|&x| x > 0))
        .cloned()
        .collect();
    set.sort_by(|a, b| canonical_vector_cmp(a, b));
    set.dedup();
    let mut oracle = MembershipOracle::new(&set);
    let mut basis = Vec::new();
    for v in &set {
        let reducible = set.iter().any(|g| {
            g != v && g.iter().any(|&x| x > 0) && le(g, v) && oracle.is_member(&sub(v, g))
        });
        if !reducible {
            basis.push(v.clone());
        }
    }
    basis
}

/// Rank over ℚ of the set of vectors.
pub fn lattice_rank(vectors: &[Vec<u32>]) -> usize {
    let rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i64).collect())
        .collect();
    crate::snf::rank_i64(&rows)
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Independent brute-force checks used by tests: forward closure in a
    //! box instead of memoized descent.

    use super::le;

    pub fn member_by_closure(v: &[u32], gens: &[Vec<u32>]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        let mut reached = std::collections::HashSet::new();
        let mut queue = vec![vec![0u32; v.len()]];
        reached.insert(queue[0].clone());
        while let Some(u) = queue.pop() {
            for g in gens {
                if g.iter().all(|&x| x == 0) {
                    continue;
                }
                let next: Vec<u32> = u.iter().zip(g.iter()).map(|(a, b)| a + b).collect();
                if le(&next, v) && !reached.contains(&next) {
                    if next == v {
                        return true;
                    }
                    reached.insert(next.clone());
                    queue.push(next);
                }
            }
        }
        false
    }

    /// Minimal generators by exhaustive bounded search.
    pub fn hilbert_basis_bruteforce(vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut set: Vec<Vec<u32>> = vectors
            .iter()
            .filter(|v| v.iter().any(|&x| x > 0))
            .cloned()
            .collect();
        set.sort_by(|a, b| super::canonical_vector_cmp(a, b));
        set.dedup();
        set.iter()
            .filter(|v| {
                !set.iter().any(|g| {
                    *g != **v
                        && g.iter().any(|&x| x > 0)
                        && le(g, v)
                        && member_by_closure(&super::sub(v, g), &set)
                })
            })
            .cloned()
            .collect()
    }
}
