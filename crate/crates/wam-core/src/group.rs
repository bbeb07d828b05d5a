//! Finite permutation groups with explicit element enumeration.
//!
//! Groups at pipeline scale (order ≤ 10⁴ by default) are materialized fully:
//! every element gets an index, conjugacy classes are conjugation orbits, and
//! a multiplication table is kept for small orders so that downstream lattice
//! computations run on indices alone. A Schreier–Sims chain provides the
//! order at construction time and membership tests without enumeration.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::schreier::StabChain;

/// Largest degree accepted for constructions that build a stabilizer chain.
pub const MAX_DEGREE: usize = 2048;

/// Orders up to this bound get a full multiplication table (u16 indices).
const MULT_TABLE_MAX: u64 = 3000;

/// A conjugacy class of group elements.
#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Lexicographically smallest element of the class.
    pub representative: Perm,
    pub size: u64,
    pub element_order: u64,
    /// Indices into the element table, ascending.
    pub elements: Vec<u32>,
}

/// Materialized element data for a group.
pub struct GroupData {
    pub elements: Vec<Perm>,
    pub index: HashMap<Perm, u32>,
    /// `inverse[i]` is the index of `elements[i]⁻¹`.
    pub inverse: Vec<u32>,
    pub elem_order: Vec<u32>,
    mult_table: Option<Vec<u16>>,
    classes: OnceLock<ClassData>,
}

struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
}

impl GroupData {
    /// Index of `elements[i] * elements[j]`.
    #[inline]
    pub fn product(&self, i: u32, j: u32) -> u32 {
        match &self.mult_table {
            Some(t) => t[i as usize * self.elements.len() + j as usize] as u32,
            None => self.index[&self.elements[i as usize].mul(&self.elements[j as usize])],
        }
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }
}

impl Clone for GroupData {
    fn clone(&self) -> Self {
        GroupData {
            elements: self.elements.clone(),
            index: self.index.clone(),
            inverse: self.inverse.clone(),
            elem_order: self.elem_order.clone(),
            mult_table: self.mult_table.clone(),
            classes: OnceLock::new(),
        }
    }
}

/// A finite group of permutations of fixed degree.
///
/// Immutable after construction; element tables and conjugacy data are
/// materialized on first use and shared thereafter.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    order: u64,
    chain: OnceLock<StabChain>,
    data: OnceLock<GroupData>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            order: self.order,
            chain: OnceLock::new(),
            data: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.order,
            self.gens.len()
        )
    }
}

fn dedup_gens(degree: usize, gens: Vec<Perm>) -> Vec<Perm> {
    let mut out: Vec<Perm> = Vec::new();
    for g in gens {
        assert_eq!(g.degree(), degree, "generator degree mismatch");
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

impl PermGroup {
    /// Builds a group from generators, computing the order via a stabilizer
    /// chain. Fails fast when the order exceeds `cap`.
    pub fn from_generators(degree: usize, gens: Vec<Perm>, cap: u64) -> Result<PermGroup> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        let gens = dedup_gens(degree, gens);
        let chain = StabChain::new(degree, &gens);
        let order = chain.order();
        if order > cap as u128 {
            return Err(Error::SizeCapExceeded {
                order: u64::try_from(order).unwrap_or(u64::MAX),
                cap,
            });
        }
        let group = PermGroup {
            degree,
            gens,
            order: order as u64,
            chain: OnceLock::new(),
            data: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        Ok(group)
    }

    /// Builds a group whose order the caller already knows (quotients,
    /// products, subgroups of enumerated groups). The order is re-checked
    /// when the element table is materialized.
    pub(crate) fn with_known_order(degree: usize, gens: Vec<Perm>, order: u64) -> PermGroup {
        PermGroup {
            degree,
            gens: dedup_gens(degree, gens),
            order,
            chain: OnceLock::new(),
            data: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::with_known_order(degree, Vec::new(), 1)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn stab_chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.gens))
    }

    /// Order as computed by the stabilizer chain (for cross-checks against
    /// the enumerated element count).
    pub fn schreier_order(&self) -> u128 {
        self.stab_chain().order()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.stab_chain().contains(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// The materialized element table. Enumeration order is the breadth-first
    /// closure of the generators from the identity, which is deterministic.
    pub fn data(&self) -> &GroupData {
        self.data.get_or_init(|| {
            let mut elements = vec![Perm::identity(self.degree)];
            let mut index: HashMap<Perm, u32> = HashMap::with_capacity(self.order as usize);
            index.insert(elements[0].clone(), 0);
            let mut k = 0usize;
            while k < elements.len() {
                let current = elements[k].clone();
                k += 1;
                for g in &self.gens {
                    let next = current.mul(g);
                    if !index.contains_key(&next) {
                        index.insert(next.clone(), elements.len() as u32);
                        elements.push(next);
                    }
                }
            }
            assert_eq!(
                elements.len() as u64, self.order,
                "enumerated element count disagrees with the recorded order"
            );
            let inverse: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
            let elem_order: Vec<u32> = elements.iter().map(|p| p.order() as u32).collect();
            let mult_table = if self.order <= MULT_TABLE_MAX {
                let n = elements.len();
                let mut table = vec![0u16; n * n];
                for i in 0..n {
                    for j in 0..n {
                        table[i * n + j] = index[&elements[i].mul(&elements[j])] as u16;
                    }
                }
                Some(table)
            } else {
                None
            };
            GroupData {
                elements,
                index,
                inverse,
                elem_order,
                mult_table,
                classes: OnceLock::new(),
            }
        })
    }

    pub fn elements(&self) -> &[Perm] {
        &self.data().elements
    }

    fn class_data(&self) -> &ClassData {
        let data = self.data();
        data.classes.get_or_init(|| {
            let n = data.elements.len();
            // Conjugating index maps, one per generator.
            let conj: Vec<Vec<u32>> = self
                .gens
                .iter()
                .map(|g| {
                    let gi = data.index[g];
                    let gi_inv = data.inverse[gi as usize];
                    (0..n as u32)
                        .map(|x| data.product(data.product(gi_inv, x), gi))
                        .collect()
                })
                .collect();
            let mut class_of = vec![u32::MAX; n];
            let mut classes: Vec<ConjClass> = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut members = vec![start];
                class_of[start as usize] = id;
                let mut k = 0;
                while k < members.len() {
                    let x = members[k];
                    k += 1;
                    for map in &conj {
                        let y = map[x as usize];
                        if class_of[y as usize] == u32::MAX {
                            class_of[y as usize] = id;
                            members.push(y);
                        }
                    }
                }
                members.sort_unstable();
                let representative = members
                    .iter()
                    .map(|&i| data.elements[i as usize].clone())
                    .min()
                    .expect("class is nonempty");
                classes.push(ConjClass {
                    element_order: data.elem_order[start as usize] as u64,
                    size: members.len() as u64,
                    representative,
                    elements: members,
                });
            }
            // Canonical order: element order, class size, then the smallest
            // representative; rebuild the lookup table to match.
            classes.sort_by(|a, b| {
                (a.element_order, a.size, &a.representative).cmp(&(
                    b.element_order,
                    b.size,
                    &b.representative,
                ))
            });
            for (id, class) in classes.iter().enumerate() {
                for &e in &class.elements {
                    class_of[e as usize] = id as u32;
                }
            }
            ClassData { classes, class_of }
        })
    }

    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    /// Class index of the element with table index `i`.
    pub fn class_of_index(&self, i: u32) -> u32 {
        self.class_data().class_of[i as usize]
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.conjugacy_classes()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.element_order))
    }

    /// Elements commuting with everything, as a subgroup (size-1 classes).
    pub fn center(&self) -> PermGroup {
        let data = self.data();
        let members: Vec<Perm> = self
            .conjugacy_classes()
            .iter()
            .filter(|c| c.size == 1)
            .map(|c| data.elements[c.elements[0] as usize].clone())
            .collect();
        let order = members.len() as u64;
        PermGroup::with_known_order(self.degree, members, order)
    }

    /// Closure of `seeds` under conjugation by the group: the smallest normal
    /// subgroup containing them.
    pub fn normal_closure(&self, seeds: &[Perm]) -> PermGroup {
        let mut gens = dedup_gens(self.degree, seeds.to_vec());
        loop {
            let elems = closure_elements(self.degree, &gens);
            let mut grown = false;
            for g in &self.gens {
                for k in gens.clone() {
                    let c = k.conjugate_by(g);
                    if !elems.contains_key(&c) {
                        gens.push(c);
                        grown = true;
                    }
                }
            }
            if !grown {
                return PermGroup::with_known_order(self.degree, gens, elems.len() as u64);
            }
        }
    }

    /// The commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut seeds = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// The action of the group on the right cosets of a normal subgroup,
    /// returned as a permutation group isomorphic to `G/N`.
    ///
    /// Cosets are numbered by their smallest member in the parent's element
    /// enumeration, so the result is independent of generator presentation.
    pub fn quotient(&self, normal: &PermGroup) -> Result<PermGroup> {
        self.quotient_with_map(normal).map(|(q, _)| q)
    }

    /// Like [`quotient`](Self::quotient), additionally returning the map from
    /// parent element indices to coset numbers (= points of the quotient's
    /// action).
    pub fn quotient_with_map(&self, normal: &PermGroup) -> Result<(PermGroup, Vec<u32>)> {
        if normal.degree != self.degree {
            return Err(Error::NotASubgroup);
        }
        let data = self.data();
        let mut n_indices: Vec<u32> = Vec::with_capacity(normal.order as usize);
        for p in normal.elements() {
            match data.index_of(p) {
                Some(i) => n_indices.push(i),
                None => return Err(Error::NotASubgroup),
            }
        }
        for g in &self.gens {
            for n in normal.generators() {
                if !normal.contains(&n.conjugate_by(g)) {
                    return Err(Error::NotNormal);
                }
            }
        }
        let n = data.elements.len();
        let index_count = (self.order / normal.order) as usize;
        let mut coset_of = vec![u32::MAX; n];
        let mut coset_reps: Vec<u32> = Vec::with_capacity(index_count);
        for i in 0..n as u32 {
            if coset_of[i as usize] != u32::MAX {
                continue;
            }
            let id = coset_reps.len() as u32;
            coset_reps.push(i);
            for &k in &n_indices {
                coset_of[data.product(k, i) as usize] = id;
            }
        }
        debug_assert_eq!(coset_reps.len(), index_count);
        let gen_images: Vec<Perm> = self
            .gens
            .iter()
            .map(|g| {
                let gi = data.index[g];
                let images: Vec<u16> = coset_reps
                    .iter()
                    .map(|&rep| coset_of[data.product(rep, gi) as usize] as u16)
                    .collect();
                Perm::from_images(images).expect("coset action is a permutation")
            })
            .collect();
        Ok((
            PermGroup::with_known_order(index_count, gen_images, self.order / normal.order),
            coset_of,
        ))
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &PermGroup, cap: u64) -> Result<PermGroup> {
        let order = self
            .order
            .checked_mul(other.order)
            .ok_or(Error::SizeCapExceeded {
                order: u64::MAX,
                cap,
            })?;
        if order > cap {
            return Err(Error::SizeCapExceeded { order, cap });
        }
        let degree = self.degree + other.degree;
        if degree > u16::MAX as usize {
            return Err(Error::DegreeTooLarge {
                degree,
                max: u16::MAX as usize,
            });
        }
        let mut gens: Vec<Perm> = self.gens.iter().map(|g| g.extend_degree(degree)).collect();
        gens.extend(other.gens.iter().map(|g| g.shift(self.degree, degree)));
        Ok(PermGroup::with_known_order(degree, gens, order))
    }

    /// Subgroup spanned by the elements at the given table indices, with a
    /// greedily chosen small generating set.
    pub fn subgroup_from_indices(&self, indices: &[u32]) -> PermGroup {
        let data = self.data();
        let mut gens: Vec<Perm> = Vec::new();
        let mut have: HashMap<Perm, ()> = HashMap::new();
        have.insert(self.identity(), ());
        for &i in indices {
            let p = &data.elements[i as usize];
            if !have.contains_key(p) {
                gens.push(p.clone());
                for q in closure_elements(self.degree, &gens).keys() {
                    have.insert(q.clone(), ());
                }
            }
        }
        PermGroup::with_known_order(self.degree, gens, indices.len() as u64)
    }
}

/// All elements of `⟨gens⟩` as a map (values unused), by breadth-first
/// closure.
pub(crate) fn closure_elements(degree: usize, gens: &[Perm]) -> HashMap<Perm, ()> {
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    let mut queue = vec![Perm::identity(degree)];
    seen.insert(queue[0].clone(), ());
    let mut k = 0;
    while k < queue.len() {
        let current = queue[k].clone();
        k += 1;
        for g in gens {
            let next = current.mul(g);
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), ());
                queue.push(next);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_SIZE_CAP;

    fn sym3() -> PermGroup {
        PermGroup::from_generators(
            3,
            vec![
                Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
                Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            ],
            DEFAULT_SIZE_CAP,
        )
        .unwrap()
    }

    #[test]
    fn order_of_sym3_generators() {
        let g = sym3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.elements().len(), 6);
        assert_eq!(g.schreier_order(), 6);
    }

    #[test]
    fn trivial_group_order() {
        let g = PermGroup::trivial(2);
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes().len(), 1);
    }

    #[test]
    fn sym3_classes_by_brute_force() {
        let g = sym3();
        let classes = g.conjugacy_classes();
        let sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        // Independent oracle: conjugation orbits by all elements.
        let elems = g.elements().to_vec();
        let mut orbits: Vec<Vec<Perm>> = Vec::new();
        for x in &elems {
            if orbits.iter().any(|o| o.contains(x)) {
                continue;
            }
            let mut orbit: Vec<Perm> = Vec::new();
            for t in &elems {
                let c = x.conjugate_by(t);
                if !orbit.contains(&c) {
                    orbit.push(c);
                }
            }
            orbits.push(orbit);
        }
        assert_eq!(orbits.len(), classes.len());
        let mut oracle_sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        oracle_sizes.sort_unstable();
        let mut impl_sizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
        impl_sizes.sort_unstable();
        assert_eq!(oracle_sizes, impl_sizes);
    }

    #[test]
    fn class_equation() {
        let g = sym3();
        let total: u64 = g.conjugacy_classes().iter().map(|c| c.size).sum();
        assert_eq!(total, g.order());
    }

    #[test]
    fn derived_subgroup_of_sym3() {
        let g = sym3();
        let d = g.derived_subgroup();
        assert_eq!(d.order(), 3);
        // Brute-force commutator closure oracle.
        let elems = g.elements().to_vec();
        let mut comms = Vec::new();
        for a in &elems {
            for b in &elems {
                comms.push(a.inverse().mul(&b.inverse()).mul(a).mul(b));
            }
        }
        let oracle = closure_elements(3, &comms);
        assert_eq!(oracle.len(), 3);
        for p in d.elements() {
            assert!(oracle.contains_key(p));
        }
    }

    #[test]
    fn derived_subgroup_of_abelian_is_trivial() {
        let c6 = PermGroup::from_generators(
            6,
            vec![Perm::from_cycles(6, &[(0..6).collect()]).unwrap()],
            DEFAULT_SIZE_CAP,
        )
        .unwrap();
        assert!(c6.is_abelian());
        assert_eq!(c6.derived_subgroup().order(), 1);
    }

    #[test]
    fn quotient_basics() {
        let g = sym3();
        let whole = g.quotient(&g).unwrap();
        assert_eq!(whole.order(), 1);
        let by_trivial = g.quotient(&PermGroup::trivial(3)).unwrap();
        assert_eq!(by_trivial.order(), 6);
        let a3 = g.derived_subgroup();
        let q = g.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(q.is_abelian());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = sym3();
        let c2 = PermGroup::from_generators(
            3,
            vec![Perm::from_cycles(3, &[vec![0, 1]]).unwrap()],
            DEFAULT_SIZE_CAP,
        )
        .unwrap();
        assert!(matches!(g.quotient(&c2), Err(Error::NotNormal)));
        let c2_wrong_degree = PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[vec![0, 1]]).unwrap()],
            DEFAULT_SIZE_CAP,
        )
        .unwrap();
        assert!(matches!(
            g.quotient(&c2_wrong_degree),
            Err(Error::NotASubgroup)
        ));
    }

    #[test]
    fn direct_product_orders_and_classes() {
        let g = sym3();
        let c2 = PermGroup::from_generators(
            2,
            vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()],
            DEFAULT_SIZE_CAP,
        )
        .unwrap();
        let p = g.direct_product(&c2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p.degree(), 5);
        assert_eq!(
            p.conjugacy_classes().len(),
            g.conjugacy_classes().len() * c2.conjugacy_classes().len()
        );
        let with_trivial = g.direct_product(&PermGroup::trivial(1), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(with_trivial.order(), 6);
    }

    #[test]
    fn quotient_by_derived_is_abelian() {
        for g in [sym3()] {
            let q = g.quotient(&g.derived_subgroup()).unwrap();
            assert!(q.is_abelian());
        }
    }

    #[test]
    fn center_of_sym3_is_trivial() {
        assert_eq!(sym3().center().order(), 1);
    }
}
