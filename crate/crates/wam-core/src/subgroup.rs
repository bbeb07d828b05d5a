//! Conjugacy classes of subgroups, enumerated by bottom-up closure.
//!
//! Subgroups are identified by bitsets over the parent's element table. The
//! search seeds with every cyclic subgroup of prime order, repeatedly extends
//! `⟨H, g⟩` by class representatives of prime-power order, and keeps the set
//! closed under conjugation, which makes the enumeration complete: any
//! subgroup K with maximal subgroup H contains a prime-power element outside
//! H, and some conjugate of K arises as `⟨H', g₀⟩` with `H'` a stored
//! conjugate of H and `g₀` a stored class representative.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::group::PermGroup;

/// Fixed-width bitset over the parent group's element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Box<[u64]>,
}

impl Bitset {
    pub fn new(bits: usize) -> Bitset {
        Bitset {
            words: vec![0u64; bits.div_ceil(64)].into_boxed_slice(),
        }
    }

    #[inline]
    pub fn set(&mut self, i: u32) {
        self.words[i as usize / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: u32) -> bool {
        self.words[i as usize / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(wi as u32 * 64 + b)
                }
            })
        })
    }

    /// Orders bitsets as sorted index lists: the set containing the smallest
    /// differing element comes first.
    pub fn canonical_cmp(&self, other: &Bitset) -> Ordering {
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            if a != b {
                let low = (a ^ b).trailing_zeros();
                return if a >> low & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

/// A conjugacy class of subgroups of a fixed parent group.
pub struct SubgroupClass {
    /// The class member whose bitset is canonically smallest.
    pub representative: PermGroup,
    pub order: u64,
    /// Number of conjugates, i.e. the index of the normalizer.
    pub class_length: u64,
    /// Element bitset of the representative over the parent's element table.
    pub bitset: Bitset,
}

struct Enumerator<'a> {
    parent: &'a PermGroup,
    n: usize,
    /// Conjugation-by-generator index maps.
    conj: Vec<Vec<u32>>,
    /// Every subgroup found so far: bitset → (generator indices, orbit id).
    seen: HashMap<Bitset, u32>,
    subgroups: Vec<(Bitset, Vec<u32>, u32)>,
    orbit_count: u32,
}

impl<'a> Enumerator<'a> {
    /// Closure `⟨gens⟩` as a bitset; `gens` are element indices.
    fn close(&self, gen_indices: &[u32]) -> Bitset {
        let data = self.parent.data();
        let mut bits = Bitset::new(self.n);
        bits.set(0);
        let mut queue: Vec<u32> = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for &g in gen_indices {
                let y = data.product(x, g);
                if !bits.get(y) {
                    bits.set(y);
                    queue.push(y);
                }
            }
        }
        bits
    }

    fn conjugate_bitset(&self, bits: &Bitset, gen: usize) -> Bitset {
        let mut out = Bitset::new(self.n);
        for i in bits.ones() {
            out.set(self.conj[gen][i as usize]);
        }
        out
    }

    /// Registers a subgroup and its full conjugation orbit; no-op if known.
    fn register(&mut self, bits: Bitset, gen_indices: Vec<u32>) {
        if self.seen.contains_key(&bits) {
            return;
        }
        let orbit_id = self.orbit_count;
        self.orbit_count += 1;
        self.seen.insert(bits.clone(), orbit_id);
        self.subgroups.push((bits, gen_indices, orbit_id));
        let mut frontier = vec![self.subgroups.len() - 1];
        while let Some(idx) = frontier.pop() {
            let (b, g) = (self.subgroups[idx].0.clone(), self.subgroups[idx].1.clone());
            for gi in 0..self.conj.len() {
                let cb = self.conjugate_bitset(&b, gi);
                if !self.seen.contains_key(&cb) {
                    let cg: Vec<u32> = g.iter().map(|&x| self.conj[gi][x as usize]).collect();
                    self.seen.insert(cb.clone(), orbit_id);
                    self.subgroups.push((cb, cg, orbit_id));
                    frontier.push(self.subgroups.len() - 1);
                }
            }
        }
    }
}

fn is_prime_power(mut n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            return n == 1;
        }
        d += 1;
    }
    true // prime
}

/// One representative per conjugacy class of subgroups, ordered by
/// (order, class length, canonical bitset). Includes the trivial subgroup
/// and the group itself.
pub fn subgroup_conjugacy_classes(parent: &PermGroup) -> Vec<SubgroupClass> {
    let data = parent.data();
    let n = data.elements.len();
    let conj: Vec<Vec<u32>> = parent
        .generators()
        .iter()
        .map(|g| {
            let gi = data.index[g];
            let gi_inv = data.inverse[gi as usize];
            (0..n as u32)
                .map(|x| data.product(data.product(gi_inv, x), gi))
                .collect()
        })
        .collect();
    let mut e = Enumerator {
        parent,
        n,
        conj,
        seen: HashMap::new(),
        subgroups: Vec::new(),
        orbit_count: 0,
    };

    // Trivial subgroup and the whole group.
    let mut trivial = Bitset::new(n);
    trivial.set(0);
    e.register(trivial, Vec::new());
    let mut whole = Bitset::new(n);
    for i in 0..n as u32 {
        whole.set(i);
    }
    let whole_gens: Vec<u32> = parent.generators().iter().map(|g| data.index[g]).collect();
    e.register(whole, whole_gens);

    // Seeds: every cyclic subgroup of prime order.
    for i in 1..n as u32 {
        if crate::field::prime_power(data.elem_order[i as usize] as u64)
            .map(|(_, k)| k == 1)
            .unwrap_or(false)
        {
            let bits = e.close(&[i]);
            e.register(bits, vec![i]);
        }
    }

    // Extension elements: class representatives of prime-power order.
    let ext_reps: Vec<u32> = parent
        .conjugacy_classes()
        .iter()
        .filter(|c| is_prime_power(c.element_order))
        .map(|c| data.index[&c.representative])
        .collect();

    let mut cursor = 0usize;
    while cursor < e.subgroups.len() {
        let (bits, gens) = (e.subgroups[cursor].0.clone(), e.subgroups[cursor].1.clone());
        cursor += 1;
        if bits.count() == n as u64 {
            continue;
        }
        for &g in &ext_reps {
            if bits.get(g) {
                continue;
            }
            let mut extended_gens = gens.clone();
            extended_gens.push(g);
            let extended = e.close(&extended_gens);
            e.register(extended, extended_gens);
        }
    }

    // Collapse orbits into classes.
    let mut per_orbit: HashMap<u32, (Bitset, u64)> = HashMap::new();
    for (bits, _, orbit_id) in &e.subgroups {
        per_orbit
            .entry(*orbit_id)
            .and_modify(|(best, len)| {
                *len += 1;
                if bits.canonical_cmp(best) == Ordering::Less {
                    *best = bits.clone();
                }
            })
            .or_insert_with(|| (bits.clone(), 1));
    }
    let mut classes: Vec<SubgroupClass> = per_orbit
        .into_values()
        .map(|(bits, class_length)| {
            let indices: Vec<u32> = bits.ones().collect();
            let representative = parent.subgroup_from_indices(&indices);
            SubgroupClass {
                order: bits.count(),
                class_length,
                representative,
                bitset: bits,
            }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.order, a.class_length)
            .cmp(&(b.order, b.class_length))
            .then_with(|| a.bitset.canonical_cmp(&b.bitset))
    });
    classes
}

/// Brute-force oracle: every subgroup, by closing `⟨H, g⟩` over all elements
/// `g` for every previously found subgroup `H`. Returns the full list of
/// subgroup bitsets (no conjugacy reduction). Intended for cross-checks on
/// groups of modest order.
pub fn all_subgroups_oracle(parent: &PermGroup) -> Vec<Bitset> {
    let data = parent.data();
    let n = data.elements.len();
    let close = |gen_indices: &[u32]| -> Bitset {
        let mut bits = Bitset::new(n);
        bits.set(0);
        let mut queue: Vec<u32> = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for &g in gen_indices {
                let y = data.product(x, g);
                if !bits.get(y) {
                    bits.set(y);
                    queue.push(y);
                }
            }
        }
        bits
    };
    let mut trivial = Bitset::new(n);
    trivial.set(0);
    let mut seen: HashMap<Bitset, ()> = HashMap::new();
    seen.insert(trivial.clone(), ());
    let mut found: Vec<(Bitset, Vec<u32>)> = vec![(trivial, Vec::new())];
    let mut cursor = 0usize;
    while cursor < found.len() {
        let (bits, gens) = found[cursor].clone();
        cursor += 1;
        for g in 1..n as u32 {
            if bits.get(g) {
                continue;
            }
            let mut extended = gens.clone();
            extended.push(g);
            let closed = close(&extended);
            if !seen.contains_key(&closed) {
                seen.insert(closed.clone(), ());
                found.push((closed, extended));
            }
        }
    }
    found.into_iter().map(|(b, _)| b).collect()
}
