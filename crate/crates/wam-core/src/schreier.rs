//! Schreier–Sims stabilizer chains, used for group order and membership.
//!
//! Element enumeration elsewhere is the authoritative representation for the
//! pipelines; the chain exists so that orders can be verified independently
//! and membership tested without materializing elements.

use crate::perm::Perm;

struct Level {
    base_point: u16,
    /// Strong generators fixing all earlier base points. The per-level sets
    /// are nested: every generator stored here also appears at all earlier
    /// levels.
    gens: Vec<Perm>,
    /// `transversal[p]` maps `base_point` to `p`, if `p` is in the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u16>,
}

impl Level {
    fn new(base_point: u16, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base_point as usize] = Some(Perm::identity(degree));
        Level {
            base_point,
            gens: Vec::new(),
            transversal,
            orbit: vec![base_point],
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point as usize] = Some(Perm::identity(degree));
        self.orbit = vec![self.base_point];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            k += 1;
            let u_p = self.transversal[p as usize].clone().expect("orbit point");
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q as usize].is_none() {
                    self.transversal[q as usize] = Some(u_p.mul(g));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A stabilizer chain for the group generated by the construction-time
/// generators.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if !g.is_identity() {
                chain.add_strong_generator(g.clone());
            }
        }
        chain.verify();
        chain
    }

    /// Group order as a (possibly huge) u128.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Perm) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        match self.sift(0, g.clone()) {
            None => true,
            Some(_) => false,
        }
    }

    /// Sifts `h` through levels `from..`; `None` means it reduced to the
    /// identity, otherwise the non-trivial residue is returned together with
    /// the level where sifting stopped.
    fn sift(&self, from: usize, mut h: Perm) -> Option<(Perm, usize)> {
        for i in from..self.levels.len() {
            if h.is_identity() {
                return None;
            }
            let p = h.apply(self.levels[i].base_point);
            match &self.levels[i].transversal[p as usize] {
                Some(u) => h = h.mul(&u.inverse()),
                None => return Some((h, i)),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((h, self.levels.len()))
        }
    }

    /// Installs `g` at every level whose preceding base points it fixes,
    /// stopping at the first base point it moves (creating that level if
    /// necessary). Returns the deepest level that received it.
    fn add_strong_generator(&mut self, g: Perm) -> usize {
        let mut j = 0;
        loop {
            if j == self.levels.len() {
                let bp = (0..self.degree as u16)
                    .find(|&p| g.apply(p) != p)
                    .expect("non-identity permutation moves a point");
                self.levels.push(Level::new(bp, self.degree));
            }
            let moves_base = g.apply(self.levels[j].base_point) != self.levels[j].base_point;
            self.levels[j].gens.push(g.clone());
            if moves_base {
                return j;
            }
            j += 1;
        }
    }

    /// Bottom-up verification: a level is accepted once all its Schreier
    /// generators sift to the identity through the (already verified) chain
    /// below it.
    fn verify(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            self.levels[level].recompute_orbit(self.degree);
            match self.check_level(level) {
                Some(residue) => {
                    let deepest = self.add_strong_generator(residue);
                    debug_assert!(deepest > level);
                    i = deepest as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// First Schreier generator of `level` that fails to sift, if any.
    fn check_level(&self, level: usize) -> Option<Perm> {
        let l = &self.levels[level];
        for &p in &l.orbit {
            let u_p = l.transversal[p as usize].as_ref().expect("orbit point");
            for s in &l.gens {
                let q = s.apply(p);
                let u_q = l.transversal[q as usize]
                    .as_ref()
                    .expect("orbit closed under generators");
                let schreier = u_p.mul(s).mul(&u_q.inverse());
                if let Some((residue, _)) = self.sift(level + 1, schreier) {
                    return Some(residue);
                }
            }
        }
        None
    }
}
