//! Permutations of `{0, …, n−1}` in image-table form.

use crate::error::{Error, Result};

/// A permutation of the points `0..degree`, stored as its image table.
///
/// Products compose left to right: `(a * b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    /// Identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::Internal(format!(
                    "image table {images:?} is not a bijection"
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation of `degree` points from disjoint cycles
    /// (0-based). Repeated points are rejected.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p as usize >= degree {
                    return Err(Error::Internal(format!(
                        "cycle point {} out of range for degree {degree}",
                        p + 1
                    )));
                }
                if used[p as usize] {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("repeated point {} in cycle notation", p + 1),
                    });
                }
                used[p as usize] = true;
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u16 == j)
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `other⁻¹ * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().mul(self).mul(other)
    }

    /// Multiplicative order, via the cycle structure.
    pub fn order(&self) -> u64 {
        let mut order = 1u64;
        for cycle in self.cycles() {
            order = num_integer::lcm(order, cycle.len() as u64);
        }
        order
    }

    /// Disjoint cycle decomposition; fixed points omitted, each cycle
    /// starting at its smallest point, cycles sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n as u16 {
            if seen[start as usize] || self.apply(start) == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Returns +1 for even permutations and −1 for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Reinterprets the permutation on a larger degree, fixing new points.
    pub fn extend_degree(&self, degree: usize) -> Perm {
        debug_assert!(degree >= self.degree());
        let mut images: Vec<u16> = self.images.to_vec();
        images.extend(self.degree() as u16..degree as u16);
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Shifts all points up by `offset` inside a larger degree.
    pub fn shift(&self, offset: usize, degree: usize) -> Perm {
        debug_assert!(offset + self.degree() <= degree);
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[i + offset] = j + offset as u16;
        }
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Renders the cycle decomposition with 1-based points, `"()"` for the
    /// identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            let body: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            out.push_str(&body.join(","));
            out.push(')');
        }
        out
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        // (0 1) then (0 1 2): 0→1→2, 1→0→1, 2→2→0.
        let ab = a.mul(&b);
        assert_eq!(ab.images(), &[2, 1, 0]);
        assert!(a.mul(&a.inverse()).is_identity());
        assert!(ab.mul(&ab.inverse()).is_identity());
    }

    #[test]
    fn order_and_sign() {
        let c3 = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(c3.order(), 3);
        assert_eq!(c3.sign(), 1);
        let t = Perm::from_cycles(5, &[vec![3, 4]]).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.sign(), -1);
        let mixed = c3.mul(&t);
        assert_eq!(mixed.order(), 6);
        assert_eq!(mixed.sign(), -1);
    }

    #[test]
    fn cycle_roundtrip() {
        let p = Perm::from_cycles(6, &[vec![0, 3], vec![1, 4, 5]]).unwrap();
        let q = Perm::from_cycles(6, &p.cycles()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.cycle_string(), "(1,4)(2,5,6)");
        assert_eq!(Perm::identity(4).cycle_string(), "()");
    }

    #[test]
    fn repeated_point_rejected() {
        assert!(Perm::from_cycles(3, &[vec![0, 0, 1]]).is_err());
    }
}
