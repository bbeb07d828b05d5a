//! Arithmetic and linear algebra over a prime field F_p (p < 2³¹).

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> PrimeField {
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverting zero");
        self.pow(a, self.p - 2)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Tonelli–Shanks square root; `None` when `a` is a non-residue.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (self.p - 1) / 2) != 1 {
            return None;
        }
        if self.p % 4 == 3 {
            return Some(self.pow(a, (self.p + 1) / 4));
        }
        let mut q = self.p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..self.p)
            .find(|&z| self.pow(z, (self.p - 1) / 2) == self.p - 1)
            .expect("non-residues exist");
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > lower_bound`.
pub fn find_character_prime(exponent: u64, lower_bound: u64) -> Result<u64> {
    let mut k = 1u64;
    loop {
        let p = k
            .checked_mul(exponent)
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::PrimeSearchFailure {
                exponent,
                lower_bound,
            })?;
        if p > (1 << 31) {
            return Err(Error::PrimeSearchFailure {
                exponent,
                lower_bound,
            });
        }
        if p > lower_bound && is_prime(p) {
            return Ok(p);
        }
        k += 1;
    }
}

/// Smallest primitive root modulo prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let f = PrimeField::new(p);
    (2..p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (p - 1) / q) != 1))
        .expect("primitive roots exist")
}

pub type Matrix = Vec<Vec<u64>>;

/// In-place Gauss–Jordan to reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Matrix, f: PrimeField) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(src) = (row..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, src);
        let inv = f.inv(m[row][col]);
        for j in col..cols {
            m[row][j] = f.mul(m[row][j], inv);
        }
        for i in 0..rows {
            if i != row && m[i][col] != 0 {
                let factor = m[i][col];
                for j in col..cols {
                    let delta = f.mul(factor, m[row][j]);
                    m[i][j] = f.sub(m[i][j], delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// Basis of the null space of `m` (vectors as columns of the result, each a
/// Vec of length = cols of `m`).
pub fn kernel_basis(m: &Matrix, f: PrimeField) -> Vec<Vec<u64>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut work = m.clone();
    let pivots = rref(&mut work, f);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0u64; cols];
        v[fc] = 1;
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(work[ri][fc]);
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(m: &Matrix, f: PrimeField) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(&mut aug, f);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by Gaussian elimination.
pub fn det(m: &Matrix, f: PrimeField) -> u64 {
    let n = m.len();
    let mut work = m.clone();
    let mut d = 1u64;
    for col in 0..n {
        let Some(src) = (col..n).find(|&i| work[i][col] != 0) else {
            return 0;
        };
        if src != col {
            work.swap(col, src);
            d = f.neg(d);
        }
        d = f.mul(d, work[col][col]);
        let inv = f.inv(work[col][col]);
        for i in col + 1..n {
            if work[i][col] != 0 {
                let factor = f.mul(work[i][col], inv);
                for j in col..n {
                    let delta = f.mul(factor, work[col][j]);
                    work[i][j] = f.sub(work[i][j], delta);
                }
            }
        }
    }
    d
}

pub fn mat_mul(a: &Matrix, b: &Matrix, f: PrimeField) -> Matrix {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![0u64; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = f.add(out[i][j], f.mul(a[i][k], b[k][j]));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_search_and_roots() {
        assert_eq!(find_character_prime(12, 48).unwrap(), 61);
        assert_eq!(find_character_prime(6, 12).unwrap(), 13);
        let p = 61;
        let g = primitive_root(p);
        let f = PrimeField::new(p);
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u64;
        for _ in 0..p - 1 {
            x = f.mul(x, g);
            seen.insert(x);
        }
        assert_eq!(seen.len(), (p - 1) as usize);
    }

    #[test]
    fn sqrt_roundtrip() {
        for p in [13u64, 61, 97, 1021] {
            let f = PrimeField::new(p);
            for a in 0..p.min(60) {
                let sq = f.mul(a, a);
                let r = f.sqrt(sq).expect("squares have roots");
                assert!(r == a || r == f.neg(a), "p={p} a={a} r={r}");
            }
        }
    }

    #[test]
    fn kernel_and_inverse() {
        let f = PrimeField::new(13);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let k = kernel_basis(&m, f);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&k[0])
                .fold(0u64, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert_eq!(dot, 0);
        }
        let inv = invert(&vec![vec![1, 1], vec![1, 2]], f).unwrap();
        let prod = mat_mul(&vec![vec![1, 1], vec![1, 2]], &inv, f);
        assert_eq!(prod, vec![vec![1, 0], vec![0, 1]]);
        assert!(invert(&vec![vec![1, 1], vec![2, 2]], f).is_none());
    }

    #[test]
    fn determinant() {
        let f = PrimeField::new(13);
        assert_eq!(det(&vec![vec![2, 0], vec![0, 3]], f), 6);
        assert_eq!(det(&vec![vec![1, 2], vec![2, 4]], f), 0);
    }
}
