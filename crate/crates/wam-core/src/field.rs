//! Small finite fields F_q with table-driven arithmetic.
//!
//! Elements are encoded as `0..q`: writing an element in base p gives the
//! coefficients of its polynomial representative, so `0` and `1` are the
//! field's zero and one for every q.

use crate::error::{Error, Result};

/// Splits `q` into `(p, k)` with `q = p^k`, or fails.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 0u64;
    let mut m = q;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            while m % d == 0 {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Ok((q, 1)); // q itself prime
    }
    if m != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let mut k = 0u32;
    let mut t = 1u64;
    while t < q {
        t *= p;
        k += 1;
    }
    if t != q {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, k))
}

/// F_q for small q, with full addition/multiplication tables.
pub struct SmallField {
    pub q: usize,
    pub p: u64,
    pub degree: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
    primitive: u16,
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // Reduce by the monic modulus.
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (j, &mj) in modulus.iter().enumerate().take(k) {
            let idx = d - k + j;
            prod[idx] = (prod[idx] + c * (p - mj % p)) % p;
        }
    }
    prod.truncate(k.max(1));
    prod
}

fn encode(coeffs: &[u64], p: u64) -> u16 {
    let mut v = 0u64;
    for &c in coeffs.iter().rev() {
        v = v * p + c;
    }
    v as u16
}

fn decode(mut v: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Monic irreducible polynomial of degree `k` over F_p, lowest coefficient
/// vector first in the scan order (deterministic).
fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    'outer: for tail in 0..count {
        // Candidate x^k + Σ c_i x^i.
        let mut f = decode(tail, p, k);
        f.push(1);
        // Trial division by every monic polynomial of degree 1..=k/2.
        for d in 1..=(k / 2).max(1) {
            if d >= k {
                break;
            }
            for dt in 0..p.pow(d) {
                let mut g = decode(dt, p, d);
                g.push(1);
                if divides(&g, &f, p) {
                    continue 'outer;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Whether monic `g` divides `f` over F_p.
fn divides(g: &[u64], f: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dg;
            for (j, &gj) in g.iter().enumerate() {
                let idx = shift + j;
                rem[idx] = (rem[idx] + lead * (p - gj % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl SmallField {
    pub fn new(q: u64) -> Result<SmallField> {
        let (p, k) = prime_power(q)?;
        if q > 4096 {
            return Err(Error::Internal(format!("field size {q} too large")));
        }
        let q = q as usize;
        let modulus: Vec<u64> = if k == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, k)
        };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        for a in 0..q as u64 {
            let pa = decode(a, p, k);
            let na: Vec<u64> = pa.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = encode(&na, p);
            for b in 0..q as u64 {
                let pb = decode(b, p, k);
                let sum: Vec<u64> = pa.iter().zip(&pb).map(|(&x, &y)| (x + y) % p).collect();
                add[a as usize * q + b as usize] = encode(&sum, p);
                let prod = poly_mul_mod(&pa, &pb, &modulus, p);
                mul[a as usize * q + b as usize] = encode(&prod, p);
            }
        }
        let mut inv = vec![0u16; q];
        for a in 1..q {
            for b in 1..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        // Smallest element of multiplicative order q−1.
        let mut primitive = 0u16;
        'scan: for a in 1..q as u16 {
            let mut x = a;
            for _ in 1..q - 1 {
                if x == 1 {
                    continue 'scan;
                }
                x = mul[x as usize * q + a as usize];
            }
            if x == 1 {
                primitive = a;
                break;
            }
        }
        Ok(SmallField {
            q,
            p,
            degree: k,
            add,
            mul,
            inv,
            neg,
            primitive,
        })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; undefined (0) for 0.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    /// `x^t`, the t-th power of the polynomial variable: with the base-p
    /// encoding this is just p^t. These span F_q over F_p.
    pub fn basis_element(&self, t: u32) -> u16 {
        self.p.pow(t) as u16
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(25).unwrap(), (5, 2));
        assert!(prime_power(6).is_err());
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn field_axioms_f9() {
        let f = SmallField::new(9).unwrap();
        for a in 0..9u16 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.mul(a, 1), a);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..9u16 {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..9u16 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        // The primitive element generates all 8 units.
        let g = f.primitive();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u16;
        for _ in 0..8 {
            x = f.mul(x, g);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn field_axioms_f8() {
        let f = SmallField::new(8).unwrap();
        // Characteristic 2: a + a = 0.
        for a in 0..8u16 {
            assert_eq!(f.add(a, a), 0);
        }
        assert_eq!(f.mul(f.basis_element(1), f.basis_element(2)), {
            // x * x^2 = x^3, which reduces modulo the degree-3 modulus.
            let x3 = f.mul(f.basis_element(1), f.mul(f.basis_element(1), f.basis_element(1)));
            x3
        });
    }
}
