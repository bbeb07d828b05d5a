//! Exact irreducible character tables by the modular class-matrix method.
//!
//! All character values live in F_p for a prime p ≡ 1 (mod exp(G)) with
//! p > 2|G|: roots of unity embed as powers of a fixed element ω of order
//! exp(G), complex conjugation becomes evaluation at inverse classes, and
//! every integer quantity we read off (degrees, induced multiplicities) is
//! bounded by |G|, so it lifts uniquely from F_p.
//!
//! The table is found as the common eigenvectors of the class-sum matrices:
//! random linear combinations split the space quickly, with the individual
//! matrices as a deterministic fallback.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::linchar::LinearCharacter;
use crate::modp::{self, Matrix, PrimeField};

/// An irreducible character table in modular encoding.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub order: u64,
    pub exponent: u64,
    /// Working prime p ≡ 1 (mod exponent), p > 2·order.
    pub prime: u64,
    /// Fixed element of multiplicative order `exponent` in F_p.
    pub unity: u64,
    pub seed: u64,
    /// Degrees, ascending with the row order.
    pub degrees: Vec<u64>,
    /// `values[i][c]` = χ_i on class c, encoded in F_p. Rows are sorted by
    /// (degree, value tuple); columns follow the canonical class order.
    pub values: Vec<Vec<u64>>,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    /// `inverse_class[c]` is the class of the inverses of class c.
    pub inverse_class: Vec<usize>,
}

/// Map from subgroup conjugacy classes into parent classes.
#[derive(Clone, Debug)]
pub struct ClassFusion {
    pub map: Vec<usize>,
}

/// Builds the character table of `g`. The seed drives the random splitting
/// combinations; the resulting table is seed-independent because rows are
/// canonically sorted.
pub fn character_table(g: &PermGroup, seed: u64) -> Result<CharacterTable> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let order = g.order();
    let exponent = g.exponent();
    let prime = modp::find_character_prime(exponent, 2 * order)?;
    let f = PrimeField::new(prime);
    let unity = f.pow(modp::primitive_root(prime), (prime - 1) / exponent);

    let data = g.data();
    let rep_idx: Vec<u32> = classes
        .iter()
        .map(|c| data.index[&c.representative])
        .collect();
    let inverse_class: Vec<usize> = rep_idx
        .iter()
        .map(|&i| g.class_of_index(data.inverse[i as usize]) as usize)
        .collect();

    // Class-sum matrices: M_i[j][k] counts x ∈ C_i with x⁻¹·g_k ∈ C_j; the
    // central character vectors are their simultaneous eigenvectors.
    let class_matrices: Vec<Matrix> = (0..r)
        .map(|i| {
            let mut m = vec![vec![0u64; r]; r];
            for (k, &gk) in rep_idx.iter().enumerate() {
                for &x in &classes[i].elements {
                    let y = data.product(data.inverse[x as usize], gk);
                    let j = g.class_of_index(y) as usize;
                    m[j][k] += 1;
                }
            }
            for row in &mut m {
                for cell in row {
                    *cell %= prime;
                }
            }
            m
        })
        .collect();

    // Split the class-function space into common eigenspaces.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spaces: Vec<Matrix> = vec![(0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect()];
    let mut splitters: Vec<Matrix> = Vec::new();
    for _ in 0..3 {
        let mut combo = vec![vec![0u64; r]; r];
        for m in class_matrices.iter().skip(1) {
            let c: u64 = rng.gen_range(0..prime);
            for (ci, mi) in combo.iter_mut().zip(m.iter()) {
                for (cc, mc) in ci.iter_mut().zip(mi.iter()) {
                    *cc = f.add(*cc, f.mul(c, *mc));
                }
            }
        }
        splitters.push(combo);
    }
    splitters.extend(class_matrices.iter().skip(1).cloned());

    for m in &splitters {
        if spaces.iter().all(|b| b[0].len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(r);
        for basis in spaces {
            let dim = basis[0].len();
            if dim == 1 {
                next.push(basis);
                continue;
            }
            for piece in split_space(&basis, m, f)? {
                next.push(piece);
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|b| b[0].len() != 1) {
        return Err(Error::EigensplitFailure);
    }

    // Each 1-dimensional space is a central character; recover degrees from
    // the orthogonality normalization and lift to character values.
    let class_sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for basis in &spaces {
        let v: Vec<u64> = basis.iter().map(|row| row[0]).collect();
        if v[0] == 0 {
            return Err(Error::Internal(
                "central character vanishes on the identity class".into(),
            ));
        }
        let norm = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, norm)).collect();
        let s = (0..r).fold(0u64, |acc, c| {
            let term = f.mul(
                f.mul(w[c], w[inverse_class[c]]),
                f.inv(class_sizes[c] % prime),
            );
            f.add(acc, term)
        });
        let d_squared = f.mul(order % prime, f.inv(s));
        let root = f
            .sqrt(d_squared)
            .ok_or_else(|| Error::Internal("degree squared has no square root".into()))?;
        let degree = root.min(prime - root);
        if degree == 0 || order % degree != 0 {
            return Err(Error::Internal(format!(
                "recovered degree {degree} does not divide the group order {order}"
            )));
        }
        let values: Vec<u64> = (0..r)
            .map(|c| f.mul(degree % prime, f.mul(w[c], f.inv(class_sizes[c] % prime))))
            .collect();
        rows.push((degree, values));
    }
    rows.sort();
    let table = CharacterTable {
        order,
        exponent,
        prime,
        unity,
        seed,
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        values: rows.into_iter().map(|(_, v)| v).collect(),
        class_sizes,
        class_orders: classes.iter().map(|c| c.element_order).collect(),
        inverse_class,
    };
    table.validate()?;
    Ok(table)
}

/// Splits the column space of `basis` into eigenspaces of `m` (which must
/// leave it invariant).
fn split_space(basis: &Matrix, m: &Matrix, f: PrimeField) -> Result<Vec<Matrix>> {
    let r = basis.len();
    let dim = basis[0].len();
    let mb = modp::mat_mul(m, basis, f);
    // d independent rows of the basis pin the restricted action.
    let transpose: Matrix = (0..dim).map(|j| (0..r).map(|i| basis[i][j]).collect()).collect();
    let mut t = transpose;
    let sel = modp::rref(&mut t, f);
    if sel.len() != dim {
        return Err(Error::Internal("subspace basis is rank deficient".into()));
    }
    let b_sel: Matrix = sel.iter().map(|&i| basis[i].clone()).collect();
    let mb_sel: Matrix = sel.iter().map(|&i| mb[i].clone()).collect();
    let b_inv =
        modp::invert(&b_sel, f).ok_or_else(|| Error::Internal("selected rows not invertible".into()))?;
    let a = modp::mat_mul(&b_inv, &mb_sel, f);

    let poly = charpoly(&a, f);
    let mut pieces = Vec::new();
    let mut covered = 0usize;
    for x in 0..f.p {
        if eval_poly(&poly, x, f) != 0 {
            continue;
        }
        // Eigenspace for eigenvalue x.
        let shifted: Matrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            f.sub(a[i][j], x)
                        } else {
                            a[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = modp::kernel_basis(&shifted, f);
        if kernel.is_empty() {
            continue;
        }
        covered += kernel.len();
        // Lift back: new basis columns are B·k.
        let piece: Matrix = (0..r)
            .map(|i| {
                kernel
                    .iter()
                    .map(|k| {
                        (0..dim).fold(0u64, |acc, j| f.add(acc, f.mul(basis[i][j], k[j])))
                    })
                    .collect()
            })
            .collect();
        pieces.push(piece);
        if covered == dim {
            break;
        }
    }
    if covered != dim {
        return Err(Error::Internal(
            "class matrix restriction is not diagonalizable".into(),
        ));
    }
    Ok(pieces)
}

/// Characteristic polynomial det(A − xI) by interpolation, coefficients low
/// to high.
fn charpoly(a: &Matrix, f: PrimeField) -> Vec<u64> {
    let d = a.len();
    let points: Vec<u64> = (0..=d as u64).collect();
    let values: Vec<u64> = points
        .iter()
        .map(|&x| {
            let shifted: Matrix = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if i == j { f.sub(a[i][j], x) } else { a[i][j] })
                        .collect()
                })
                .collect();
            modp::det(&shifted, f)
        })
        .collect();
    // Lagrange interpolation.
    let mut coeffs = vec![0u64; d + 1];
    for (t, &xt) in points.iter().enumerate() {
        // numerator Π_{s≠t} (x − x_s), denominator Π (x_t − x_s)
        let mut num = vec![1u64];
        let mut den = 1u64;
        for (s, &xs) in points.iter().enumerate() {
            if s == t {
                continue;
            }
            let mut next = vec![0u64; num.len() + 1];
            for (i, &c) in num.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.add(next[i], f.mul(c, f.neg(xs)));
            }
            num = next;
            den = f.mul(den, f.sub(xt, xs));
        }
        let scale = f.mul(values[t], f.inv(den));
        for (i, &c) in num.iter().enumerate() {
            coeffs[i] = f.add(coeffs[i], f.mul(c, scale));
        }
    }
    coeffs
}

fn eval_poly(coeffs: &[u64], x: u64, f: PrimeField) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| f.add(f.mul(acc, x), c))
}

impl CharacterTable {
    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    /// Full self-check: degree sum, divisibility, row and column
    /// orthogonality in F_p.
    pub fn validate(&self) -> Result<()> {
        let f = PrimeField::new(self.prime);
        let r = self.r();
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order {
            return Err(Error::Internal(format!(
                "degree squares sum to {sum_sq}, group order is {}",
                self.order
            )));
        }
        for d in &self.degrees {
            if self.order % d != 0 {
                return Err(Error::Internal(format!("degree {d} does not divide order")));
            }
        }
        for i in 0..r {
            for j in 0..r {
                let dot = (0..r).fold(0u64, |acc, c| {
                    let term = f.mul(
                        self.class_sizes[c] % self.prime,
                        f.mul(self.values[i][c], self.values[j][self.inverse_class[c]]),
                    );
                    f.add(acc, term)
                });
                let expected = if i == j { self.order % self.prime } else { 0 };
                if dot != expected {
                    return Err(Error::Internal(format!(
                        "row orthogonality fails at ({i},{j})"
                    )));
                }
            }
        }
        for c in 0..r {
            for c2 in 0..r {
                let dot = (0..r).fold(0u64, |acc, i| {
                    f.add(
                        acc,
                        f.mul(self.values[i][c], self.values[i][self.inverse_class[c2]]),
                    )
                });
                let expected = if c == c2 {
                    f.mul(self.order % self.prime, f.inv(self.class_sizes[c] % self.prime))
                } else {
                    0
                };
                if dot != expected {
                    return Err(Error::Internal(format!(
                        "column orthogonality fails at ({c},{c2})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Fusion of the conjugacy classes of `h` into those of `g`; `h` must be a
/// subgroup acting on the same points.
pub fn class_fusion(h: &PermGroup, g: &PermGroup) -> Result<ClassFusion> {
    if h.degree() != g.degree() {
        return Err(Error::NotASubgroup);
    }
    let data = g.data();
    let map = h
        .conjugacy_classes()
        .iter()
        .map(|c| {
            data.index_of(&c.representative)
                .map(|i| g.class_of_index(i) as usize)
                .ok_or(Error::NotASubgroup)
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(ClassFusion { map })
}

/// Multiplicities ⟨λ^G, χ_j⟩ of the induced character of `lambda`, by
/// Frobenius reciprocity evaluated in F_p and lifted to ℕ.
pub fn induce_vector(
    table: &CharacterTable,
    h: &PermGroup,
    fusion: &ClassFusion,
    lambda: &LinearCharacter,
) -> Result<Vec<u32>> {
    let f = PrimeField::new(table.prime);
    if lambda.modulus == 0 || table.exponent % lambda.modulus != 0 {
        return Err(Error::Internal(format!(
            "linear character modulus {} does not divide the group exponent {}",
            lambda.modulus, table.exponent
        )));
    }
    let scale = table.exponent / lambda.modulus;
    let h_classes = h.conjugacy_classes();
    let inv_h = f.inv(h.order() % table.prime);
    let r = table.r();
    let mut vector = Vec::with_capacity(r);
    for j in 0..r {
        let mut acc = 0u64;
        for (c, h_class) in h_classes.iter().enumerate() {
            let lam = f.pow(table.unity, lambda.exponents[c] * scale);
            let chi = table.values[j][table.inverse_class[fusion.map[c]]];
            acc = f.add(acc, f.mul(h_class.size % table.prime, f.mul(lam, chi)));
        }
        let value = f.mul(acc, inv_h);
        if 2 * value >= table.prime {
            return Err(Error::LiftAmbiguity {
                residue: value,
                prime: table.prime,
            });
        }
        vector.push(value as u32);
    }
    let index = table.order / h.order();
    let weighted: u64 = vector
        .iter()
        .zip(table.degrees.iter())
        .map(|(&v, &d)| v as u64 * d)
        .sum();
    if weighted != index {
        return Err(Error::Internal(format!(
            "induced vector fails the degree check: got {weighted}, index is {index}"
        )));
    }
    Ok(vector)
}
