//! Integer matrix utilities: Smith normal form and rank.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Smith normal form of a square integer matrix.
///
/// `d` is the diagonal with the divisibility chain `d[0] | d[1] | …`, and
/// `v` is the unimodular column transform with `U·A·V = diag(d)` for some
/// unimodular `U` (not tracked).
pub struct Snf {
    pub d: Vec<BigInt>,
    pub v: Vec<Vec<BigInt>>,
}

/// Computes the Smith normal form of `a` (square, n×n), tracking only the
/// column transform.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Snf {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();

    let col_add = |m: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, to: usize, from: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let delta = q * &row[from];
            row[to] -= delta;
        }
        for row in v.iter_mut() {
            let delta = q * &row[from];
            row[to] -= delta;
        }
    };

    for k in 0..n {
        'pivot: loop {
            // Find the smallest nonzero entry in the remaining block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if !m[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // block is zero
            };
            m.swap(k, pi);
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(k, pj);
                }
                for row in v.iter_mut() {
                    row.swap(k, pj);
                }
            }
            if m[k][k].is_negative() {
                for row in m.iter_mut() {
                    row[k] = -row[k].clone();
                }
                for row in v.iter_mut() {
                    row[k] = -row[k].clone();
                }
            }
            // Clear the pivot row and column.
            let mut dirty = false;
            for i in k + 1..n {
                if !m[i][k].is_zero() {
                    let q = &m[i][k] / &m[k][k];
                    let pivot_row: Vec<BigInt> = m[k].clone();
                    for j in k..n {
                        let delta = &q * &pivot_row[j];
                        m[i][j] -= delta;
                    }
                    if !m[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..n {
                if !m[k][j].is_zero() {
                    let q = &m[k][j] / &m[k][k];
                    col_add(&mut m, &mut v, j, k, &q);
                    if !m[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Enforce divisibility: fold a bad row into the pivot row.
            for i in k + 1..n {
                for j in k + 1..n {
                    if !(&m[i][j] % &m[k][k]).is_zero() {
                        let row: Vec<BigInt> = m[i].clone();
                        for (t, cell) in row.into_iter().enumerate() {
                            m[k][t] += cell;
                        }
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    let d: Vec<BigInt> = (0..n).map(|i| m[i][i].clone()).collect();
    Snf { d, v }
}

/// Rank over ℚ of a set of integer row vectors, by fraction-free elimination.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for i in rank + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let a = pivot_row[col].clone();
            let b = m[i][col].clone();
            for j in 0..ncols {
                m[i][j] = &m[i][j] * &a - &pivot_row[j] * &b;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Reduces a stream of integer relation rows to a square basis of the lattice
/// they span, suitable as Smith-normal-form input. The matrix keeps `n`
/// rows; row `j` has its pivot at column `j` (or is zero).
pub struct RelationLattice {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl RelationLattice {
    pub fn new(n: usize) -> RelationLattice {
        RelationLattice {
            n,
            rows: vec![vec![BigInt::zero(); n]; n],
        }
    }

    pub fn insert(&mut self, row: &[i64]) {
        let mut r: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        for j in 0..self.n {
            if r[j].is_zero() {
                continue;
            }
            if self.rows[j][j].is_zero() {
                if r[j].is_negative() {
                    for cell in r.iter_mut() {
                        *cell = -cell.clone();
                    }
                }
                self.rows[j] = r;
                return;
            }
            let (g, x, y) = ext_gcd(&self.rows[j][j], &r[j]);
            let a = &self.rows[j][j] / &g;
            let b = &r[j] / &g;
            let combined: Vec<BigInt> = (0..self.n)
                .map(|t| &x * &self.rows[j][t] + &y * &r[t])
                .collect();
            let reduced: Vec<BigInt> = (0..self.n)
                .map(|t| &a * &r[t] - &b * &self.rows[j][t])
                .collect();
            self.rows[j] = combined;
            r = reduced;
            debug_assert!(r[j].is_zero());
        }
    }

    pub fn into_matrix(self) -> Vec<Vec<BigInt>> {
        self.rows
    }
}

/// Extended gcd: returns `(g, x, y)` with `x·a + y·b = g ≥ 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        if a.is_negative() {
            return (-a.clone(), BigInt::from(-1), BigInt::zero());
        }
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let (g, x1, y1) = ext_gcd(b, &(a % b));
    let y = x1 - (a / b) * &y1;
    (g, y1, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn det3(m: &[Vec<BigInt>]) -> BigInt {
        assert_eq!(m.len(), 3);
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    #[test]
    fn diagonal_with_mixed_divisibility() {
        let snf = smith_normal_form(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.d, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn known_two_by_two() {
        let snf = smith_normal_form(&big(&[&[2, 4], &[6, 8]]));
        assert_eq!(snf.d, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn divisibility_chain_and_unimodular_v() {
        let a = big(&[&[6, 4, 2], &[4, 4, 4], &[2, 4, 6]]);
        let snf = smith_normal_form(&a);
        for w in snf.d.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", snf.d);
            }
        }
        assert_eq!(det3(&snf.v).abs(), BigInt::one());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_i64(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![0, 0]]), 0);
        assert_eq!(
            rank_i64(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]),
            2
        );
    }

    #[test]
    fn relation_lattice_reduction() {
        // Lattice spanned by (2,0) and (0,2) plus the diagonal (1,1):
        // index 2 in ℤ², invariant factors (1,2).
        let mut lat = RelationLattice::new(2);
        lat.insert(&[2, 0]);
        lat.insert(&[0, 2]);
        lat.insert(&[1, 1]);
        let snf = smith_normal_form(&lat.into_matrix());
        assert_eq!(snf.d, vec![BigInt::from(1), BigInt::from(2)]);
    }
}
