//! Monomiality classification from a Hilbert basis: monomial, NAM (a
//! separating basis vector contains one character and misses the other),
//! WAM (strict inequality of multiplicities), and BAM (no nontrivial
//! splitting of an irreducible with componentwise-boxed inner products).
//!
//! Checking only Hilbert-basis vectors is exact: every monomial vector is an
//! ℕ-combination of them, and the separation/inequality conditions pass to
//! some summand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::canonical_vector_cmp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationFlags {
    pub monomial: bool,
    pub nam: bool,
    pub wam: bool,
    pub bam: bool,
}

/// A witness table: entry (i, j) is the canonical index of a basis vector
/// separating the ordered character pair, if one exists.
pub type WitnessTable = Vec<Vec<Option<usize>>>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BamCounterexample {
    /// Index of the irreducible character being split.
    pub k: usize,
    /// The nonzero summand ψ with χ_k = ψ + (χ_k − ψ) and both parts boxed.
    pub psi: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub r: usize,
    pub flags: ClassificationFlags,
    pub nam_witnesses: WitnessTable,
    pub wam_witnesses: WitnessTable,
    pub bam_counterexample: Option<BamCounterexample>,
    pub implications_ok: bool,
    /// The basis the flags were computed from, for hand re-verification.
    pub basis: Vec<Vec<u32>>,
}

/// True iff the basis is exactly the r unit vectors.
pub fn is_monomial(basis: &[Vec<u32>], r: usize) -> bool {
    if basis.len() != r {
        return false;
    }
    let mut covered = vec![false; r];
    for v in basis {
        let support: Vec<usize> = (0..r).filter(|&i| v[i] > 0).collect();
        match support.as_slice() {
            [i] if v[*i] == 1 => covered[*i] = true,
            _ => return false,
        }
    }
    covered.into_iter().all(|c| c)
}

/// For every ordered pair (i, j), the first basis vector σ with σ(i) > 0 and
/// σ(j) = 0.
pub fn is_nam(basis: &[Vec<u32>], r: usize) -> (bool, WitnessTable) {
    witness_search(basis, r, |v, i, j| v[i] > 0 && v[j] == 0)
}

/// For every ordered pair (i, j), the first basis vector σ with σ(i) > σ(j).
pub fn is_wam(basis: &[Vec<u32>], r: usize) -> (bool, WitnessTable) {
    witness_search(basis, r, |v, i, j| v[i] > v[j])
}

fn witness_search(
    basis: &[Vec<u32>],
    r: usize,
    separates: impl Fn(&[u32], usize, usize) -> bool,
) -> (bool, WitnessTable) {
    let mut table: WitnessTable = vec![vec![None; r]; r];
    let mut all = true;
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            table[i][j] = basis.iter().position(|v| separates(v, i, j));
            all &= table[i][j].is_some();
        }
    }
    (all, table)
}

/// Fraction-free Gaussian elimination selecting a maximal set of linearly
/// independent rows.
fn independent_rows(rows: &[Vec<u32>]) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut work: Vec<(usize, Vec<i128>)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.iter().map(|&x| x as i128).collect()))
        .collect();
    let mut selected = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(src) = (row..work.len()).find(|&i| work[i].1[col] != 0) else {
            continue;
        };
        work.swap(row, src);
        let pivot = work[row].1.clone();
        for i in row + 1..work.len() {
            if work[i].1[col] == 0 {
                continue;
            }
            let (a, b) = (pivot[col], work[i].1[col]);
            for j in 0..ncols {
                work[i].1[j] = work[i].1[j] * a - pivot[j] * b;
            }
        }
        selected.push(work[row].0);
        row += 1;
        if row == work.len() {
            break;
        }
    }
    selected
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Adjugate of a square matrix: `adj · m = det(m) · I`.
fn adjugate_i128(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let cof = det_i128(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

/// Searches for virtual characters ψ with 0 ≤ ⟨ψ, σ_t⟩ ≤ σ_t(k) for every
/// basis vector σ_t, other than ψ = 0 and ψ = χ_k. The basis must have full
/// rank r, which makes the solution set finite.
///
/// Returns the counterexample with smallest k and lexicographically smallest
/// ψ, or `None` when every character splits trivially (BAM).
pub fn is_bam(basis: &[Vec<u32>], r: usize) -> Result<(bool, Option<BamCounterexample>)> {
    let rank = crate::monoid::lattice_rank(basis);
    if rank != r {
        return Err(Error::RankDeficiency { rank, dim: r });
    }
    let sel = independent_rows(basis);
    debug_assert_eq!(sel.len(), r);
    let b: Vec<Vec<i128>> = sel
        .iter()
        .map(|&i| basis[i].iter().map(|&x| x as i128).collect())
        .collect();
    let mut det = det_i128(&b);
    let mut adj = adjugate_i128(&b);
    if det < 0 {
        det = -det;
        for row in &mut adj {
            for cell in row.iter_mut() {
                *cell = -*cell;
            }
        }
    }

    use rayon::prelude::*;
    let hits: Vec<Option<BamCounterexample>> = (0..r)
        .into_par_iter()
        .map(|k| search_box(basis, &sel, &adj, det, r, k))
        .collect();
    match hits.into_iter().flatten().next() {
        Some(counter) => {
            // Independent re-verification of the box constraints.
            for sigma in basis {
                let dot: i64 = sigma
                    .iter()
                    .zip(counter.psi.iter())
                    .map(|(&s, &p)| s as i64 * p)
                    .sum();
                let upper = sigma[counter.k] as i64;
                if dot < 0 || dot > upper {
                    return Err(Error::Internal(
                        "counterexample fails independent re-verification".into(),
                    ));
                }
            }
            Ok((false, Some(counter)))
        }
        None => Ok((true, None)),
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    num_integer::Integer::div_floor(&a, &b)
}

fn div_ceil_i(a: i128, b: i128) -> i128 {
    num_integer::Integer::div_ceil(&a, &b)
}

fn search_box(
    basis: &[Vec<u32>],
    sel: &[usize],
    adj: &[Vec<i128>],
    det: i128,
    r: usize,
    k: usize,
) -> Option<BamCounterexample> {
    // ψ = B⁻¹·y with 0 ≤ y_t ≤ σ_{sel_t}(k): interval arithmetic on the
    // adjugate gives integer bounds per coordinate.
    let u: Vec<i128> = sel.iter().map(|&t| basis[t][k] as i128).collect();
    let mut lo = vec![0i128; r];
    let mut hi = vec![0i128; r];
    for i in 0..r {
        for j in 0..r {
            let term = adj[i][j] * u[j];
            if term >= 0 {
                hi[i] += term;
            } else {
                lo[i] += term;
            }
        }
    }
    let lo: Vec<i64> = lo.iter().map(|&x| div_ceil_i(x, det) as i64).collect();
    let hi: Vec<i64> = hi.iter().map(|&x| div_floor(x, det) as i64).collect();
    if lo.iter().zip(hi.iter()).any(|(l, h)| l > h) {
        return None;
    }

    // Depth-first over ψ coordinates with per-constraint interval pruning.
    let bounds: Vec<i64> = basis.iter().map(|s| s[k] as i64).collect();
    let mut psi = vec![0i64; r];
    let mut partial = vec![0i64; basis.len()];
    // rem_min/rem_max[t][depth] = extreme contribution of coordinates ≥ depth.
    let mut rem_min = vec![vec![0i64; r + 1]; basis.len()];
    let mut rem_max = vec![vec![0i64; r + 1]; basis.len()];
    for (t, sigma) in basis.iter().enumerate() {
        for depth in (0..r).rev() {
            let c = sigma[depth] as i64;
            rem_min[t][depth] = rem_min[t][depth + 1] + c * lo[depth];
            rem_max[t][depth] = rem_max[t][depth + 1] + c * hi[depth];
        }
    }

    fn dfs(
        depth: usize,
        r: usize,
        k: usize,
        basis: &[Vec<u32>],
        bounds: &[i64],
        lo: &[i64],
        hi: &[i64],
        psi: &mut Vec<i64>,
        partial: &mut Vec<i64>,
        rem_min: &[Vec<i64>],
        rem_max: &[Vec<i64>],
    ) -> Option<Vec<i64>> {
        if depth == r {
            let is_zero = psi.iter().all(|&x| x == 0);
            let is_unit_k = psi.iter().enumerate().all(|(i, &x)| x == i64::from(i == k));
            if is_zero || is_unit_k {
                return None;
            }
            return Some(psi.clone());
        }
        for value in lo[depth]..=hi[depth] {
            psi[depth] = value;
            let mut feasible = true;
            for (t, sigma) in basis.iter().enumerate() {
                let p = partial[t] + sigma[depth] as i64 * value;
                if p + rem_max[t][depth + 1] < 0 || p + rem_min[t][depth + 1] > bounds[t] {
                    feasible = false;
                    break;
                }
            }
            if !feasible {
                continue;
            }
            for (t, sigma) in basis.iter().enumerate() {
                partial[t] += sigma[depth] as i64 * value;
            }
            let found = dfs(
                depth + 1,
                r,
                k,
                basis,
                bounds,
                lo,
                hi,
                psi,
                partial,
                rem_min,
                rem_max,
            );
            for (t, sigma) in basis.iter().enumerate() {
                partial[t] -= sigma[depth] as i64 * value;
            }
            if found.is_some() {
                return found;
            }
        }
        psi[depth] = 0;
        None
    }

    dfs(
        0, r, k, basis, &bounds, &lo, &hi, &mut psi, &mut partial, &rem_min, &rem_max,
    )
    .map(|psi| BamCounterexample { k, psi })
}

/// The implication lattice between the four flags: monomial ⟹ nam,
/// monomial ⟹ bam, nam ⟹ wam, bam ⟹ wam.
pub fn check_implications(flags: &ClassificationFlags) -> bool {
    let implies = |a: bool, b: bool| !a || b;
    implies(flags.monomial, flags.nam)
        && implies(flags.monomial, flags.bam)
        && implies(flags.nam, flags.wam)
        && implies(flags.bam, flags.wam)
}

/// Runs all four classifiers on a Hilbert basis (canonically sorted first).
pub fn classify(basis: &[Vec<u32>], r: usize) -> Result<ClassificationReport> {
    let mut basis: Vec<Vec<u32>> = basis.to_vec();
    basis.sort_by(|a, b| canonical_vector_cmp(a, b));
    basis.dedup();
    let monomial = is_monomial(&basis, r);
    let (nam, nam_witnesses) = is_nam(&basis, r);
    let (wam, wam_witnesses) = is_wam(&basis, r);
    let (bam, bam_counterexample) = is_bam(&basis, r)?;
    let flags = ClassificationFlags {
        monomial,
        nam,
        wam,
        bam,
    };
    Ok(ClassificationReport {
        r,
        implications_ok: check_implications(&flags),
        flags,
        nam_witnesses,
        wam_witnesses,
        bam_counterexample,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units(r: usize) -> Vec<Vec<u32>> {
        (0..r)
            .map(|i| (0..r).map(|j| u32::from(i == j)).collect())
            .collect()
    }

    #[test]
    fn unit_basis_is_monomial_and_all_flags() {
        let basis = units(4);
        let report = classify(&basis, 4).unwrap();
        assert!(report.flags.monomial);
        assert!(report.flags.nam);
        assert!(report.flags.wam);
        assert!(report.flags.bam);
        assert!(report.implications_ok);
        assert!(report.bam_counterexample.is_none());
    }

    #[test]
    fn non_unit_vector_breaks_monomiality() {
        let mut basis = units(3);
        basis.push(vec![1, 1, 0]);
        assert!(!is_monomial(&basis, 3));
        // Still NAM/WAM/BAM: the units separate everything.
        let report = classify(&basis, 3).unwrap();
        assert!(report.flags.nam && report.flags.wam && report.flags.bam);
    }

    #[test]
    fn rank_deficiency_is_detected() {
        let basis = vec![vec![1, 0], vec![1, 0], vec![2, 0]];
        assert!(matches!(
            is_bam(&basis, 2),
            Err(Error::RankDeficiency { rank: 1, dim: 2 })
        ));
    }

    #[test]
    fn implication_lattice() {
        let ok = ClassificationFlags {
            monomial: false,
            nam: false,
            wam: true,
            bam: true,
        };
        assert!(check_implications(&ok));
        let all = ClassificationFlags {
            monomial: true,
            nam: true,
            wam: true,
            bam: true,
        };
        assert!(check_implications(&all));
        // NAM without WAM is impossible.
        let bad = ClassificationFlags {
            monomial: false,
            nam: true,
            wam: false,
            bam: false,
        };
        assert!(!check_implications(&bad));
    }

    /// With 0/1-valued bases, strict inequality and constituent separation
    /// coincide, so the WAM and NAM verdicts agree.
    #[test]
    fn zero_one_bases_have_wam_equal_nam() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let r = rng.gen_range(2..=5usize);
            let count = rng.gen_range(1..=7usize);
            let basis: Vec<Vec<u32>> = (0..count)
                .map(|_| (0..r).map(|_| rng.gen_range(0..=1u32)).collect())
                .collect();
            let (nam, _) = is_nam(&basis, r);
            let (wam, _) = is_wam(&basis, r);
            assert_eq!(nam, wam, "basis {basis:?}");
        }
    }

    #[test]
    fn bam_counterexample_when_characters_share_all_vectors() {
        // χ_1 and χ_2 appear only alongside χ_3: the split χ_3 = χ_1 +
        // (χ_3 − χ_1) keeps all inner products inside the box.
        let basis = vec![
            vec![0, 0, 1],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
        ];
        let (bam, counter) = is_bam(&basis, 3).unwrap();
        assert!(!bam);
        let c = counter.unwrap();
        assert_eq!(c.k, 2);
        // ψ and χ_k − ψ both satisfy the box constraints.
        for sigma in &basis {
            let dot: i64 = sigma
                .iter()
                .zip(c.psi.iter())
                .map(|(&s, &p)| s as i64 * p)
                .sum();
            assert!(dot >= 0 && dot <= sigma[c.k] as i64);
        }
        // The splitting pair is {χ_1, χ_3 − χ_1} up to which side is ψ.
        let complement: Vec<i64> = (0..3).map(|i| i64::from(i == 2) - c.psi[i]).collect();
        let pair = [c.psi.clone(), complement];
        assert!(pair.contains(&vec![1, 0, 0]) || pair.contains(&vec![0, 1, 0]));
    }

    /// These checks must also pass on sets that are not 0/1-valued.
    #[test]
    fn wam_strict_inequality_with_multiplicity_two() {
        // Mirrors the alternating-six pattern: the pair (0,1) is separated
        // only through multiplicities 2 > 1, never through a zero entry.
        let basis = vec![
            vec![1, 1, 1],
            vec![2, 1, 1],
            vec![1, 2, 1],
            vec![0, 0, 1],
        ];
        let (nam, _) = is_nam(&basis, 3);
        let (wam, w) = is_wam(&basis, 3);
        assert!(!nam);
        assert!(wam);
        assert_eq!(w[0][1], Some(1));
        assert_eq!(w[1][0], Some(2));
    }
}
