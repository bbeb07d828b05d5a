//! Order calculus for Artin L-functions at a fixed point s₀.
//!
//! Everything analytic is abstracted into an integer order vector d with
//! d_i = ord_{s=s₀} L(s, χ_i). Multiplicativity makes the order of L(s, φ)
//! for a character φ = Σ a_i χ_i the dot product d·a, and holomorphy of the
//! monomial (Hecke-induced) L-functions makes d admissible exactly when
//! σ·d ≥ 0 for every Hilbert-basis vector σ.
//!
//! The holomorphy monoid is {a ∈ ℕʳ : d·a ≥ 0}; its Hilbert basis is
//! computed by a completion procedure on the slack form d·a − s = 0 and is
//! cross-validated against bounded brute force in the tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::is_wam;
use crate::error::{Error, Result};
use crate::monoid::canonical_vector_cmp;

/// Hypothetical orders of the irreducible Artin L-functions at s₀.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderVector(pub Vec<i64>);

impl OrderVector {
    pub fn r(&self) -> usize {
        self.0.len()
    }
}

/// ord_{s=s₀} of the L-function with multiplicity vector `a`: the dot
/// product d·a.
pub fn l_order(d: &OrderVector, a: &[u32]) -> i64 {
    d.0.iter().zip(a.iter()).map(|(&di, &ai)| di * ai as i64).sum()
}

/// Admissibility: every monomial L-function is holomorphic at s₀.
/// Checking the Hilbert basis suffices because every monomial vector is an
/// ℕ-combination of basis vectors.
pub fn is_admissible(d: &OrderVector, basis: &[Vec<u32>]) -> bool {
    basis.iter().all(|sigma| l_order(d, sigma) >= 0)
}

/// Hilbert basis of {a ∈ ℕʳ : d·a ≥ 0} by completion.
///
/// The monoid is isomorphic to the solution monoid of d·a − s = 0 in
/// ℕ^(r+1) via a ↦ (a, d·a), whose minimal solutions are found by the
/// classic minimal-solutions completion: grow candidate vectors one unit at
/// a time in directions that push the defect toward zero, pruning anything
/// dominated by a solution already found.
///
/// If every component of d is negative the monoid is {0} and the basis is
/// empty.
pub fn hol_hilbert_basis(d: &OrderVector) -> Vec<Vec<u32>> {
    let r = d.r();
    if r == 0 {
        return Vec::new();
    }
    let mut v: Vec<i64> = d.0.clone();
    v.push(-1); // slack coordinate
    let n = r + 1;
    let defect = |x: &[u32]| -> i64 { v.iter().zip(x.iter()).map(|(&c, &xi)| c * xi as i64).sum() };

    let mut solutions: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    while !frontier.is_empty() {
        let mut next: Vec<Vec<u32>> = Vec::new();
        for x in &frontier {
            let def = defect(x);
            if def == 0 {
                if !solutions.iter().any(|s| le(s, x)) {
                    solutions.push(x.clone());
                }
                continue;
            }
            for i in 0..n {
                if def * v[i] < 0 {
                    let mut y = x.clone();
                    y[i] += 1;
                    if !solutions.iter().any(|s| le(s, &y)) && !next.contains(&y) {
                        next.push(y);
                    }
                }
            }
        }
        frontier = next;
    }
    // Keep only minimal solutions and project the slack away.
    let mut minimal: Vec<Vec<u32>> = solutions
        .iter()
        .filter(|s| !solutions.iter().any(|t| *t != **s && le(t, s)))
        .map(|s| s[..r].to_vec())
        .collect();
    minimal.sort_by(|a, b| canonical_vector_cmp(a, b));
    minimal.dedup();
    minimal
}

fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// Factoriality of a positive affine monoid given by its Hilbert basis:
/// equivalent to the basis being linearly independent over ℚ (a dependency
/// yields two distinct factorizations after clearing denominators).
///
/// The degenerate monoid {0} (empty basis) is reported non-factorial, the
/// convention used for order vectors that are negative in every component.
pub fn is_factorial(basis: &[Vec<u32>]) -> bool {
    if basis.is_empty() {
        return false;
    }
    crate::monoid::lattice_rank(basis) == basis.len()
}

/// Evidence for the equivalence between holomorphy everywhere and
/// factoriality of the holomorphy monoid, on one admissible order vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorialityEquivalence {
    pub d: Vec<i64>,
    /// Left side: every irreducible L-function is holomorphic (d ≥ 0).
    pub holomorphic_everywhere: bool,
    /// Right side: the holomorphy monoid is factorial.
    pub factorial: bool,
    pub pass: bool,
    pub hol_basis: Vec<Vec<u32>>,
}

/// Checks the biconditional "orders all nonnegative ⟺ holomorphy monoid
/// factorial" for one admissible order vector over a weak almost monomial
/// basis. Precondition failures are reported as errors, not as theorem
/// failures.
pub fn factoriality_equivalence_check(
    basis: &[Vec<u32>],
    r: usize,
    d: &OrderVector,
) -> Result<FactorialityEquivalence> {
    if d.r() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: d.r(),
        });
    }
    let (wam, _) = is_wam(basis, r);
    if !wam {
        return Err(Error::Precondition(
            "the basis is not weak almost monomial".into(),
        ));
    }
    if !is_admissible(d, basis) {
        return Err(Error::Precondition(format!(
            "order vector {:?} is not admissible for this basis",
            d.0
        )));
    }
    let hol_basis = hol_hilbert_basis(d);
    let holomorphic_everywhere = d.0.iter().all(|&x| x >= 0);
    let factorial = is_factorial(&hol_basis);
    Ok(FactorialityEquivalence {
        d: d.0.clone(),
        holomorphic_everywhere,
        factorial,
        pass: holomorphic_everywhere == factorial,
        hol_basis,
    })
}

/// Result of the simple-zero search: scenarios where χ_k has a first-order
/// zero, no other L-function vanishes, and yet some L-function has a pole.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimpleZeroReport {
    pub k: usize,
    pub bound: i64,
    /// True when no admissible pole scenario exists (the expected outcome
    /// for weak almost monomial bases).
    pub pass: bool,
    pub violation: Option<Vec<i64>>,
}

/// Exhaustive search for admissible d with d_k = 1, d_ℓ ≤ 0 for ℓ ≠ k, some
/// d_m < 0, and |d_i| ≤ bound. For a weak almost monomial basis the search
/// must come up empty: a simple zero of one L-function with all others
/// nonvanishing forces holomorphy everywhere.
pub fn simple_zero_check(
    basis: &[Vec<u32>],
    r: usize,
    k: usize,
    bound: i64,
) -> Result<SimpleZeroReport> {
    if k >= r {
        return Err(Error::DimensionMismatch { expected: r, got: k });
    }
    let (wam, _) = is_wam(basis, r);
    if !wam {
        return Err(Error::Precondition(
            "the basis is not weak almost monomial".into(),
        ));
    }
    let mut d = vec![0i64; r];
    d[k] = 1;
    let violation = simple_zero_dfs(basis, &mut d, 0, k, bound);
    Ok(SimpleZeroReport {
        k,
        bound,
        pass: violation.is_none(),
        violation,
    })
}

fn simple_zero_dfs(
    basis: &[Vec<u32>],
    d: &mut Vec<i64>,
    pos: usize,
    k: usize,
    bound: i64,
) -> Option<Vec<i64>> {
    if pos == d.len() {
        if d.iter().enumerate().any(|(i, &x)| i != k && x < 0)
            && basis
                .iter()
                .all(|s| s.iter().zip(d.iter()).map(|(&a, &b)| a as i64 * b).sum::<i64>() >= 0)
        {
            return Some(d.clone());
        }
        return None;
    }
    if pos == k {
        return simple_zero_dfs(basis, d, pos + 1, k, bound);
    }
    for value in -bound..=0 {
        d[pos] = value;
        // Prune: the best remaining completion sets all later entries to 0.
        let feasible = basis.iter().all(|s| {
            let fixed: i64 = s
                .iter()
                .zip(d.iter())
                .take(pos + 1)
                .map(|(&a, &b)| a as i64 * b)
                .sum();
            let k_term = if k > pos { s[k] as i64 } else { 0 };
            fixed + k_term >= 0
        });
        if feasible {
            if let Some(hit) = simple_zero_dfs(basis, d, pos + 1, k, bound) {
                return Some(hit);
            }
        }
    }
    d[pos] = 0;
    None
}

/// Rejection sampler for admissible order vectors in [−bound, bound]ʳ.
/// Returns up to `count` vectors using at most `max_draws` draws.
pub fn sample_admissible(
    basis: &[Vec<u32>],
    r: usize,
    bound: i64,
    count: usize,
    seed: u64,
    max_draws: usize,
) -> Vec<OrderVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..max_draws {
        if out.len() >= count {
            break;
        }
        let d = OrderVector((0..r).map(|_| rng.gen_range(-bound..=bound)).collect());
        if is_admissible(&d, basis) {
            out.push(d);
        }
    }
    out
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
    fn order_of_products() {
        let d = OrderVector(vec![1, -1]);
        assert_eq!(l_order(&d, &[2, 3]), -1);
        assert_eq!(l_order(&OrderVector(vec![0, 0]), &[5, 7]), 0);
        assert_eq!(l_order(&d, &[1, 0]), 1);
    }

    #[test]
    fn admissibility_examples() {
        let basis = units(3);
        assert!(is_admissible(&OrderVector(vec![0, 1, 2]), &basis));
        assert!(!is_admissible(&OrderVector(vec![-1, 1, 2]), &basis));
    }

    #[test]
    fn hol_basis_for_nonnegative_d_is_units() {
        let d = OrderVector(vec![0, 2, 1]);
        let mut expected = units(3);
        expected.sort_by(|a, b| canonical_vector_cmp(a, b));
        assert_eq!(hol_hilbert_basis(&d), expected);
    }

    /// Frozen values from bounded brute force over [0,3]² and [0,4]².
    #[test]
    fn hol_basis_small_fixtures() {
        assert_eq!(
            hol_hilbert_basis(&OrderVector(vec![-1, 1])),
            vec![vec![0, 1], vec![1, 1]]
        );
        assert_eq!(
            hol_hilbert_basis(&OrderVector(vec![-1, 2])),
            vec![vec![0, 1], vec![1, 1], vec![2, 1]]
        );
    }

    #[test]
    fn hol_basis_degenerate_all_negative() {
        assert!(hol_hilbert_basis(&OrderVector(vec![-1, -2])).is_empty());
        assert!(!is_factorial(&[]));
    }

    /// Brute-force cross-check: every point of the monoid in a box is an
    /// ℕ-combination of the basis, and every basis element satisfies the
    /// inequality.
    #[test]
    fn hol_basis_matches_bounded_bruteforce() {
        let cases = [
            vec![-1i64, 1],
            vec![-1, 2],
            vec![-2, 3],
            vec![1, -1],
            vec![-1, 1, -1],
            vec![-2, 1, 1],
            vec![0, -1, 2],
        ];
        for d_raw in cases {
            let d = OrderVector(d_raw.clone());
            let r = d.r();
            let basis = hol_hilbert_basis(&d);
            for b in &basis {
                assert!(l_order(&d, b) >= 0, "basis element violates d = {d_raw:?}");
            }
            // Every box point in the monoid must be reachable.
            let bound = 4u32;
            let mut point = vec![0u32; r];
            loop {
                if l_order(&d, &point) >= 0 {
                    assert!(
                        crate::monoid::is_member(&point, &basis).is_some(),
                        "point {point:?} not generated for d = {d_raw:?}"
                    );
                }
                let mut i = 0;
                while i < r {
                    point[i] += 1;
                    if point[i] <= bound {
                        break;
                    }
                    point[i] = 0;
                    i += 1;
                }
                if i == r {
                    break;
                }
            }
            // Minimality: no basis element is a sum of two nonzero members.
            for (idx, b) in basis.iter().enumerate() {
                let others: Vec<Vec<u32>> = basis
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != idx)
                    .map(|(_, v)| v.clone())
                    .collect();
                let reducible = basis.iter().any(|g| {
                    g != b
                        && g.iter().any(|&x| x > 0)
                        && le(g, b)
                        && crate::monoid::is_member(
                            &b.iter().zip(g.iter()).map(|(x, y)| x - y).collect::<Vec<_>>(),
                            &basis,
                        )
                        .is_some()
                });
                assert!(!reducible, "basis element {b:?} reducible for {d_raw:?}");
                let _ = others;
            }
        }
    }

    /// Exhaustive unique-factorization oracle on a box.
    fn factorization_count_oracle(basis: &[Vec<u32>], bound: u32) -> bool {
        let r = basis.first().map(|b| b.len()).unwrap_or(0);
        if r == 0 {
            return false;
        }
        // Count multiset factorizations of every box point with a canonical
        // generator order; factorial ⟺ every generated point has exactly 1.
        fn count(
            point: &[u32],
            basis: &[Vec<u32>],
            from: usize,
            memo: &mut std::collections::HashMap<(Vec<u32>, usize), u64>,
        ) -> u64 {
            if point.iter().all(|&x| x == 0) {
                return 1;
            }
            if from == basis.len() {
                return 0;
            }
            if let Some(&c) = memo.get(&(point.to_vec(), from)) {
                return c;
            }
            let mut total = count(point, basis, from + 1, memo);
            if basis[from].iter().zip(point.iter()).all(|(a, b)| a <= b) {
                let reduced: Vec<u32> = point
                    .iter()
                    .zip(basis[from].iter())
                    .map(|(a, b)| a - b)
                    .collect();
                total += count(&reduced, basis, from, memo);
            }
            memo.insert((point.to_vec(), from), total.min(2));
            total.min(2)
        }
        let mut memo = std::collections::HashMap::new();
        let mut point = vec![0u32; r];
        loop {
            let c = count(&point, basis, 0, &mut memo);
            if c > 1 {
                return false;
            }
            let mut i = 0;
            while i < r {
                point[i] += 1;
                if point[i] <= bound {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
            if i == r {
                return true;
            }
        }
    }

    #[test]
    fn factoriality_matches_oracle() {
        let cases: Vec<Vec<Vec<u32>>> = vec![
            units(3),
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 1], vec![1, 1], vec![2, 1]],
            vec![vec![1, 0, 0], vec![0, 1, 1]],
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
            vec![vec![2, 0], vec![0, 3]],
        ];
        for basis in cases {
            assert_eq!(
                is_factorial(&basis),
                factorization_count_oracle(&basis, 5),
                "basis {basis:?}"
            );
        }
        // The classic double factorization: (2,2) = (0,1)+(2,1) = 2·(1,1).
        assert!(!is_factorial(&[vec![0, 1], vec![1, 1], vec![2, 1]]));
    }

    #[test]
    fn equivalence_check_on_unit_basis() {
        let basis = units(3);
        let d = OrderVector(vec![0, 0, 0]);
        let res = factoriality_equivalence_check(&basis, 3, &d).unwrap();
        assert!(res.pass && res.holomorphic_everywhere && res.factorial);
        // Inadmissible vectors are precondition errors.
        let bad = OrderVector(vec![-1, 0, 0]);
        assert!(matches!(
            factoriality_equivalence_check(&basis, 3, &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn simple_zero_vacuous_for_trivial_group() {
        let basis = units(1);
        let report = simple_zero_check(&basis, 1, 0, 3).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn simple_zero_fails_without_wam() {
        // A non-WAM basis: nothing separates the pair (0,1).
        let basis = vec![vec![1, 1]];
        assert!(matches!(
            simple_zero_check(&basis, 2, 0, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sampler_is_deterministic_and_admissible() {
        let basis = units(4);
        let a = sample_admissible(&basis, 4, 3, 25, 42, 100_000);
        let b = sample_admissible(&basis, 4, 3, 25, 42, 100_000);
        assert_eq!(a, b);
        assert_eq!(a.len(), 25);
        for d in &a {
            assert!(is_admissible(d, &basis));
        }
    }
}
