//! Property checks shared by the proptest suites and the acceptance run.

#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;

use pencil_svd::bench::{chordal, chordal_reciprocal};
use pencil_svd::eigen::{EigenClass, GeneralizedEigenvalue};
use pencil_svd::genmat::true_sigma_grid;
use pencil_svd::kcf::{partition_from_ranks, Ranks};
use pencil_svd::matcore::random::gaussian_complex;
use pencil_svd::matcore::{haar_unitary, seeded_rng, CMatrix, Dd};
use pencil_svd::recovery::group_quadruples;

/// Nonnegative values spread over many decades, with exact zeros.
pub fn magnitude() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), (-12.0f64..12.0).prop_map(|e| 10f64.powf(e)), 0.0f64..10.0]
}

pub fn chordal_axioms(a: f64, b: f64) -> Result<(), TestCaseError> {
    let ab = chordal(a, b);
    prop_assert_eq!(ab, chordal(b, a));
    prop_assert_eq!(chordal(a, a), 0.0);
    prop_assert!((0.0..=1.0).contains(&ab));
    if a != b {
        prop_assert!(ab > 0.0, "chordal({a}, {b}) = 0");
    }
    prop_assert!(chordal(a, f64::INFINITY) <= 1.0);
    Ok(())
}

/// Direct and reciprocal forms agree within 4ε on `[1e-8, 1e8]`.
pub fn chordal_forms_agree(a: f64, b: f64) -> Result<(), TestCaseError> {
    let d = (chordal(a, b) - chordal_reciprocal(a, b)).abs();
    prop_assert!(d <= 4.0 * f64::EPSILON, "{a} {b}: {d:e}");
    Ok(())
}

/// Exact quadruples `±a, ±ia` for each `σ = a²`, shuffled, regroup to the
/// same multiset of `σ`.
pub fn grouping_is_exact(roots: Vec<f64>, duplicate: usize, seed: u64) -> Result<(), TestCaseError> {
    let mut roots = roots;
    let extra = roots[duplicate % roots.len()];
    roots.push(extra);
    let mut values: Vec<GeneralizedEigenvalue> = roots
        .iter()
        .flat_map(|&a| {
            [Complex64::new(a, 0.0), Complex64::new(0.0, a), Complex64::new(-a, 0.0), Complex64::new(0.0, -a)]
        })
        .map(|alpha| GeneralizedEigenvalue { alpha, beta: Complex64::new(1.0, 0.0), class: EigenClass::FiniteNonzero })
        .collect();
    values.shuffle(&mut seeded_rng(seed));
    let quads = group_quadruples(&values).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut got: Vec<f64> = quads.iter().map(|q| q.sigma).collect();
    let mut want: Vec<f64> = roots.iter().map(|a| a * a).collect();
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    prop_assert_eq!(got, want);
    for q in &quads {
        prop_assert_eq!(q.phase_residual, 0.0);
        let first = q.values[0].norm();
        prop_assert!(q.values.iter().all(|z| z.norm() == first));
    }
    Ok(())
}

pub fn haar_is_unitary(n: usize, seed: u64) -> Result<(), TestCaseError> {
    let q = haar_unitary(n, &mut seeded_rng(seed));
    let e = (&(&q.adjoint() * &q) - &CMatrix::identity(n)).norm_max();
    prop_assert!(e <= 1e-14 * n as f64, "n = {n}: {e:e}");
    Ok(())
}

fn low_rank(rows: usize, cols: usize, rank: usize, seed: u64) -> CMatrix {
    let mut rng = seeded_rng(seed);
    let l = gaussian_complex(rows, rank, &mut rng);
    let r = gaussian_complex(rank, cols, &mut rng);
    &l * &r
}

/// Generic triplets with prescribed ranks: the partition derived from the
/// six numerical ranks satisfies every side identity and reproduces them.
pub fn partition_identities(dims: (usize, usize, usize, usize), ranks: (usize, usize, usize), seed: u64) -> Result<(), TestCaseError> {
    let (p, q, m, n) = dims;
    let ra = ranks.0 % (p.min(q) + 1);
    let rb = ranks.1 % (p.min(m) + 1);
    let rc = ranks.2 % (n.min(q) + 1);
    let a = low_rank(p, q, ra, seed);
    let b = low_rank(p, m, rb, seed ^ 1);
    let c = low_rank(n, q, rc, seed ^ 2);
    let r = Ranks::of(&a, &b, &c, None).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!((r.a, r.b, r.c), (ra, rb, rc));
    let part = partition_from_ranks(p, q, m, n, r).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(part.is_consistent());
    prop_assert_eq!(part.dims(), dims);
    prop_assert_eq!(part.ranks(), r);
    Ok(())
}

/// `σ_j σ_{n+1-j} = 1` on the generator grid.
pub fn sigma_grid_symmetric(n: usize, log_kappa: f64) -> Result<(), TestCaseError> {
    let kappa = 10f64.powf(log_kappa);
    let grid = true_sigma_grid(n, kappa).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for j in 0..n {
        let dev = (grid[j] * grid[n - 1 - j] - Dd::ONE).abs().to_f64();
        prop_assert!(dev <= 1e-28, "n = {n}, j = {j}: {dev:e}");
    }
    let ratio = (grid[0] / grid[n - 1]).to_f64();
    prop_assert!((ratio / kappa - 1.0).abs() <= 1e-14);
    Ok(())
}
