use num_complex::Complex64;

use super::{Classifier, EigenSolution, GeneralizedEigenvalue};
use crate::error::{Error, Result};
use crate::matcore::factor::{solve_lower, solve_lower_adjoint};
use crate::matcore::{cholesky, hermitian_eigen};
use crate::pencil::Pencil;

/// Hermitian-definite path: `ℬ = L L*`, eigen-decomposition of
/// `L⁻¹ 𝒜 L⁻*`, vectors mapped back by `L⁻*`.
pub fn solve_hpd(p: &Pencil) -> Result<EigenSolution> {
    let a = &p.lhs;
    let b = &p.rhs;
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { what: "pencil right-hand side", expected: a.rows(), found: b.rows() });
    }
    let norm_a = a.norm_fro();
    let norm_b = b.norm_fro();
    if !a.is_hermitian(64.0 * f64::EPSILON * norm_a) {
        return Err(Error::InvalidArgument("left-hand matrix is not Hermitian".into()));
    }
    let l = cholesky(b)?;
    let n = a.rows();
    let half = solve_lower(&l, a);
    let reduced = solve_lower(&l, &half.adjoint());
    let (vals, y) = hermitian_eigen(&reduced)?;
    let mut x = solve_lower_adjoint(&l, &y);
    for k in 0..n {
        let norm = (0..n).map(|i| x[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for i in 0..n {
                x[(i, k)] /= norm;
            }
        }
    }
    let classifier = Classifier::backward(n, norm_a, norm_b);
    let one = Complex64::new(1.0, 0.0);
    let values = vals
        .into_iter()
        .map(|v| {
            let alpha = Complex64::new(v, 0.0);
            GeneralizedEigenvalue { alpha, beta: one, class: classifier.classify(alpha, one) }
        })
        .collect();
    Ok(EigenSolution { values, vectors: Some(x), backward_stable: false, norm_a, norm_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::solve_general;
    use crate::matcore::CMatrix;
    use crate::pencil::{build_aug_qsvd, Formulation};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn one_by_one() {
        let p = Pencil { lhs: CMatrix::from_diag(&[c(2.0)]), rhs: CMatrix::identity(1), formulation: Formulation::SqSvd, blocks: vec![1] };
        let sol = solve_hpd(&p).unwrap();
        assert!((sol.values[0].lambda() - c(2.0)).norm() < 1e-15);
    }

    #[test]
    fn augmented_pair_and_agreement_with_qz() {
        let p = build_aug_qsvd(&CMatrix::from_diag(&[c(2.0)]), &CMatrix::from_diag(&[c(1.0)])).unwrap();
        let hpd = solve_hpd(&p).unwrap();
        let mut a: Vec<f64> = hpd.values.iter().map(|v| v.lambda().re).collect();
        a.sort_by(f64::total_cmp);
        assert!((a[0] + 2.0).abs() < 1e-15 && (a[1] - 2.0).abs() < 1e-15);
        let gen = solve_general(&p).unwrap();
        let mut b: Vec<f64> = gen.values.iter().map(|v| v.lambda().re).collect();
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-12 * y.abs());
        }
    }

    #[test]
    fn indefinite_rhs_is_rejected() {
        let p = Pencil {
            lhs: CMatrix::identity(2),
            rhs: CMatrix::from_diag(&[c(1.0), c(0.0)]),
            formulation: Formulation::AugQsvd,
            blocks: vec![1, 1],
        };
        assert!(matches!(solve_hpd(&p), Err(Error::NotPositiveDefinite { .. })));
    }
}
