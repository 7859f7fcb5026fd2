//! Dense matrices over binary64 and double-double scalars.

pub mod dd;
pub mod dense;
pub mod factor;
pub mod random;
pub mod scalar;
pub mod textio;

pub use dd::Dd;
pub use dense::{CMatrix, CddMatrix, DdMatrix, Mat, RMatrix};
pub use factor::{
    cholesky, hermitian_eigen, householder_qr, inverse, null_space, singular_values, solve_linear, Lu,
};
pub use random::{derive_seed, haar_orthogonal, haar_unitary, seeded_rng, SeededRng};
pub use scalar::{Cdd, Real, Scalar};

/// Numerical rank together with the singular values it was read from.
#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    /// Nonincreasing singular values.
    pub values: Vec<f64>,
    /// Absolute threshold applied to `values`.
    pub tol: f64,
}

/// Default relative tolerance `max(rows, cols) * eps`.
pub fn default_rank_tol<T: Scalar>(m: &Mat<T>) -> f64 {
    m.rows().max(m.cols()) as f64 * T::Real::EPSILON
}

/// Counts singular values strictly above `tol_rel * s_max`.
pub fn rank_with_tol<T: Scalar>(m: &Mat<T>, tol_rel: Option<f64>) -> RankReport {
    let tol_rel = tol_rel.unwrap_or_else(|| default_rank_tol(m));
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or_else(<T::Real as Real>::zero);
    let tol = smax * <T::Real as Real>::from_f64(tol_rel);
    let rank = s.iter().filter(|&&x| x > tol).count();
    RankReport { rank, values: s.iter().map(|x| x.to_f64()).collect(), tol: tol.to_f64() }
}

/// `s_max / s_min` in the 2-norm; infinite for numerically singular input.
pub fn cond2_estimate<T: Scalar>(m: &Mat<T>) -> f64 {
    let s = singular_values(m);
    let (Some(&hi), Some(&lo)) = (s.first(), s.last()) else {
        return f64::INFINITY;
    };
    if lo.to_f64() <= f64::MIN_POSITIVE || s.len() < m.rows().max(m.cols()) {
        return f64::INFINITY;
    }
    (hi / lo).to_f64()
}

/// Largest singular value.
pub fn norm2<T: Scalar>(m: &Mat<T>) -> f64 {
    singular_values(m).first().map(|x| x.to_f64()).unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(rank_with_tol(&RMatrix::zeros(3, 2), None).rank, 0);
        assert_eq!(rank_with_tol(&RMatrix::identity(5), None).rank, 5);
    }

    #[test]
    fn rank_drops_tiny_singular_value() {
        let r = rank_with_tol(&RMatrix::from_diag(&[1.0, 1e-20]), None);
        assert_eq!(r.rank, 1);
        assert_eq!(r.values, vec![1.0, 1e-20]);
        assert!((r.tol - 2.0 * f64::EPSILON / 2.0).abs() < 1e-30);
    }

    #[test]
    fn condition_numbers() {
        assert_eq!(cond2_estimate(&RMatrix::identity(3)), 1.0);
        assert!((cond2_estimate(&RMatrix::from_diag(&[10.0, 1.0])) - 10.0).abs() < 1e-14);
        assert_eq!(cond2_estimate(&RMatrix::from_diag(&[1.0, 0.0])), f64::INFINITY);
    }
}
