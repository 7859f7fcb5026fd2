//! Diagonalization of the 4×4 cross-product-free pencil of one singular value.

use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, Cdd, CddMatrix, Dd};
use crate::pencil::{build_cpf_qsvd, build_cpf_rsvd, build_cpf_svd, Pencil};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaKind {
    Osvd,
    Qsvd,
    Rsvd,
}

#[derive(Clone, Debug)]
pub struct LemmaReduction {
    pub sigma: f64,
    /// Right transformation `𝒳`.
    pub x: CMatrix,
    /// Left transformation `𝒴`.
    pub y: CMatrix,
    pub pencil: Pencil,
    /// `diag(√σ, -√σ, i√σ, -i√σ)`.
    pub target: CMatrix,
    /// `max |𝒴*𝒜𝒳 - target| / √σ`.
    pub error_const: f64,
    /// `max |𝒴*ℬ𝒳 - I|`.
    pub error_lambda: f64,
}

fn half_unitary(pattern: [[(i8, i8); 4]; 4]) -> CddMatrix {
    let h = Dd::from_f64(0.5);
    CddMatrix::from_fn(4, 4, |i, j| {
        let (re, im) = pattern[i][j];
        Complex::new(h.mul_f64(re as f64), h.mul_f64(im as f64))
    })
}

/// `(𝒳, 𝒴)` in double-double for the 4×4 pencil with `α, β, γ > 0`, so that
/// `𝒴*𝒜𝒳 = diag(√σ, -√σ, i√σ, -i√σ)` and `𝒴*ℬ𝒳 = I` with `σ = α / (βγ)`.
pub fn lemma_factors(alpha: Dd, beta: Dd, gamma: Dd) -> (CddMatrix, CddMatrix) {
    const O: (i8, i8) = (1, 0);
    const M: (i8, i8) = (-1, 0);
    const I: (i8, i8) = (0, 1);
    const J: (i8, i8) = (0, -1);
    let x0 = half_unitary([[O, M, J, I], [O, M, I, J], [O, O, O, O], [O, O, M, M]]);
    let y0 = half_unitary([[O, O, O, O], [O, O, M, M], [O, M, J, I], [O, M, I, J]]);
    let sigma = alpha / (beta * gamma);
    let root = sigma.sqrt();
    let quarter = root.sqrt().recip();
    let d = [beta.recip() * quarter, gamma.recip() * quarter, root * quarter, root * quarter];
    let scale = |m: &CddMatrix| {
        CddMatrix::from_fn(4, 4, |i, j| {
            let z: Cdd = m[(i, j)];
            Complex::new(z.re * d[i], z.im * d[i])
        })
    };
    (scale(&x0), scale(&y0))
}

/// Builds the 4×4 pencil of `kind`, its transformations and the
/// entrywise residuals of the reduction in binary64.
pub fn lemma_reduce(kind: LemmaKind, alpha: f64, beta: f64, gamma: f64) -> Result<LemmaReduction> {
    let positive = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {v}")))
        }
    };
    positive("alpha", alpha)?;
    let (beta, gamma) = match kind {
        LemmaKind::Osvd => (1.0, 1.0),
        LemmaKind::Qsvd => {
            positive("gamma", gamma)?;
            (1.0, gamma)
        }
        LemmaKind::Rsvd => {
            positive("beta", beta)?;
            positive("gamma", gamma)?;
            (beta, gamma)
        }
    };
    let s = |v: f64| CMatrix::from_diag(&[Complex64::new(v, 0.0)]);
    let pencil = match kind {
        LemmaKind::Osvd => build_cpf_svd(&s(alpha))?,
        LemmaKind::Qsvd => build_cpf_qsvd(&s(alpha), &s(gamma))?,
        LemmaKind::Rsvd => build_cpf_rsvd(&s(alpha), &s(beta), &s(gamma))?,
    };
    let (xd, yd) = lemma_factors(Dd::from_f64(alpha), Dd::from_f64(beta), Dd::from_f64(gamma));
    let sigma_dd = Dd::from_f64(alpha) / (Dd::from_f64(beta) * Dd::from_f64(gamma));
    let root = sigma_dd.sqrt();
    let x = xd.round();
    let y = yd.round();

    // residuals of the rounded transformations, evaluated without further rounding
    let (xe, ye) = (x.to_cdd(), y.to_cdd());
    let a = ye.adjoint().matmul(&pencil.lhs.to_cdd()).matmul(&xe);
    let b = ye.adjoint().matmul(&pencil.rhs.to_cdd()).matmul(&xe);
    let zero = Dd::ZERO;
    let target_dd = CddMatrix::from_diag(&[
        Complex::new(root, zero),
        Complex::new(-root, zero),
        Complex::new(zero, root),
        Complex::new(zero, -root),
    ]);
    let err = |m: &CddMatrix, t: &CddMatrix| {
        (m - t).as_slice().iter().map(|z| (z.re * z.re + z.im * z.im).sqrt().to_f64()).fold(0.0, f64::max)
    };
    let error_const = err(&a, &target_dd) / root.to_f64();
    let error_lambda = err(&b, &CddMatrix::identity(4));
    Ok(LemmaReduction {
        sigma: sigma_dd.to_f64(),
        x,
        y,
        pencil,
        target: target_dd.round(),
        error_const,
        error_lambda,
    })
}
