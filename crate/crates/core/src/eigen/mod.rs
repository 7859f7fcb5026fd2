//! Generalized eigenvalues of dense pencils and their classification into
//! finite-nonzero, zero, infinite and indeterminate pairs.

mod hpd;
pub mod qz;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{householder_qr, null_space, CMatrix};
use crate::pencil::Pencil;

pub use hpd::solve_hpd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigenClass {
    FiniteNonzero,
    Zero,
    Infinite,
    Indeterminate,
}

impl EigenClass {
    pub fn tag(self) -> &'static str {
        match self {
            EigenClass::FiniteNonzero => "finite",
            EigenClass::Zero => "zero",
            EigenClass::Infinite => "infinite",
            EigenClass::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for EigenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `λ = alpha / beta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralizedEigenvalue {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub class: EigenClass,
}

impl GeneralizedEigenvalue {
    /// The eigenvalue as a complex number; infinite and indeterminate pairs
    /// give an infinite or NaN value.
    pub fn lambda(&self) -> Complex64 {
        match self.class {
            EigenClass::Infinite => Complex64::new(f64::INFINITY, 0.0),
            EigenClass::Indeterminate => Complex64::new(f64::NAN, f64::NAN),
            EigenClass::Zero => Complex64::new(0.0, 0.0),
            EigenClass::FiniteNonzero => self.alpha / self.beta,
        }
    }

    /// `alpha / beta` regardless of class.
    pub fn ratio(&self) -> Complex64 {
        self.alpha / self.beta
    }
}

/// How `(alpha, beta)` pairs are split into classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Classifier {
    /// `|alpha| <= zero` marks a zero eigenvalue, `|beta| <= infinite` an
    /// infinite one, both together an indeterminate pair.
    Absolute { zero: f64, infinite: f64 },
    /// Pairs with both components below `floor` are indeterminate; otherwise
    /// `|λ| <= ratio` is zero and `|1/λ| <= ratio` is infinite.
    Structural { floor: f64, ratio: f64 },
}

impl Classifier {
    /// Backward-error floors `k ε max(‖𝒜‖_F, ‖ℬ‖_F)`.
    pub fn backward(dim: usize, norm_a: f64, norm_b: f64) -> Self {
        let tau = dim.max(1) as f64 * f64::EPSILON * norm_a.max(norm_b);
        Classifier::Absolute { zero: tau, infinite: tau }
    }

    /// Wider thresholds that also absorb the `ε^{1/k}` splitting of
    /// nontrivial Jordan and infinite blocks.
    pub fn structural(norm_a: f64, norm_b: f64) -> Self {
        Classifier::Structural {
            floor: f64::EPSILON.sqrt() * norm_a.max(norm_b),
            ratio: f64::EPSILON.powf(0.25),
        }
    }

    pub fn classify(&self, alpha: Complex64, beta: Complex64) -> EigenClass {
        let (a, b) = (alpha.norm(), beta.norm());
        match *self {
            Classifier::Absolute { zero, infinite } => match (a <= zero, b <= infinite) {
                (true, true) => EigenClass::Indeterminate,
                (true, false) => EigenClass::Zero,
                (false, true) => EigenClass::Infinite,
                (false, false) => EigenClass::FiniteNonzero,
            },
            Classifier::Structural { floor, ratio } => {
                if a <= floor && b <= floor {
                    EigenClass::Indeterminate
                } else if a <= ratio * b {
                    EigenClass::Zero
                } else if b <= ratio * a {
                    EigenClass::Infinite
                } else {
                    EigenClass::FiniteNonzero
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub finite_nonzero: usize,
    pub zero: usize,
    pub infinite: usize,
    pub indeterminate: usize,
}

#[derive(Clone, Debug)]
pub struct EigenSolution {
    pub values: Vec<GeneralizedEigenvalue>,
    /// Unit-norm right eigenvectors, column `k` paired with `values[k]`.
    pub vectors: Option<CMatrix>,
    pub backward_stable: bool,
    pub norm_a: f64,
    pub norm_b: f64,
}

impl EigenSolution {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn counts(&self) -> ClassCounts {
        let mut c = ClassCounts::default();
        for v in &self.values {
            match v.class {
                EigenClass::FiniteNonzero => c.finite_nonzero += 1,
                EigenClass::Zero => c.zero += 1,
                EigenClass::Infinite => c.infinite += 1,
                EigenClass::Indeterminate => c.indeterminate += 1,
            }
        }
        c
    }

    /// The same pairs under a different classifier.
    pub fn reclassify(&self, classifier: Classifier) -> EigenSolution {
        let mut out = self.clone();
        for v in &mut out.values {
            v.class = classifier.classify(v.alpha, v.beta);
        }
        out
    }

    pub fn structural(&self) -> EigenSolution {
        self.reclassify(Classifier::structural(self.norm_a, self.norm_b))
    }

    pub fn vector(&self, k: usize) -> Option<Vec<Complex64>> {
        self.vectors.as_ref().map(|v| v.column(k))
    }

    /// Indices of the finite nonzero eigenvalues.
    pub fn finite_indices(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&k| self.values[k].class == EigenClass::FiniteNonzero).collect()
    }
}

/// Full spectrum and right eigenvectors by complex QZ.
pub fn solve_general(p: &Pencil) -> Result<EigenSolution> {
    solve_pair(&p.lhs, &p.rhs, true)
}

/// Same as [`solve_general`] on a bare matrix pair.
///
/// Directions in the common right and left null spaces of `a` and `b` (the
/// zero blocks of a singular pencil) are split off by a unitary equivalence
/// before QZ runs on the remaining part; they are returned last as `(0, 0)`
/// pairs.
pub fn solve_pair(a: &CMatrix, b: &CMatrix, want_vectors: bool) -> Result<EigenSolution> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { what: "pencil right-hand side", expected: a.rows(), found: b.rows() });
    }
    let k = a.rows();
    let norm_a = a.norm_fro();
    let norm_b = b.norm_fro();
    let classifier = Classifier::backward(k, norm_a, norm_b);
    let tol = k.max(1) as f64 * f64::EPSILON * norm_a.max(norm_b);
    let (left, right) = if k == 0 { (CMatrix::zeros(0, 0), CMatrix::zeros(0, 0)) } else { common_null_spaces(a, b, tol) };
    let s = left.cols().min(right.cols());
    let pair = |alpha, beta| GeneralizedEigenvalue { alpha, beta, class: classifier.classify(alpha, beta) };

    if s == 0 {
        let schur = qz::qz(a, b)?;
        let values = schur.alpha.iter().zip(&schur.beta).map(|(&al, &be)| pair(al, be)).collect();
        let vectors = want_vectors.then(|| qz::right_eigenvectors(&schur));
        return Ok(EigenSolution { values, vectors, backward_stable: true, norm_a, norm_b });
    }

    let (ql, qr) = (complete_basis(&left, s), complete_basis(&right, s));
    let r = k - s;
    let at = ql.adjoint().matmul(a).matmul(&qr);
    let bt = ql.adjoint().matmul(b).matmul(&qr);
    let zero = Complex64::new(0.0, 0.0);
    let mut values = Vec::with_capacity(k);
    let mut vectors = want_vectors.then(|| CMatrix::zeros(k, k));
    if r > 0 {
        let schur = qz::qz(&at.block(0, 0, r, r), &bt.block(0, 0, r, r))?;
        values.extend(schur.alpha.iter().zip(&schur.beta).map(|(&al, &be)| pair(al, be)));
        if let Some(v) = vectors.as_mut() {
            let w = qr.block(0, 0, k, r).matmul(&qz::right_eigenvectors(&schur));
            v.set_block(0, 0, &w);
        }
    }
    values.extend((0..s).map(|_| pair(zero, zero)));
    if let Some(v) = vectors.as_mut() {
        v.set_block(0, r, &qr.block(0, r, k, s));
    }
    Ok(EigenSolution { values, vectors, backward_stable: true, norm_a, norm_b })
}

/// Orthonormal bases of the common left and right null spaces; the left
/// one is skipped when the right one is trivial.
fn common_null_spaces(a: &CMatrix, b: &CMatrix, tol: f64) -> (CMatrix, CMatrix) {
    let right = null_space(&a.vstack(b), tol);
    if right.cols() == 0 {
        return (CMatrix::zeros(a.rows(), 0), right);
    }
    (null_space(&a.adjoint().vstack(&b.adjoint()), tol), right)
}

/// A unitary matrix whose last `s` columns span the first `s` columns of `n`.
fn complete_basis(n: &CMatrix, s: usize) -> CMatrix {
    let k = n.rows();
    let (q, _) = householder_qr(&n.block(0, 0, k, s));
    let order: Vec<usize> = (s..k).chain(0..s).collect();
    q.select(&(0..k).collect::<Vec<_>>(), &order)
}
