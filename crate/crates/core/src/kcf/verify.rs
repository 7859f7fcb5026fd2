//! Explicit reduction of a cross-product-free pencil to its predicted
//! canonical form, carried out in double-double.

use num_complex::Complex;

use super::lemma::lemma_factors;
use super::RsvdPartition;
use crate::error::{Error, Result};
use crate::matcore::{CMatrix, Cdd, CddMatrix, Dd};
use crate::pencil::{Formulation, Pencil};

/// Decomposition factors with `X*AY = Σα`, `X*BU = Σβ`, `V*CY = Σγ`, and the
/// diagonal entries of the regular block (`β = γ = 1` where absent).
#[derive(Clone, Debug)]
pub struct ReductionFactors {
    pub x: CddMatrix,
    pub y: CddMatrix,
    pub u: CddMatrix,
    pub v: CddMatrix,
    pub alpha: Vec<Dd>,
    pub beta: Vec<Dd>,
    pub gamma: Vec<Dd>,
}

/// Largest entrywise deviations from the predicted form, for the constant
/// (`λ⁰`) and the `λ¹` coefficient, before and after the 4×4 reductions.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub stage1_const: f64,
    pub stage1_lambda: f64,
    pub final_const: f64,
    pub final_lambda: f64,
    /// `max(‖𝒜‖_F, ‖ℬ‖_F)` of the input pencil.
    pub scale: f64,
    /// The fully transformed pencil, rounded.
    pub transformed: (CMatrix, CMatrix),
}

impl VerificationReport {
    pub fn max_error(&self) -> f64 {
        self.stage1_const.max(self.stage1_lambda).max(self.final_const).max(self.final_lambda)
    }

    pub fn relative(&self) -> f64 {
        self.max_error() / self.scale
    }

    pub fn passes(&self, tol_rel: f64) -> bool {
        self.relative() <= tol_rel
    }
}

#[derive(Clone, Copy, Debug)]
enum Piece {
    Zero(usize),
    N1(usize),
    N3(usize),
    J2(usize, usize),
    Sigma(usize),
}

impl Piece {
    fn size(self) -> usize {
        match self {
            Piece::Zero(s) | Piece::N1(s) => s,
            Piece::N3(k) => 3 * k,
            Piece::J2(a, b) => 2 * (a + b),
            Piece::Sigma(k) => 4 * k,
        }
    }
}

struct Layout {
    blocks: Vec<usize>,
    pi_x: &'static [usize],
    pi_y: &'static [usize],
    pieces: Vec<Piece>,
}

const SVD_X: [usize; 8] = [2, 6, 4, 8, 1, 3, 5, 7];
const SVD_Y: [usize; 8] = [6, 2, 8, 4, 1, 3, 5, 7];
const QSVD_X: [usize; 13] = [4, 13, 7, 9, 2, 3, 10, 5, 11, 1, 6, 8, 12];
const QSVD_Y: [usize; 13] = [4, 13, 2, 9, 7, 10, 3, 11, 5, 1, 6, 8, 12];
const RSVD_X: [usize; 20] = [6, 7, 12, 4, 15, 20, 10, 14, 2, 3, 19, 11, 5, 16, 8, 17, 1, 9, 13, 18];
const RSVD_Y: [usize; 20] = [6, 7, 4, 12, 15, 20, 2, 14, 10, 11, 19, 3, 16, 5, 17, 8, 1, 9, 13, 18];

fn layout(kind: Formulation, part: &RsvdPartition) -> Result<Layout> {
    let (p, q, m, n) = (part.p, part.q, part.m, part.n);
    match kind {
        Formulation::CpfSvd => {
            let (p1, p2, q2) = (p[0], p[4], q[1]);
            Ok(Layout {
                blocks: vec![p1, p2, p1, q2, p1, p2, p1, q2],
                pi_x: &SVD_X,
                pi_y: &SVD_Y,
                pieces: vec![Piece::J2(p2, q2), Piece::Sigma(p1)],
            })
        }
        Formulation::CpfQsvd => {
            let (p1, p2, p3) = (p[0], p[1], p[4]);
            let (q1, q2, q3, q4) = (q[0], q[1], q[2], q[3]);
            let (n1, n2, n3) = (n[0], n[1], n[3]);
            Ok(Layout {
                blocks: vec![p1, p2, p3, q1, q2, q3, q4, p1, p2, p3, n1, n2, n3],
                pi_x: &QSVD_X,
                pi_y: &QSVD_Y,
                pieces: vec![Piece::Zero(q1), Piece::N1(n3), Piece::N3(p2), Piece::J2(p3, q2), Piece::Sigma(p1)],
            })
        }
        Formulation::CpfRsvd => {
            let mut blocks = Vec::with_capacity(20);
            blocks.extend_from_slice(&p);
            blocks.extend_from_slice(&q);
            blocks.extend_from_slice(&m);
            blocks.extend_from_slice(&n);
            Ok(Layout {
                blocks,
                pi_x: &RSVD_X,
                pi_y: &RSVD_Y,
                pieces: vec![
                    Piece::Zero(p[5] + q[0]),
                    Piece::N1(p[3] + q[5] + m[2] + n[3]),
                    Piece::N3(p[1]),
                    Piece::N3(p[2]),
                    Piece::J2(p[4], q[1]),
                    Piece::Sigma(p[0]),
                ],
            })
        }
        other => Err(Error::Unsupported(format!("explicit reduction of {other}"))),
    }
}

fn permutation(blocks: &[usize], pi: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0];
    for &b in blocks {
        offsets.push(offsets.last().unwrap() + b);
    }
    pi.iter().flat_map(|&k| offsets[k - 1]..offsets[k]).collect()
}

fn one() -> Cdd {
    Complex::new(Dd::ONE, Dd::ZERO)
}

fn real(x: Dd) -> Cdd {
    Complex::new(x, Dd::ZERO)
}

fn set_identity(m: &mut CddMatrix, r0: usize, c0: usize, k: usize, value: Cdd) {
    for i in 0..k {
        m[(r0 + i, c0 + i)] = value;
    }
}

/// Predicted `(λ⁰, λ¹)` coefficients; the regular part is either the
/// permuted 4×4 pattern or its diagonalization.
fn canonical(pieces: &[Piece], f: &ReductionFactors, diagonal: bool) -> (CddMatrix, CddMatrix) {
    let dim: usize = pieces.iter().map(|p| p.size()).sum();
    let mut a = CddMatrix::zeros(dim, dim);
    let mut b = CddMatrix::zeros(dim, dim);
    let mut o = 0;
    for &piece in pieces {
        match piece {
            Piece::Zero(_) => {}
            Piece::N1(s) => set_identity(&mut a, o, o, s, one()),
            Piece::N3(k) => {
                set_identity(&mut a, o, o, 3 * k, one());
                set_identity(&mut b, o, o + k, k, one());
                set_identity(&mut b, o + k, o + 2 * k, k, one());
            }
            Piece::J2(s, t) => {
                set_identity(&mut a, o, o + s, s, one());
                set_identity(&mut a, o + 2 * s, o + 2 * s + t, t, one());
                set_identity(&mut b, o, o, 2 * (s + t), one());
            }
            Piece::Sigma(k) => {
                for j in 0..k {
                    let (al, be, ga) = (f.alpha[j], f.beta[j], f.gamma[j]);
                    if diagonal {
                        let r = (al / (be * ga)).sqrt();
                        let c = o + 4 * j;
                        a[(c, c)] = real(r);
                        a[(c + 1, c + 1)] = real(-r);
                        a[(c + 2, c + 2)] = Complex::new(Dd::ZERO, r);
                        a[(c + 3, c + 3)] = Complex::new(Dd::ZERO, -r);
                        set_identity(&mut b, c, c, 4, one());
                    } else {
                        let at = |r: usize| o + r * k + j;
                        a[(at(0), at(1))] = real(al);
                        a[(at(1), at(0))] = real(al);
                        a[(at(2), at(2))] = one();
                        a[(at(3), at(3))] = one();
                        b[(at(0), at(2))] = real(be);
                        b[(at(2), at(0))] = real(be);
                        b[(at(1), at(3))] = real(ga);
                        b[(at(3), at(1))] = real(ga);
                    }
                }
            }
        }
        o += piece.size();
    }
    (a, b)
}

fn max_abs_diff(m: &CddMatrix, t: &CddMatrix) -> f64 {
    (m - t).as_slice().iter().map(|z| (z.re * z.re + z.im * z.im).sqrt().to_f64()).fold(0.0, f64::max)
}

/// Applies `diag(x, y, u, v)`, the block permutations and the 4×4
/// reductions to `p`, comparing each stage with the predicted form.
pub fn verify_reduction(p: &Pencil, f: &ReductionFactors, part: &RsvdPartition) -> Result<VerificationReport> {
    let lay = layout(p.formulation, part)?;
    let (dp, dq, dm, dn) = part.dims();
    let expect = [("x", dp, &f.x), ("y", dq, &f.y), ("u", dm, &f.u), ("v", dn, &f.v)];
    for (k, (what, size, mat)) in expect.into_iter().enumerate() {
        if p.blocks.get(k) != Some(&size) {
            return Err(Error::DimensionMismatch { what: "pencil block", expected: size, found: p.blocks.get(k).copied().unwrap_or(0) });
        }
        if mat.shape() != (size, size) {
            return Err(Error::DimensionMismatch { what, expected: size, found: mat.rows() });
        }
    }
    for (what, v) in [("alpha", &f.alpha), ("beta", &f.beta), ("gamma", &f.gamma)] {
        if v.len() != part.p[0] {
            return Err(Error::InvalidArgument(format!("{what} has {} entries, expected {}", v.len(), part.p[0])));
        }
    }

    let t0 = CddMatrix::block_diag(&[&f.x, &f.y, &f.u, &f.v]);
    let lhs = t0.adjoint().matmul(&p.lhs.to_cdd()).matmul(&t0);
    let rhs = t0.adjoint().matmul(&p.rhs.to_cdd()).matmul(&t0);
    let cols = permutation(&lay.blocks, lay.pi_x);
    let rows = permutation(&lay.blocks, lay.pi_y);
    let lhs = lhs.select(&rows, &cols);
    let rhs = rhs.select(&rows, &cols);

    let (pa, pb) = canonical(&lay.pieces, f, false);
    let stage1_const = max_abs_diff(&lhs, &pa);
    let stage1_lambda = max_abs_diff(&rhs, &pb);

    // the regular piece is last
    let k = part.p[0];
    let o = lhs.rows() - 4 * k;
    let mut x2 = CddMatrix::block_diag(&[&CddMatrix::identity(o), &CddMatrix::zeros(4 * k, 4 * k)]);
    let mut y2 = x2.clone();
    for j in 0..k {
        let (xl, yl) = lemma_factors(f.alpha[j], f.beta[j], f.gamma[j]);
        for r in 0..4 {
            for c in 0..4 {
                x2[(o + r * k + j, o + 4 * j + c)] = xl[(r, c)];
                y2[(o + r * k + j, o + 4 * j + c)] = yl[(r, c)];
            }
        }
    }
    let lhs = y2.adjoint().matmul(&lhs).matmul(&x2);
    let rhs = y2.adjoint().matmul(&rhs).matmul(&x2);
    let (fa, fb) = canonical(&lay.pieces, f, true);
    Ok(VerificationReport {
        stage1_const,
        stage1_lambda,
        final_const: max_abs_diff(&lhs, &fa),
        final_lambda: max_abs_diff(&rhs, &fb),
        scale: p.lhs.norm_fro().max(p.rhs.norm_fro()),
        transformed: (lhs.round(), rhs.round()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::build_cpf_svd;
    use num_complex::Complex64;

    #[test]
    fn diagonal_svd_example() {
        let a = CMatrix::from_diag(&[Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)]);
        let p = build_cpf_svd(&a).unwrap();
        let id = CddMatrix::identity(2);
        let f = ReductionFactors {
            x: id.clone(),
            y: id.clone(),
            u: id.clone(),
            v: id,
            alpha: vec![Dd::from_f64(3.0), Dd::from_f64(4.0)],
            beta: vec![Dd::ONE; 2],
            gamma: vec![Dd::ONE; 2],
        };
        let r = verify_reduction(&p, &f, &RsvdPartition::svd(2, 2, 2)).unwrap();
        assert!(r.stage1_const == 0.0 && r.stage1_lambda == 0.0);
        assert!(r.relative() <= 1e-28, "{r:?}");
        let d = r.transformed.0.diag();
        assert!((d[6] - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn rank_deficient_svd_has_nilpotent_piece() {
        let a = CMatrix::from_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let p = build_cpf_svd(&a).unwrap();
        let id = CddMatrix::identity(2);
        let f = ReductionFactors {
            x: id.clone(),
            y: id.clone(),
            u: id.clone(),
            v: id,
            alpha: vec![Dd::from_f64(2.0)],
            beta: vec![Dd::ONE],
            gamma: vec![Dd::ONE],
        };
        let r = verify_reduction(&p, &f, &RsvdPartition::svd(2, 2, 1)).unwrap();
        assert!(r.relative() <= 1e-28, "{r:?}");
    }

    #[test]
    fn augmented_forms_are_unsupported() {
        let a = CMatrix::identity(1);
        let p = crate::pencil::build_aug_svd(&a).unwrap();
        let id = CddMatrix::identity(1);
        let f = ReductionFactors {
            x: id.clone(),
            y: id.clone(),
            u: id.clone(),
            v: id,
            alpha: vec![Dd::ONE],
            beta: vec![Dd::ONE],
            gamma: vec![Dd::ONE],
        };
        assert!(matches!(verify_reduction(&p, &f, &RsvdPartition::svd(1, 1, 1)), Err(Error::Unsupported(_))));
    }
}
