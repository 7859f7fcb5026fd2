//! Dense pencils `𝒜 − λℬ` for the squared, augmented and cross-product-free
//! formulations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::CMatrix;

/// Which pencil a matrix pair represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formulation {
    SqSvd,
    AugSvd,
    SqQsvd,
    AugQsvd,
    AugRsvd,
    CpfSvd,
    CpfQsvd,
    CpfRsvd,
    Qqqq,
}

impl Formulation {
    pub const ALL: [Formulation; 9] = [
        Formulation::SqSvd,
        Formulation::AugSvd,
        Formulation::SqQsvd,
        Formulation::AugQsvd,
        Formulation::AugRsvd,
        Formulation::CpfSvd,
        Formulation::CpfQsvd,
        Formulation::CpfRsvd,
        Formulation::Qqqq,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Formulation::SqSvd => "sq-svd",
            Formulation::AugSvd => "aug-svd",
            Formulation::SqQsvd => "sq-qsvd",
            Formulation::AugQsvd => "aug-qsvd",
            Formulation::AugRsvd => "aug-rsvd",
            Formulation::CpfSvd => "cpf-svd",
            Formulation::CpfQsvd => "cpf-qsvd",
            Formulation::CpfRsvd => "cpf-rsvd",
            Formulation::Qqqq => "qqqq",
        }
    }

    /// Formulations whose finite spectrum comes in quadruples `±√σ, ±i√σ`.
    pub fn is_cross_product_free(self) -> bool {
        matches!(self, Formulation::CpfSvd | Formulation::CpfQsvd | Formulation::CpfRsvd | Formulation::Qqqq)
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formulation::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown formulation {s:?}")))
    }
}

/// A square pencil `lhs − λ rhs` with its block partition.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    pub lhs: CMatrix,
    pub rhs: CMatrix,
    pub formulation: Formulation,
    /// Sizes of the diagonal blocks; rows and columns share the partition.
    pub blocks: Vec<usize>,
}

impl Pencil {
    pub fn dim(&self) -> usize {
        self.lhs.rows()
    }

    /// Row/column range of block `i`.
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.blocks[..i].iter().sum();
        start..start + self.blocks[i]
    }

    /// Copies block `i` of a vector laid out like the pencil's columns.
    pub fn slice<T: Copy>(&self, v: &[T], i: usize) -> Vec<T> {
        v[self.block_range(i)].to_vec()
    }
}

fn check(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { what, expected, found });
    }
    Ok(())
}

fn nonempty(a: &CMatrix) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("A must be nonempty".into()));
    }
    Ok(())
}

/// `[0 A; A* 0]`.
fn hermitian_dilation(a: &CMatrix) -> CMatrix {
    let (p, q) = a.shape();
    let mut m = CMatrix::zeros(p + q, p + q);
    m.set_block(0, p, a);
    m.set_block(p, 0, &a.adjoint());
    m
}

pub fn build_sq_svd(a: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    let q = a.cols();
    Ok(Pencil {
        lhs: &a.adjoint() * a,
        rhs: CMatrix::identity(q),
        formulation: Formulation::SqSvd,
        blocks: vec![q],
    })
}

pub fn build_aug_svd(a: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    let (p, q) = a.shape();
    Ok(Pencil {
        lhs: hermitian_dilation(a),
        rhs: CMatrix::identity(p + q),
        formulation: Formulation::AugSvd,
        blocks: vec![p, q],
    })
}

pub fn build_sq_qsvd(a: &CMatrix, c: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    check("columns of C", a.cols(), c.cols())?;
    Ok(Pencil {
        lhs: &a.adjoint() * a,
        rhs: &c.adjoint() * c,
        formulation: Formulation::SqQsvd,
        blocks: vec![a.cols()],
    })
}

pub fn build_aug_qsvd(a: &CMatrix, c: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    check("columns of C", a.cols(), c.cols())?;
    let (p, q) = a.shape();
    let rhs = CMatrix::block_diag(&[&CMatrix::identity(p), &(&c.adjoint() * c)]);
    Ok(Pencil { lhs: hermitian_dilation(a), rhs, formulation: Formulation::AugQsvd, blocks: vec![p, q] })
}

pub fn build_aug_rsvd(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    check("rows of B", a.rows(), b.rows())?;
    check("columns of C", a.cols(), c.cols())?;
    let (p, q) = a.shape();
    let rhs = CMatrix::block_diag(&[&(b * &b.adjoint()), &(&c.adjoint() * c)]);
    Ok(Pencil { lhs: hermitian_dilation(a), rhs, formulation: Formulation::AugRsvd, blocks: vec![p, q] })
}

/// Shared 4×4 block layout; `lower` holds the two trailing diagonal blocks of `𝒜`.
fn cpf_layout(
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    lower: (&CMatrix, &CMatrix),
    formulation: Formulation,
) -> Pencil {
    let (p, q) = a.shape();
    let m = b.cols();
    let n = c.rows();
    let lhs = CMatrix::block_diag(&[&hermitian_dilation(a), lower.0, lower.1]);
    let dim = p + q + m + n;
    let mut rhs = CMatrix::zeros(dim, dim);
    rhs.set_block(0, p + q, b);
    rhs.set_block(p, p + q + m, &c.adjoint());
    rhs.set_block(p + q, 0, &b.adjoint());
    rhs.set_block(p + q + m, p, c);
    Pencil { lhs, rhs, formulation, blocks: vec![p, q, m, n] }
}

pub fn build_cpf_svd(a: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    let (p, q) = a.shape();
    let ip = CMatrix::identity(p);
    let iq = CMatrix::identity(q);
    Ok(cpf_layout(a, &ip, &iq, (&ip, &iq), Formulation::CpfSvd))
}

pub fn build_cpf_qsvd(a: &CMatrix, c: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    check("columns of C", a.cols(), c.cols())?;
    let ip = CMatrix::identity(a.rows());
    let in_ = CMatrix::identity(c.rows());
    Ok(cpf_layout(a, &ip, c, (&ip, &in_), Formulation::CpfQsvd))
}

pub fn build_cpf_rsvd(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    check("rows of B", a.rows(), b.rows())?;
    check("columns of C", a.cols(), c.cols())?;
    let im = CMatrix::identity(b.cols());
    let in_ = CMatrix::identity(c.rows());
    Ok(cpf_layout(a, b, c, (&im, &in_), Formulation::CpfRsvd))
}

/// The four-factor pencil with `D*D` and `EE*` in place of the trailing identities.
pub fn build_qqqq(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix, e: &CMatrix) -> Result<Pencil> {
    nonempty(a)?;
    check("rows of B", a.rows(), b.rows())?;
    check("columns of C", a.cols(), c.cols())?;
    check("columns of D", b.cols(), d.cols())?;
    check("rows of E", c.rows(), e.rows())?;
    let dd = &d.adjoint() * d;
    let ee = e * &e.adjoint();
    Ok(cpf_layout(a, b, c, (&dd, &ee), Formulation::Qqqq))
}
