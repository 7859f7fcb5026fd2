//! Kronecker canonical structure of the pencil formulations: prediction from
//! block sizes, the 4×4 reductions, and verification on concrete instances.

mod lemma;
mod partition;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::eigen::{ClassCounts, EigenSolution};
use crate::error::{Error, Result};
use crate::pencil::Formulation;

pub use lemma::{lemma_factors, lemma_reduce, LemmaKind, LemmaReduction};
pub use partition::{partition_from_ranks, QsvdPartition, Ranks, RsvdPartition};
pub use verify::{verify_reduction, ReductionFactors, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KcfBlock {
    /// A `rows × cols` block of zeros in both coefficients.
    Zero { rows: usize, cols: usize },
    /// `L_α`, of size `α × (α + 1)`.
    RightSingular(usize),
    /// `L_βᵀ`, of size `(β + 1) × β`.
    LeftSingular(usize),
    /// `N_k`: an infinite eigenvalue with a Jordan chain of length `k`.
    Infinite(usize),
    /// `J_k(ζ)`.
    Jordan { size: usize, eigenvalue: Complex64 },
}

impl KcfBlock {
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            KcfBlock::Zero { rows, cols } => (rows, cols),
            KcfBlock::RightSingular(a) => (a, a + 1),
            KcfBlock::LeftSingular(b) => (b + 1, b),
            KcfBlock::Infinite(k) => (k, k),
            KcfBlock::Jordan { size, .. } => (size, size),
        }
    }

    fn label(&self) -> String {
        match *self {
            KcfBlock::Zero { rows, cols } => format!("zero {rows}x{cols}"),
            KcfBlock::RightSingular(a) => format!("L{a}"),
            KcfBlock::LeftSingular(b) => format!("L{b}^T"),
            KcfBlock::Infinite(k) => format!("N{k}"),
            KcfBlock::Jordan { size, eigenvalue } if eigenvalue == Complex64::new(0.0, 0.0) => {
                format!("J{size}(0)")
            }
            KcfBlock::Jordan { size, eigenvalue } => {
                format!("J{size}({:+.6e}{:+.6e}i)", eigenvalue.re, eigenvalue.im)
            }
        }
    }
}

/// A multiset of canonical blocks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KcfStructure {
    pub blocks: Vec<KcfBlock>,
}

impl KcfStructure {
    fn push_n(&mut self, count: usize, block: KcfBlock) {
        self.blocks.extend(std::iter::repeat_n(block, count));
    }

    /// Total size `(k, ℓ)`.
    pub fn dims(&self) -> (usize, usize) {
        self.blocks.iter().fold((0, 0), |(r, c), b| {
            let (br, bc) = b.shape();
            (r + br, c + bc)
        })
    }

    /// How many eigenvalues of each class a solver should report.
    pub fn expected_counts(&self) -> ClassCounts {
        let mut c = ClassCounts::default();
        for b in &self.blocks {
            match *b {
                KcfBlock::Zero { rows, cols } => c.indeterminate += rows.min(cols),
                KcfBlock::RightSingular(a) => c.indeterminate += a,
                KcfBlock::LeftSingular(b) => c.indeterminate += b,
                KcfBlock::Infinite(k) => c.infinite += k,
                KcfBlock::Jordan { size, eigenvalue } => {
                    if eigenvalue == Complex64::new(0.0, 0.0) {
                        c.zero += size;
                    } else {
                        c.finite_nonzero += size;
                    }
                }
            }
        }
        c
    }

    /// Block labels with multiplicities; nonzero Jordan blocks are pooled.
    pub fn summary(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            let key = match *b {
                KcfBlock::Jordan { size, eigenvalue } if eigenvalue != Complex64::new(0.0, 0.0) => {
                    format!("J{size}(nonzero)")
                }
                other => other.label(),
            };
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for KcfStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l) = self.dims();
        writeln!(f, "dimension {k}x{l}")?;
        let mut labels: BTreeMap<String, usize> = BTreeMap::new();
        for b in &self.blocks {
            *labels.entry(b.label()).or_insert(0) += 1;
        }
        for (label, count) in labels {
            writeln!(f, "{count} x {label}")?;
        }
        Ok(())
    }
}

/// Predicted structure of `kind` for a problem with block sizes `part` and
/// finite nonzero singular values `sigmas` (one per `p1`).
pub fn predict_kcf(kind: Formulation, part: &RsvdPartition, sigmas: &[f64]) -> Result<KcfStructure> {
    let (p, q, m, n) = (part.p, part.q, part.m, part.n);
    if sigmas.len() != p[0] {
        return Err(Error::InvalidArgument(format!(
            "expected {} singular values, got {}",
            p[0],
            sigmas.len()
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    let jordan = |size, eigenvalue| KcfBlock::Jordan { size, eigenvalue };
    let mut s = KcfStructure::default();
    let zero_dim = p[5] + q[0];
    match kind {
        Formulation::CpfSvd | Formulation::CpfQsvd | Formulation::CpfRsvd => {
            if zero_dim > 0 {
                s.blocks.push(KcfBlock::Zero { rows: zero_dim, cols: zero_dim });
            }
            s.push_n(p[3] + q[5] + m[2] + n[3], KcfBlock::Infinite(1));
            s.push_n(p[1] + p[2], KcfBlock::Infinite(3));
            s.push_n(p[4] + q[1], jordan(2, zero));
            for &sigma in sigmas {
                let r = sigma.sqrt();
                for ev in [Complex64::new(r, 0.0), Complex64::new(-r, 0.0), Complex64::new(0.0, r), Complex64::new(0.0, -r)] {
                    s.blocks.push(jordan(1, ev));
                }
            }
        }
        Formulation::AugSvd | Formulation::AugQsvd | Formulation::AugRsvd => {
            if zero_dim > 0 {
                s.blocks.push(KcfBlock::Zero { rows: zero_dim, cols: zero_dim });
            }
            s.push_n(p[3] + q[5], KcfBlock::Infinite(1));
            s.push_n(p[1] + p[2], KcfBlock::Infinite(2));
            s.push_n(p[4] + q[1], jordan(1, zero));
            for &sigma in sigmas {
                s.blocks.push(jordan(1, Complex64::new(sigma, 0.0)));
                s.blocks.push(jordan(1, Complex64::new(-sigma, 0.0)));
            }
        }
        Formulation::SqSvd | Formulation::SqQsvd => {
            if q[4] + q[5] > 0 {
                return Err(Error::Unsupported(format!("{kind} for a triplet partition")));
            }
            if q[0] > 0 {
                s.blocks.push(KcfBlock::Zero { rows: q[0], cols: q[0] });
            }
            s.push_n(q[1], jordan(1, zero));
            s.push_n(q[3], KcfBlock::Infinite(1));
            for &sigma in sigmas {
                s.blocks.push(jordan(1, Complex64::new(sigma * sigma, 0.0)));
            }
        }
        Formulation::Qqqq => return Err(Error::Unsupported(kind.to_string())),
    }
    Ok(s)
}

/// Observed against predicted eigenvalue class counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountsReport {
    pub expected: ClassCounts,
    pub observed: ClassCounts,
}

impl CountsReport {
    pub fn finite_ok(&self) -> bool {
        self.expected.finite_nonzero == self.observed.finite_nonzero
    }
    pub fn zero_ok(&self) -> bool {
        self.expected.zero == self.observed.zero
    }
    pub fn infinite_ok(&self) -> bool {
        self.expected.infinite == self.observed.infinite
    }
    pub fn indeterminate_ok(&self) -> bool {
        self.expected.indeterminate == self.observed.indeterminate
    }
    pub fn passes(&self) -> bool {
        self.expected == self.observed
    }
}

impl fmt::Display for CountsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("finite-nonzero", self.expected.finite_nonzero, self.observed.finite_nonzero),
            ("zero", self.expected.zero, self.observed.zero),
            ("infinite", self.expected.infinite, self.observed.infinite),
            ("indeterminate", self.expected.indeterminate, self.observed.indeterminate),
        ];
        for (name, e, o) in rows {
            writeln!(f, "{name:15} expected {e:4} observed {o:4} {}", if e == o { "ok" } else { "MISMATCH" })?;
        }
        Ok(())
    }
}

/// Compares the solver's spectrum with a predicted structure. The pairs are
/// reclassified with [`crate::eigen::Classifier::structural`] so that split
/// Jordan chains count as a single class.
pub fn spectrum_counts_check(sol: &EigenSolution, predicted: &KcfStructure) -> CountsReport {
    CountsReport { expected: predicted.expected_counts(), observed: sol.structural().counts() }
}
