//! Singular values and vectors from the spectrum of a cross-product-free
//! pencil.

use std::f64::consts::FRAC_PI_8;
use std::fmt;

use num_complex::Complex64;

use crate::eigen::{EigenClass, EigenSolution, GeneralizedEigenvalue};
use crate::error::{Error, Result};
use crate::matcore::CMatrix;
use crate::pencil::{Formulation, Pencil};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripletClass {
    Regular,
    OneOneZero,
    OneZeroOne,
    OneZeroZero,
    ZeroOneOne,
    /// An infinite value whose type, `(1,1,0)`, `(1,0,1)` or `(1,0,0)`, the
    /// spectrum alone does not determine.
    Infinite,
    Trivial,
}

impl TripletClass {
    pub fn tag(self) -> &'static str {
        match self {
            TripletClass::Regular => "regular",
            TripletClass::OneOneZero => "one-one-zero",
            TripletClass::OneZeroOne => "one-zero-one",
            TripletClass::OneZeroZero => "one-zero-zero",
            TripletClass::ZeroOneOne => "zero-one-one",
            TripletClass::Infinite => "infinite",
            TripletClass::Trivial => "trivial",
        }
    }
}

impl fmt::Display for TripletClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularTriplet {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// `α / (βγ)`, infinite when `βγ = 0`.
    pub sigma: f64,
    pub class: TripletClass,
    /// Phase residual of the quadruple behind a regular triplet, 0 otherwise.
    pub phase_residual: f64,
}

impl SingularTriplet {
    /// The representative with `β = 1` and `α² + γ² = 1`.
    pub fn regular(sigma: f64, phase_residual: f64) -> Self {
        let h = sigma.hypot(1.0);
        SingularTriplet {
            alpha: sigma / h,
            beta: 1.0,
            gamma: 1.0 / h,
            sigma,
            class: TripletClass::Regular,
            phase_residual,
        }
    }

    fn special(class: TripletClass) -> Self {
        let (alpha, beta, gamma, sigma) = match class {
            TripletClass::ZeroOneOne => (0.0, 1.0, 1.0, 0.0),
            TripletClass::OneOneZero => (1.0, 1.0, 0.0, f64::INFINITY),
            TripletClass::OneZeroOne => (1.0, 0.0, 1.0, f64::INFINITY),
            TripletClass::OneZeroZero | TripletClass::Infinite => (1.0, 0.0, 0.0, f64::INFINITY),
            TripletClass::Trivial => (0.0, 0.0, 0.0, f64::NAN),
            TripletClass::Regular => unreachable!("regular triplets carry a value"),
        };
        SingularTriplet { alpha, beta, gamma, sigma, class, phase_residual: 0.0 }
    }
}

impl fmt::Display for SingularTriplet {
    /// `class alpha beta gamma sigma phase_residual`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:.16e} {:.16e} {:.16e} {:.16e} {:.3e}",
            self.class, self.alpha, self.beta, self.gamma, self.sigma, self.phase_residual
        )
    }
}

/// Four eigenvalues near `√σ, i√σ, -√σ, -i√σ`, in that order.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadruple {
    /// Indices into the list the quadruple was grouped from.
    pub members: [usize; 4],
    pub values: [Complex64; 4],
    pub sigma: f64,
    /// Largest angle between a member and its direction `1, i, -1, -i`.
    pub phase_residual: f64,
}

const DIRECTIONS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// Quadrant index of `λ` relative to the directions `1, i, -1, -i`.
fn direction(lambda: Complex64) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (k, d) in DIRECTIONS.iter().enumerate() {
        let angle = (lambda * d.conj()).arg().abs();
        if angle < best.1 {
            best = (k, angle);
        }
    }
    best
}

/// `(∏|λ_k|)^{1/2}`.
pub fn geometric_mean_sigma(q: &Quadruple) -> f64 {
    let m: Vec<f64> = q.values.iter().map(|z| z.norm()).collect();
    (m[0] * m[1]).sqrt() * (m[2] * m[3]).sqrt()
}

/// Groups the entries `indices` of `values` into quadruples. Each eigenvalue
/// of an exact quadruple sits on one of the four axes, so the values are
/// binned by axis and each bin is matched by decreasing `|λ|⁴ = σ²`.
fn group_indices(values: &[GeneralizedEigenvalue], indices: &[usize]) -> Result<Vec<Quadruple>> {
    if !indices.len().is_multiple_of(4) {
        return Err(Error::Grouping(format!("{} finite nonzero eigenvalues, not a multiple of 4", indices.len())));
    }
    let mut bins: [Vec<(usize, Complex64, f64)>; 4] = Default::default();
    for &i in indices {
        let lambda = values[i].ratio();
        if !(lambda.re.is_finite() && lambda.im.is_finite()) || lambda.norm() == 0.0 {
            return Err(Error::Grouping(format!("eigenvalue {i} is not finite and nonzero")));
        }
        let (k, angle) = direction(lambda);
        if angle >= FRAC_PI_8 {
            return Err(Error::Grouping(format!(
                "eigenvalue {lambda} is {angle:.3} rad off the nearest axis; its quadruple is ambiguous"
            )));
        }
        bins[k].push((i, lambda, angle));
    }
    let n = bins[0].len();
    if bins.iter().any(|b| b.len() != n) {
        let sizes: Vec<usize> = bins.iter().map(Vec::len).collect();
        return Err(Error::Grouping(format!("axis counts {sizes:?} differ")));
    }
    for b in &mut bins {
        b.sort_by(|x, y| y.1.norm_sqr().total_cmp(&x.1.norm_sqr()));
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let members = [bins[0][j].0, bins[1][j].0, bins[2][j].0, bins[3][j].0];
        let values = [bins[0][j].1, bins[1][j].1, bins[2][j].1, bins[3][j].1];
        let phase_residual = (0..4).map(|k| bins[k][j].2).fold(0.0, f64::max);
        let mut q = Quadruple { members, values, sigma: 0.0, phase_residual };
        q.sigma = geometric_mean_sigma(&q);
        out.push(q);
    }
    Ok(out)
}

/// Partitions finite nonzero eigenvalues into quadruples; `members` index
/// into `values`.
pub fn group_quadruples(values: &[GeneralizedEigenvalue]) -> Result<Vec<Quadruple>> {
    if let Some(i) = values.iter().position(|v| v.class != EigenClass::FiniteNonzero) {
        return Err(Error::Grouping(format!("eigenvalue {i} is {}, not finite nonzero", values[i].class)));
    }
    let all: Vec<usize> = (0..values.len()).collect();
    group_indices(values, &all)
}

/// The classes read off one spectrum.
#[derive(Clone, Debug)]
pub struct SpectrumClasses {
    /// Regular triplets by decreasing `σ`, then the special classes.
    pub triplets: Vec<SingularTriplet>,
    /// Indices into the solution's values; aligned with the regular triplets.
    pub quadruples: Vec<Quadruple>,
    pub regular: usize,
    /// `(0,1,1)` triplets, one per `J₂(0)` block.
    pub zero: usize,
    /// Infinite eigenvalues.
    pub infinite: usize,
    /// Indeterminate pairs.
    pub trivial: usize,
}

/// Regular triplets from the quadruples of a cross-product-free spectrum,
/// `(0,1,1)` classes from the zero pairs, one unresolved infinite class per
/// infinite eigenvalue and one trivial class per indeterminate pair.
pub fn classify_spectrum(sol: &EigenSolution, kind: Formulation) -> Result<SpectrumClasses> {
    if !matches!(kind, Formulation::CpfSvd | Formulation::CpfQsvd | Formulation::CpfRsvd) {
        return Err(Error::Unsupported(kind.tag().into()));
    }
    let counts = sol.counts();
    if !counts.zero.is_multiple_of(2) {
        return Err(Error::Spectrum(format!("{} zero eigenvalues do not form J2(0) blocks", counts.zero)));
    }
    let mut quadruples = group_indices(&sol.values, &sol.finite_indices())?;
    quadruples.sort_by(|a, b| b.sigma.total_cmp(&a.sigma));
    let mut triplets: Vec<SingularTriplet> =
        quadruples.iter().map(|q| SingularTriplet::regular(q.sigma, q.phase_residual)).collect();
    let zero = counts.zero / 2;
    triplets.extend((0..zero).map(|_| SingularTriplet::special(TripletClass::ZeroOneOne)));
    triplets.extend((0..counts.infinite).map(|_| SingularTriplet::special(TripletClass::Infinite)));
    triplets.extend((0..counts.indeterminate).map(|_| SingularTriplet::special(TripletClass::Trivial)));
    Ok(SpectrumClasses {
        triplets,
        regular: quadruples.len(),
        quadruples,
        zero,
        infinite: counts.infinite,
        trivial: counts.indeterminate,
    })
}

/// Vectors of one regular triplet. `u` is the first pencil block scaled to
/// `‖B*u‖ = 1`, `v` the last block at unit length, and `z` the second block
/// scaled so that `A z ≈ σ M u` and `C z ≈ v`, where `M = BB*`.
#[derive(Clone, Debug)]
pub struct RecoveredVectors {
    /// Index into the solution of the member whose eigenvector was used.
    pub member: usize,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub z: Vec<Complex64>,
    /// `‖A z − σ M u‖₂`.
    pub residual_a: f64,
    /// `‖C z − v‖₂`.
    pub residual_c: f64,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn axpy(s: Complex64, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(y).map(|(a, b)| s * a - b).collect()
}

/// `A`, `B` and `C` of a cross-product-free pencil.
fn factors(p: &Pencil) -> Result<(CMatrix, CMatrix, CMatrix)> {
    if !matches!(p.formulation, Formulation::CpfSvd | Formulation::CpfQsvd | Formulation::CpfRsvd) {
        return Err(Error::Unsupported(p.formulation.tag().into()));
    }
    let (r0, r1, r2, r3) = (p.block_range(0), p.block_range(1), p.block_range(2), p.block_range(3));
    let a = p.lhs.block(r0.start, r1.start, r0.len(), r1.len());
    let b = p.rhs.block(r0.start, r2.start, r0.len(), r2.len());
    let c = p.rhs.block(r3.start, r1.start, r3.len(), r1.len());
    Ok((a, b, c))
}

fn from_member(p: &Pencil, a: &CMatrix, b: &CMatrix, c: &CMatrix, w: &[Complex64], lambda: Complex64, sigma: f64) -> Result<RecoveredVectors> {
    let (w1, w2, w4) = (p.slice(w, 0), p.slice(w, 1), p.slice(w, 3));
    let floor = f64::EPSILON * norm(w);
    let bh = b.adjoint();
    let n1 = norm(&bh.matvec(&w1));
    if n1 <= floor {
        return Err(Error::DegenerateVector("u"));
    }
    if norm(&w2) <= floor {
        return Err(Error::DegenerateVector("z"));
    }
    if norm(&w4) <= floor {
        return Err(Error::DegenerateVector("v"));
    }
    let lead = w1.iter().find(|z| z.norm() > floor).copied().unwrap_or(w1[0]);
    // u = c w1 with its leading entry real positive and |B* u| = 1; for an exact eigenvector
    // A w2 = λ² M w1 and w4 = λ C w2, which fixes the phase of v
    let scale = lead.conj() / (lead.norm() * n1);
    let u: Vec<Complex64> = w1.iter().map(|z| z * scale).collect();
    let vs = scale * sigma / (lambda * lambda * lambda);
    let v_raw: Vec<Complex64> = w4.iter().map(|z| z * vs).collect();
    let nv = norm(&v_raw);
    let v: Vec<Complex64> = v_raw.iter().map(|z| z / nv).collect();
    let target: Vec<Complex64> = b.matvec(&bh.matvec(&u)).into_iter().map(|z| z * sigma).collect();
    let aw = a.matvec(&w2);
    let cw = c.matvec(&w2);
    let s = (dot(&aw, &target) + dot(&cw, &v)) / (dot(&aw, &aw).re + dot(&cw, &cw).re);
    let z: Vec<Complex64> = w2.iter().map(|x| x * s).collect();
    Ok(RecoveredVectors {
        member: 0,
        residual_a: norm(&axpy(s, &aw, &target)),
        residual_c: norm(&axpy(s, &cw, &v)),
        u,
        v,
        z,
    })
}

/// Singular vectors of the triplet behind `q`, taken from whichever member's
/// eigenvector gives the smaller residuals. `q.members` must index into
/// `sol.values`.
pub fn extract_vectors(sol: &EigenSolution, q: &Quadruple, p: &Pencil) -> Result<RecoveredVectors> {
    let vectors = sol.vectors.as_ref().ok_or(Error::DegenerateVector("eigenvectors were not computed"))?;
    if vectors.rows() != p.dim() {
        return Err(Error::DimensionMismatch { what: "eigenvector length", expected: p.dim(), found: vectors.rows() });
    }
    let (a, b, c) = factors(p)?;
    let mut best: Option<RecoveredVectors> = None;
    let mut last_err = None;
    for &k in &q.members {
        match from_member(p, &a, &b, &c, &vectors.column(k), sol.values[k].ratio(), q.sigma) {
            Ok(mut r) => {
                r.member = k;
                let score = r.residual_a.max(r.residual_c);
                if best.as_ref().is_none_or(|b| score < b.residual_a.max(b.residual_c)) {
                    best = Some(r);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.expect("a quadruple has four members"))
}
