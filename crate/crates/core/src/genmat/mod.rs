//! Random quotient pairs and restricted triplets with prescribed condition
//! numbers and double-double ground truth, plus small exactly representable
//! templates with prescribed Kronecker structure.

mod template;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kcf::{QsvdPartition, ReductionFactors, RsvdPartition};
use crate::matcore::{haar_orthogonal, householder_qr, seeded_rng, CMatrix, Dd, DdMatrix, Lu, Real};
use crate::pencil::{
    build_aug_qsvd, build_aug_rsvd, build_cpf_qsvd, build_cpf_rsvd, build_sq_qsvd, Formulation, Pencil,
};

pub use template::{random_rsvd_partition, StructureKind, StructureTemplate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Qsvd,
    Rsvd,
}

impl ProblemKind {
    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::Qsvd => "qsvd",
            ProblemKind::Rsvd => "rsvd",
        }
    }

    /// Squared (QSVD only), augmented and cross-product-free forms.
    pub fn formulations(self) -> &'static [Formulation] {
        match self {
            ProblemKind::Qsvd => &[Formulation::SqQsvd, Formulation::AugQsvd, Formulation::CpfQsvd],
            ProblemKind::Rsvd => &[Formulation::AugRsvd, Formulation::CpfRsvd],
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qsvd" => Ok(ProblemKind::Qsvd),
            "rsvd" => Ok(ProblemKind::Rsvd),
            _ => Err(Error::InvalidArgument(format!("unknown problem kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub kappa_x: f64,
    pub kappa_y: f64,
    pub kappa_sigma: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { n: 4, kappa_x: 10.0, kappa_y: 10.0, kappa_sigma: 10.0, seed: 0 }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {}", self.n)));
        }
        for (name, k) in [("kappa_x", self.kappa_x), ("kappa_y", self.kappa_y), ("kappa_sigma", self.kappa_sigma)] {
            if !(k >= 1.0 && k.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be a finite value >= 1, got {k}")));
            }
        }
        Ok(())
    }
}

/// `κ^{1/2 - (j-1)/(n-1)}` for `j = 1..n`, nonincreasing.
pub fn true_sigma_grid(n: usize, kappa: f64) -> Result<Vec<Dd>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidArgument(format!("kappa must be positive and finite, got {kappa}")));
    }
    let k = Dd::from_f64(kappa);
    let den = 2 * (n - 1) as u32;
    Ok((0..n).map(|j| k.pow_rational((n - 1) as i32 - 2 * j as i32, den)).collect())
}

#[derive(Clone, Debug)]
pub struct GeneratedProblem {
    pub kind: ProblemKind,
    pub config: GeneratorConfig,
    pub a: CMatrix,
    /// The identity for quotient pairs.
    pub b: CMatrix,
    pub c: CMatrix,
    /// Nonincreasing.
    pub sigma: Vec<Dd>,
    pub alpha: Vec<Dd>,
    pub beta: Vec<Dd>,
    pub gamma: Vec<Dd>,
    pub u: DdMatrix,
    pub v: DdMatrix,
    /// `None` for quotient pairs, where `X = U`.
    pub x: Option<DdMatrix>,
    pub y: DdMatrix,
    /// `A`, `B`, `C` before rounding.
    pub exact: (DdMatrix, DdMatrix, DdMatrix),
}

/// A binary64 Haar sample, promoted and re-orthogonalized in double-double
/// so that the factor is orthogonal to extended precision.
fn orthogonal<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> DdMatrix {
    let (mut q, r) = householder_qr(&haar_orthogonal(n, rng).to_dd());
    for j in 0..n {
        if r[(j, j)].is_sign_negative() {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// `U_Y Σ_Y V_Yᵀ` with `η_j = κ^{1/2 - (j-1)/(n-1)}`.
fn conditioned<R: rand::Rng + ?Sized>(n: usize, kappa: f64, rng: &mut R) -> Result<DdMatrix> {
    let left = orthogonal(n, rng);
    let right = orthogonal(n, rng);
    let eta = true_sigma_grid(n, kappa)?;
    let scaled = DdMatrix::from_fn(n, n, |i, j| left[(i, j)] * eta[j]);
    Ok(scaled.matmul(&right.transpose()))
}

fn diag_times(d: &[Dd], m: &DdMatrix) -> DdMatrix {
    DdMatrix::from_fn(m.rows(), m.cols(), |i, j| d[i] * m[(i, j)])
}

/// `M Y⁻¹` through a solve with `Yᵀ`.
fn right_divide(m: &DdMatrix, y: &DdMatrix) -> Result<DdMatrix> {
    Ok(Lu::new(&y.transpose())?.solve(&m.transpose())?.transpose())
}

/// `X⁻ᵀ M`.
fn left_divide_transpose(x: &DdMatrix, m: &DdMatrix) -> Result<DdMatrix> {
    Lu::new(&x.transpose())?.solve(m)
}

fn to_complex(m: &DdMatrix) -> CMatrix {
    m.round().to_complex()
}

fn truth(cfg: &GeneratorConfig) -> Result<(Vec<Dd>, Vec<Dd>, Vec<Dd>)> {
    let sigma = true_sigma_grid(cfg.n, cfg.kappa_sigma)?;
    let gamma: Vec<Dd> = sigma.iter().map(|&s| (Dd::ONE + s * s).sqrt().recip()).collect();
    let alpha = sigma.iter().zip(&gamma).map(|(&s, &g)| s * g).collect();
    Ok((sigma, alpha, gamma))
}

/// Quotient pair `A = U Σ_α Y⁻¹`, `C = V Σ_γ Y⁻¹`.
pub fn generate_qsvd(cfg: &GeneratorConfig) -> Result<GeneratedProblem> {
    cfg.validate()?;
    let n = cfg.n;
    let mut rng = seeded_rng(cfg.seed);
    let y = conditioned(n, cfg.kappa_y, &mut rng)?;
    let u = orthogonal(n, &mut rng);
    let v = orthogonal(n, &mut rng);
    let (sigma, alpha, gamma) = truth(cfg)?;
    let a = right_divide(&diag_times(&alpha, &u.transpose()).transpose(), &y)?;
    let c = right_divide(&diag_times(&gamma, &v.transpose()).transpose(), &y)?;
    let b = DdMatrix::identity(n);
    Ok(GeneratedProblem {
        kind: ProblemKind::Qsvd,
        config: *cfg,
        a: to_complex(&a),
        b: CMatrix::identity(n),
        c: to_complex(&c),
        sigma,
        alpha,
        beta: vec![Dd::ONE; n],
        gamma,
        u,
        v,
        x: None,
        y,
        exact: (a, b, c),
    })
}

/// Restricted triplet `A = X⁻ᵀ Σ_α Y⁻¹`, `B = X⁻ᵀ Uᵀ`, `C = V Σ_γ Y⁻¹`.
pub fn generate_rsvd(cfg: &GeneratorConfig) -> Result<GeneratedProblem> {
    cfg.validate()?;
    let n = cfg.n;
    let mut rng = seeded_rng(cfg.seed);
    let y = conditioned(n, cfg.kappa_y, &mut rng)?;
    let u = orthogonal(n, &mut rng);
    let v = orthogonal(n, &mut rng);
    let x = conditioned(n, cfg.kappa_x, &mut rng)?;
    let (sigma, alpha, gamma) = truth(cfg)?;
    let a = left_divide_transpose(&x, &right_divide(&DdMatrix::from_diag(&alpha), &y)?)?;
    let b = left_divide_transpose(&x, &u.transpose())?;
    let c = right_divide(&diag_times(&gamma, &v.transpose()).transpose(), &y)?;
    Ok(GeneratedProblem {
        kind: ProblemKind::Rsvd,
        config: *cfg,
        a: to_complex(&a),
        b: to_complex(&b),
        c: to_complex(&c),
        sigma,
        alpha,
        beta: vec![Dd::ONE; n],
        gamma,
        u,
        v,
        x: Some(x),
        y,
        exact: (a, b, c),
    })
}

pub fn generate(kind: ProblemKind, cfg: &GeneratorConfig) -> Result<GeneratedProblem> {
    match kind {
        ProblemKind::Qsvd => generate_qsvd(cfg),
        ProblemKind::Rsvd => generate_rsvd(cfg),
    }
}

impl GeneratedProblem {
    pub fn n(&self) -> usize {
        self.config.n
    }

    pub fn sigma_f64(&self) -> Vec<f64> {
        self.sigma.iter().map(|s| s.to_f64()).collect()
    }

    /// All blocks regular: `p1 = n`.
    pub fn partition(&self) -> RsvdPartition {
        let n = self.n();
        match self.kind {
            ProblemKind::Qsvd => QsvdPartition { p1: n, q3: n, n2: n, ..Default::default() }.to_rsvd(),
            ProblemKind::Rsvd => RsvdPartition { p: [n, 0, 0, 0, 0, 0], q: [0, 0, n, 0, 0, 0], m: [n, 0, 0, 0], n: [0, n, 0, 0] },
        }
    }

    pub fn pencil(&self, formulation: Formulation) -> Result<Pencil> {
        match (self.kind, formulation) {
            (ProblemKind::Qsvd, Formulation::SqQsvd) => build_sq_qsvd(&self.a, &self.c),
            (ProblemKind::Qsvd, Formulation::AugQsvd) => build_aug_qsvd(&self.a, &self.c),
            (ProblemKind::Qsvd, Formulation::CpfQsvd) => build_cpf_qsvd(&self.a, &self.c),
            (ProblemKind::Rsvd, Formulation::AugRsvd) => build_aug_rsvd(&self.a, &self.b, &self.c),
            (ProblemKind::Rsvd, Formulation::CpfRsvd) => build_cpf_rsvd(&self.a, &self.b, &self.c),
            (kind, f) => Err(Error::InvalidArgument(format!("{f} does not apply to a generated {kind} problem"))),
        }
    }

    /// Factors that take the cross-product-free pencil to canonical form.
    pub fn reduction_factors(&self) -> ReductionFactors {
        let x = self.x.as_ref().unwrap_or(&self.u);
        ReductionFactors {
            x: x.to_cdd(),
            y: self.y.to_cdd(),
            u: self.u.to_cdd(),
            v: self.v.to_cdd(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
        }
    }

    /// Largest relative residual of `XᵀAY = Σ_α`, `XᵀBU = Σ_β`, `VᵀCY = Σ_γ`
    /// over the unrounded matrices, in double-double.
    pub fn reconstruction_residual(&self) -> f64 {
        let x = self.x.as_ref().unwrap_or(&self.u);
        let (a, b, c) = &self.exact;
        let rel = |m: DdMatrix, d: &[Dd]| {
            let target = DdMatrix::from_diag(d);
            let scale = d.iter().fold(Dd::ZERO, |acc, &v| acc.max(v.abs()));
            ((&m - &target).norm_max() / scale).to_f64()
        };
        let ra = rel(x.transpose().matmul(a).matmul(&self.y), &self.alpha);
        let rb = rel(x.transpose().matmul(b).matmul(&self.u), &self.beta);
        let rc = rel(self.v.transpose().matmul(c).matmul(&self.y), &self.gamma);
        ra.max(rb).max(rc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::cond2_estimate;

    #[test]
    fn grid_examples() {
        let g: Vec<f64> = true_sigma_grid(2, 100.0).unwrap().iter().map(|x| x.to_f64()).collect();
        assert_eq!(g, vec![10.0, 0.1]);
        let g = true_sigma_grid(3, 10.0).unwrap();
        assert_eq!(g[1].to_f64(), 1.0);
        let g: Vec<String> = true_sigma_grid(4, 10.0).unwrap().iter().map(|x| format!("{:.12}", x.to_f64())).collect();
        assert_eq!(g, ["3.162277660168", "1.467799267622", "0.681292069058", "0.316227766017"]);
        assert!(true_sigma_grid(1, 10.0).is_err());
    }

    #[test]
    fn qsvd_truth_and_condition() {
        let cfg = GeneratorConfig { n: 5, kappa_y: 1e5, kappa_sigma: 10.0, seed: 3, ..Default::default() };
        let g = generate_qsvd(&cfg).unwrap();
        assert!(g.reconstruction_residual() <= 1e-25, "{}", g.reconstruction_residual());
        let ky = cond2_estimate(&g.y.round());
        assert!((ky - 1e5).abs() <= 1e-3 * 1e5, "{ky}");
        for j in 0..5 {
            let s = g.alpha[j] * g.alpha[j] + g.gamma[j] * g.gamma[j];
            assert!((s - Dd::ONE).abs().to_f64() < 1e-30);
            assert!((g.alpha[j] / g.gamma[j] - g.sigma[j]).abs().to_f64() < 1e-30 * g.sigma[j].to_f64());
        }
    }

    #[test]
    fn unit_kappa_gives_orthogonal_y() {
        let cfg = GeneratorConfig { n: 4, kappa_y: 1.0, ..Default::default() };
        let g = generate_qsvd(&cfg).unwrap();
        assert!((cond2_estimate(&g.y.round()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rsvd_reconstruction() {
        let cfg = GeneratorConfig { n: 4, kappa_x: 1e3, kappa_y: 1e2, kappa_sigma: 1e3, seed: 9 };
        let g = generate_rsvd(&cfg).unwrap();
        assert!(g.reconstruction_residual() <= 1e-25, "{}", g.reconstruction_residual());
        assert!(g.pencil(Formulation::SqQsvd).is_err());
        assert_eq!(g.partition().dims(), (4, 4, 4, 4));
    }

    #[test]
    fn same_seed_same_problem() {
        let cfg = GeneratorConfig { seed: 42, ..Default::default() };
        assert_eq!(generate_rsvd(&cfg).unwrap().a, generate_rsvd(&cfg).unwrap().a);
        assert!(GeneratorConfig { kappa_y: 0.5, ..cfg }.validate().is_err());
    }
}
