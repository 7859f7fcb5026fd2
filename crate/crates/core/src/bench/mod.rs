//! Accuracy experiments: chordal errors of recovered singular values against
//! the generator's double-double ground truth, condition-number sweeps and
//! the small worked example.

mod example;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::eigen::{solve_general, solve_hpd, EigenClass, EigenSolution};
use crate::error::{Error, Result};
use crate::genmat::{generate, GeneratedProblem, GeneratorConfig, ProblemKind};
use crate::matcore::derive_seed;
use crate::pencil::{Formulation, Pencil};
use crate::recovery::group_quadruples;

pub use example::{matched_digits, worked_example, worked_example_with_seed, WorkedExample, WORKED_EXAMPLE_SEED};

/// `|σ − σ̃| / (√(1+σ²) √(1+σ̃²))`, with `∞` handled through the reciprocal
/// form.
pub fn chordal(sigma: f64, approx: f64) -> f64 {
    if sigma.is_infinite() || approx.is_infinite() {
        return chordal_reciprocal(sigma, approx);
    }
    if sigma == approx {
        return 0.0;
    }
    let (a, b) = if sigma < approx { (sigma, approx) } else { (approx, sigma) };
    ((b - a) / a.hypot(1.0) / b.hypot(1.0)).min(1.0)
}

/// `|1/σ − 1/σ̃| / (√(1+σ⁻²) √(1+σ̃⁻²))`.
pub fn chordal_reciprocal(sigma: f64, approx: f64) -> f64 {
    if sigma == approx {
        return 0.0;
    }
    let (r, s) = (1.0 / sigma, 1.0 / approx);
    let (a, b) = if r < s { (r, s) } else { (s, r) };
    ((b - a) / a.hypot(1.0) / b.hypot(1.0)).min(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub kind: ProblemKind,
    pub formulation: Formulation,
    pub n: usize,
    pub kappa_x: f64,
    pub kappa_y: f64,
    pub kappa_sigma: f64,
    pub seed: u64,
    /// Estimates in decreasing order, matched to the decreasing true values.
    pub estimates: Vec<f64>,
    pub errors: Vec<f64>,
    pub max_error: f64,
}

fn solve_for(p: &Pencil) -> Result<EigenSolution> {
    match p.formulation {
        Formulation::AugSvd | Formulation::AugQsvd | Formulation::AugRsvd => match solve_hpd(p) {
            Err(Error::NotPositiveDefinite { .. }) => solve_general(p),
            other => other,
        },
        _ => solve_general(p),
    }
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Singular value estimates of a regular pencil, in decreasing order:
/// `√|λ|` for the squared forms, the paired magnitudes `|±σ|` for the
/// augmented forms and the geometric means of the quadruples for the
/// cross-product-free forms.
pub fn estimate_sigmas(p: &Pencil) -> Result<Vec<f64>> {
    let sol = solve_for(p)?;
    sigma_estimates(&sol, p.formulation)
}

/// Same as [`estimate_sigmas`] on an existing solution.
pub fn sigma_estimates(sol: &EigenSolution, formulation: Formulation) -> Result<Vec<f64>> {
    let lambdas: Vec<Complex64> = sol.values.iter().map(|v| v.ratio()).collect();
    if let Some(z) = lambdas.iter().find(|z| !finite(**z)) {
        return Err(Error::Spectrum(format!("non-finite eigenvalue {z} in a regular problem")));
    }
    let mut est: Vec<f64> = match formulation {
        Formulation::SqSvd | Formulation::SqQsvd => lambdas.iter().map(|z| z.norm().sqrt()).collect(),
        Formulation::AugSvd | Formulation::AugQsvd | Formulation::AugRsvd => {
            let mut m: Vec<f64> = lambdas.iter().map(|z| z.norm()).collect();
            if !m.len().is_multiple_of(2) {
                return Err(Error::Spectrum(format!("{} augmented eigenvalues do not pair up", m.len())));
            }
            m.sort_by(|a, b| b.total_cmp(a));
            m.chunks(2).map(|c| (c[0] * c[1]).sqrt()).collect()
        }
        Formulation::CpfSvd | Formulation::CpfQsvd | Formulation::CpfRsvd => {
            let mut values = sol.values.clone();
            for v in &mut values {
                v.class = EigenClass::FiniteNonzero;
            }
            group_quadruples(&values)?.into_iter().map(|q| q.sigma).collect()
        }
        Formulation::Qqqq => return Err(Error::Unsupported(formulation.tag().into())),
    };
    est.sort_by(|a, b| b.total_cmp(a));
    Ok(est)
}

/// Chordal errors of one formulation on an already generated problem.
pub fn evaluate(g: &GeneratedProblem, formulation: Formulation) -> Result<ExperimentRecord> {
    let p = g.pencil(formulation)?;
    let estimates = estimate_sigmas(&p)?;
    let truth = g.sigma_f64();
    if estimates.len() != truth.len() {
        return Err(Error::Spectrum(format!("{} estimates for {} singular values", estimates.len(), truth.len())));
    }
    let errors: Vec<f64> = truth.iter().zip(&estimates).map(|(&s, &e)| chordal(s, e)).collect();
    let max_error = errors.iter().copied().fold(0.0, f64::max);
    let c = &g.config;
    Ok(ExperimentRecord {
        kind: g.kind,
        formulation,
        n: c.n,
        kappa_x: c.kappa_x,
        kappa_y: c.kappa_y,
        kappa_sigma: c.kappa_sigma,
        seed: c.seed,
        estimates,
        errors,
        max_error,
    })
}

/// Generates one problem and measures `formulation` on it.
pub fn run_sample(kind: ProblemKind, formulation: Formulation, cfg: &GeneratorConfig) -> Result<ExperimentRecord> {
    if !kind.formulations().contains(&formulation) {
        return Err(Error::InvalidArgument(format!("{formulation} does not apply to {kind} problems")));
    }
    evaluate(&generate(kind, cfg)?, formulation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    KappaY,
    KappaSigma,
    /// `κ_X = κ_Y`.
    KappaXY,
}

impl SweepAxis {
    pub fn tag(self) -> &'static str {
        match self {
            SweepAxis::KappaY => "kappa_y",
            SweepAxis::KappaSigma => "kappa_sigma",
            SweepAxis::KappaXY => "kappa_xy",
        }
    }

    fn apply(self, base: &GeneratorConfig, value: f64) -> GeneratorConfig {
        let mut cfg = *base;
        match self {
            SweepAxis::KappaY => cfg.kappa_y = value,
            SweepAxis::KappaSigma => cfg.kappa_sigma = value,
            SweepAxis::KappaXY => {
                cfg.kappa_x = value;
                cfg.kappa_y = value;
            }
        }
        cfg
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kappa_y" | "kappa-y" => Ok(SweepAxis::KappaY),
            "kappa_sigma" | "kappa-sigma" => Ok(SweepAxis::KappaSigma),
            "kappa_xy" | "kappa-xy" => Ok(SweepAxis::KappaXY),
            _ => Err(Error::InvalidArgument(format!("unknown sweep axis {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub kind: ProblemKind,
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub samples: usize,
    pub formulations: Vec<Formulation>,
    /// Size and the condition numbers not varied by `axis`; `base.seed` is
    /// the sweep seed.
    pub base: GeneratorConfig,
}

impl SweepConfig {
    /// `samples` per cell over `grid`, every formulation of `kind`, `n = 10`
    /// and all other condition numbers 10.
    pub fn new(kind: ProblemKind, axis: SweepAxis, grid: Vec<f64>, samples: usize, seed: u64) -> Self {
        SweepConfig {
            kind,
            axis,
            grid,
            samples,
            formulations: kind.formulations().to_vec(),
            base: GeneratorConfig { n: 10, kappa_x: 10.0, kappa_y: 10.0, kappa_sigma: 10.0, seed },
        }
    }
}

/// Decades `10^lo, …, 10^hi`.
pub fn decades(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|e| format!("1e{e}").parse().expect("decimal power")).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepCell {
    pub formulation: Formulation,
    pub axis_value: f64,
    pub config: GeneratorConfig,
    pub samples: usize,
    pub failures: usize,
    /// NaN when every sample failed.
    pub median_max_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub kind: ProblemKind,
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    /// Grid-major, then formulation order.
    pub cells: Vec<SweepCell>,
}

pub const CSV_HEADER: &str =
    "kind,formulation,axis,axis_value,n,kappa_x,kappa_y,kappa_sigma,samples,failures,median_max_chordal_error";

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

impl SweepSummary {
    pub fn cell(&self, formulation: Formulation, axis_value: f64) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.formulation == formulation && c.axis_value == axis_value)
    }

    /// Medians of `formulation` in grid order.
    pub fn series(&self, formulation: Formulation) -> Vec<(f64, f64)> {
        self.cells.iter().filter(|c| c.formulation == formulation).map(|c| (c.axis_value, c.median_max_error)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let fields = [
                self.kind.tag().to_string(),
                c.formulation.tag().to_string(),
                self.axis.tag().to_string(),
                sci(c.axis_value),
                c.config.n.to_string(),
                sci(c.config.kappa_x),
                sci(c.config.kappa_y),
                sci(c.config.kappa_sigma),
                c.samples.to_string(),
                c.failures.to_string(),
                sci(c.median_max_error),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    }
}

/// Seed of sample `sample` in grid cell `cell`.
pub fn sample_seed(base: u64, cell: usize, sample: usize) -> u64 {
    derive_seed(derive_seed(base, cell as u64), sample as u64)
}

/// Max errors per formulation for one generated problem; `None` marks a
/// failed formulation or a failed generation.
fn run_cell_sample(kind: ProblemKind, formulations: &[Formulation], cfg: &GeneratorConfig) -> Vec<Option<f64>> {
    match generate(kind, cfg) {
        Ok(g) => formulations.iter().map(|&f| evaluate(&g, f).ok().map(|r| r.max_error)).collect(),
        Err(_) => vec![None; formulations.len()],
    }
}

/// Runs every grid cell. Each sample generates one problem that all
/// formulations share.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    if cfg.grid.is_empty() || cfg.samples == 0 {
        return Err(Error::InvalidArgument("a sweep needs a nonempty grid and at least one sample".into()));
    }
    if let Some(f) = cfg.formulations.iter().find(|f| !cfg.kind.formulations().contains(f)) {
        return Err(Error::InvalidArgument(format!("{f} does not apply to {} problems", cfg.kind)));
    }
    let mut cells = Vec::new();
    for (i, &value) in cfg.grid.iter().enumerate() {
        let cell_cfg = cfg.axis.apply(&cfg.base, value);
        cell_cfg.validate()?;
        let configs: Vec<GeneratorConfig> = (0..cfg.samples)
            .map(|s| GeneratorConfig { seed: sample_seed(cfg.base.seed, i, s), ..cell_cfg })
            .collect();
        let results = run_samples(cfg.kind, &cfg.formulations, &configs);
        for (k, &f) in cfg.formulations.iter().enumerate() {
            let mut ok: Vec<f64> = results.iter().filter_map(|r| r[k]).collect();
            let failures = cfg.samples - ok.len();
            cells.push(SweepCell {
                formulation: f,
                axis_value: value,
                config: cell_cfg,
                samples: cfg.samples,
                failures,
                median_max_error: median(&mut ok),
            });
        }
    }
    Ok(SweepSummary { kind: cfg.kind, axis: cfg.axis, grid: cfg.grid.clone(), cells })
}

#[cfg(feature = "parallel")]
fn run_samples(kind: ProblemKind, formulations: &[Formulation], configs: &[GeneratorConfig]) -> Vec<Vec<Option<f64>>> {
    use rayon::prelude::*;
    configs.par_iter().map(|c| run_cell_sample(kind, formulations, c)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_samples(kind: ProblemKind, formulations: &[Formulation], configs: &[GeneratorConfig]) -> Vec<Vec<Option<f64>>> {
    configs.iter().map(|c| run_cell_sample(kind, formulations, c)).collect()
}

/// Least-squares slope of `log10 y` against `log10 x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.log10(), y.log10())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordal_examples() {
        assert_eq!(chordal(2.5, 2.5), 0.0);
        assert!((chordal(0.0, 1.0) - 0.5f64.sqrt()).abs() <= 2.0 * f64::EPSILON);
        let expect = 1.0 / (10f64.sqrt() * 17f64.sqrt());
        assert!((chordal(3.0, 4.0) - expect).abs() <= 2.0 * f64::EPSILON);
        assert_eq!(chordal(f64::INFINITY, f64::INFINITY), 0.0);
        assert!((chordal(1.0, f64::INFINITY) - 0.5f64.sqrt()).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn well_conditioned_control_run() {
        let cfg = GeneratorConfig { n: 5, kappa_x: 1.0, kappa_y: 1.0, kappa_sigma: 10.0, seed: 3 };
        for kind in [ProblemKind::Qsvd, ProblemKind::Rsvd] {
            for &f in kind.formulations() {
                let r = run_sample(kind, f, &cfg).unwrap();
                assert!(r.max_error <= 1e-13, "{f} {}", r.max_error);
            }
        }
    }

    #[test]
    fn single_sample_sweep_equals_run_sample() {
        let mut cfg = SweepConfig::new(ProblemKind::Qsvd, SweepAxis::KappaY, vec![1e3], 1, 9);
        cfg.base.n = 4;
        let s = run_sweep(&cfg).unwrap();
        let gen = GeneratorConfig { kappa_y: 1e3, seed: sample_seed(9, 0, 0), ..cfg.base };
        for &f in ProblemKind::Qsvd.formulations() {
            let r = run_sample(ProblemKind::Qsvd, f, &gen).unwrap();
            assert_eq!(s.cell(f, 1e3).unwrap().median_max_error, r.max_error);
        }
    }

    #[test]
    fn csv_layout() {
        let mut cfg = SweepConfig::new(ProblemKind::Rsvd, SweepAxis::KappaXY, vec![10.0, 100.0], 2, 1);
        cfg.base.n = 3;
        let csv = run_sweep(&cfg).unwrap().to_csv();
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 4 + 1);
        assert!(lines[1].starts_with("rsvd,aug-rsvd,kappa_xy,1.0000000000000000e1,3,1.0000000000000000e1,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..6).map(|k| (10f64.powi(k), 1e-16 * 10f64.powi(2 * k))).collect();
        assert!((loglog_slope(&pts) - 2.0).abs() < 1e-12);
    }
}
