//! The `n = 4`, `κ_Y = 1e7`, `κ_Σ = 10` quotient problem, replayed with the
//! three pencil formulations side by side.

use std::fmt;

use crate::eigen::EigenClass;
use crate::error::Result;
use crate::genmat::{generate, GeneratedProblem, GeneratorConfig, ProblemKind};
use crate::matcore::Dd;
use crate::pencil::Formulation;
use crate::recovery::group_quadruples;

use super::{chordal, solve_for, sigma_estimates};

pub const WORKED_EXAMPLE_SEED: u64 = 2024;

#[derive(Clone, Debug)]
pub struct WorkedExample {
    pub problem: GeneratedProblem,
    /// Square roots of the squared-pencil eigenvalues, decreasing.
    pub squared: Vec<f64>,
    /// All augmented eigenvalue magnitudes, decreasing.
    pub augmented: Vec<f64>,
    /// `|λ|²` of the quadruple members in the order `√σ, i√σ, -√σ, -i√σ`,
    /// quadruples by decreasing `σ`.
    pub cpf_squared: Vec<[f64; 4]>,
    /// Geometric means of the quadruples, decreasing.
    pub means: Vec<f64>,
}

/// `x` rounded to 12 digits after the point.
fn fixed12(x: Dd) -> String {
    let scaled = (x * Dd::from_f64(1e12) + Dd::from_f64(0.5)).floor();
    let m = scaled.to_f64() as u64;
    format!("{}.{:012}", m / 1_000_000_000_000, m % 1_000_000_000_000)
}

/// Digits after the point that `approx` shares with `exact` when both are
/// rounded to 12 decimals.
pub fn matched_digits(exact: Dd, approx: f64) -> usize {
    let (e, a) = (fixed12(exact), fixed12(Dd::from_f64(approx)));
    let (ei, ef) = e.split_once('.').expect("fixed-point rendering");
    let (ai, af) = a.split_once('.').expect("fixed-point rendering");
    if ei != ai {
        return 0;
    }
    ef.bytes().zip(af.bytes()).take_while(|(x, y)| x == y).count()
}

pub fn worked_example() -> Result<WorkedExample> {
    worked_example_with_seed(WORKED_EXAMPLE_SEED)
}

pub fn worked_example_with_seed(seed: u64) -> Result<WorkedExample> {
    let cfg = GeneratorConfig { n: 4, kappa_x: 1.0, kappa_y: 1e7, kappa_sigma: 10.0, seed };
    let problem = generate(ProblemKind::Qsvd, &cfg)?;
    let sq = solve_for(&problem.pencil(Formulation::SqQsvd)?)?;
    let squared = sigma_estimates(&sq, Formulation::SqQsvd)?;
    let aug = solve_for(&problem.pencil(Formulation::AugQsvd)?)?;
    let mut augmented: Vec<f64> = aug.values.iter().map(|v| v.ratio().norm()).collect();
    augmented.sort_by(|a, b| b.total_cmp(a));
    let cpf = solve_for(&problem.pencil(Formulation::CpfQsvd)?)?;
    let mut values = cpf.values.clone();
    for v in &mut values {
        v.class = EigenClass::FiniteNonzero;
    }
    let mut quads = group_quadruples(&values)?;
    quads.sort_by(|a, b| b.sigma.total_cmp(&a.sigma));
    let cpf_squared = quads.iter().map(|q| q.values.map(|z| z.norm_sqr())).collect();
    let means = quads.iter().map(|q| q.sigma).collect();
    Ok(WorkedExample { problem, squared, augmented, cpf_squared, means })
}

impl WorkedExample {
    pub fn max_error(&self, estimates: &[f64]) -> f64 {
        self.problem.sigma_f64().iter().zip(estimates).map(|(&s, &e)| chordal(s, e)).fold(0.0, f64::max)
    }
}

impl fmt::Display for WorkedExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exact = &self.problem.sigma;
        let c = &self.problem.config;
        writeln!(f, "n = {}, kappa_Y = {:e}, kappa_Sigma = {:e}, seed = {}", c.n, c.kappa_y, c.kappa_sigma, c.seed)?;
        let row = |f: &mut fmt::Formatter<'_>, vals: &[f64]| -> fmt::Result {
            let cells: Vec<String> = vals
                .iter()
                .zip(exact)
                .map(|(&v, &s)| format!("{} ({:>2})", fixed12(Dd::from_f64(v)), matched_digits(s, v)))
                .collect();
            writeln!(f, "  {}", cells.join("  "))
        };
        writeln!(f, "exact:")?;
        let cells: Vec<String> = exact.iter().map(|&s| fixed12(s)).collect();
        writeln!(f, "  {}", cells.join("  "))?;
        writeln!(f, "squared pencil, square roots (matched digits):")?;
        row(f, &self.squared)?;
        writeln!(f, "augmented pencil, magnitudes:")?;
        for pair in [0, 1] {
            let vals: Vec<f64> = (0..exact.len()).map(|j| self.augmented[2 * j + pair]).collect();
            row(f, &vals)?;
        }
        writeln!(f, "cross-product-free pencil, squared magnitudes:")?;
        for k in 0..4 {
            let vals: Vec<f64> = self.cpf_squared.iter().map(|q| q[k]).collect();
            row(f, &vals)?;
        }
        writeln!(f, "geometric means:")?;
        row(f, &self.means)?;
        writeln!(
            f,
            "max chordal error: squared {:.3e}, augmented {:.3e}, cross-product-free {:.3e}",
            self.max_error(&self.squared),
            self.max_error(&self.augmented.chunks(2).map(|c| (c[0] * c[1]).sqrt()).collect::<Vec<_>>()),
            self.max_error(&self.means)
        )
    }
}
