//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Results cross the boundary as flat `f64` arrays or CSV text, so the
//! functions are also callable from native tests.

use wasm_bindgen::prelude::*;

use pencil_svd::bench::{decades, run_sweep, SweepAxis, SweepConfig};
use pencil_svd::eigen::{solve_general, EigenClass};
use pencil_svd::genmat::{generate, GeneratedProblem, GeneratorConfig, ProblemKind};
use pencil_svd::kcf::{lemma_reduce, LemmaKind};
use pencil_svd::pencil::Formulation;

fn problem(kind: &str, n: usize, kappa_y: f64, kappa_sigma: f64, seed: u64) -> Result<GeneratedProblem, String> {
    let kind: ProblemKind = kind.parse().map_err(|e| format!("{e}"))?;
    let cfg = GeneratorConfig { n, kappa_x: 1.0, kappa_y, kappa_sigma, seed };
    generate(kind, &cfg).map_err(|e| e.to_string())
}

/// Exact singular values of the generated problem, decreasing.
#[wasm_bindgen]
pub fn true_sigmas(kind: &str, n: usize, kappa_y: f64, kappa_sigma: f64, seed: u64) -> Result<Vec<f64>, String> {
    Ok(problem(kind, n, kappa_y, kappa_sigma, seed)?.sigma_f64())
}

/// Finite eigenvalues of one formulation as `[re0, im0, re1, im1, ...]`.
/// Infinite and indeterminate eigenvalues are dropped.
#[wasm_bindgen]
pub fn eigenvalues(
    kind: &str,
    formulation: &str,
    n: usize,
    kappa_y: f64,
    kappa_sigma: f64,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let f: Formulation = formulation.parse().map_err(|e| format!("{e}"))?;
    let p = problem(kind, n, kappa_y, kappa_sigma, seed)?.pencil(f).map_err(|e| e.to_string())?;
    let sol = solve_general(&p).map_err(|e| e.to_string())?;
    Ok(sol
        .values
        .iter()
        .filter(|v| matches!(v.class, EigenClass::FiniteNonzero | EigenClass::Zero))
        .flat_map(|v| {
            let z = v.lambda();
            [z.re, z.im]
        })
        .collect())
}

/// Median-max chordal errors over `10^from ..= 10^to` in CSV form.
#[wasm_bindgen]
pub fn accuracy_curves(
    kind: &str,
    axis: &str,
    from: i32,
    to: i32,
    samples: usize,
    n: usize,
    seed: u64,
) -> Result<String, String> {
    let kind: ProblemKind = kind.parse().map_err(|e| format!("{e}"))?;
    let axis: SweepAxis = axis.parse().map_err(|e| format!("{e}"))?;
    let mut cfg = SweepConfig::new(kind, axis, decades(from, to), samples, seed);
    cfg.base.n = n;
    Ok(run_sweep(&cfg).map_err(|e| e.to_string())?.to_csv())
}

/// The 4×4 single-value reduction: `[σ, const error, λ error]`, then the
/// four computed eigenvalues as `re, im` pairs, then `|𝒴*𝒜𝒳|` row by row.
#[wasm_bindgen]
pub fn lemma(kind: &str, alpha: f64, beta: f64, gamma: f64) -> Result<Vec<f64>, String> {
    let kind = match kind {
        "osvd" | "svd" => LemmaKind::Osvd,
        "qsvd" => LemmaKind::Qsvd,
        "rsvd" => LemmaKind::Rsvd,
        other => return Err(format!("unknown kind {other}")),
    };
    let r = lemma_reduce(kind, alpha, beta, gamma).map_err(|e| e.to_string())?;
    let mut out = vec![r.sigma, r.error_const, r.error_lambda];
    let sol = solve_general(&r.pencil).map_err(|e| e.to_string())?;
    for v in &sol.values {
        let z = v.lambda();
        out.extend([z.re, z.im]);
    }
    let reduced = r.y.adjoint().matmul(&r.pencil.lhs).matmul(&r.x);
    out.extend(reduced.as_slice().iter().map(|z| z.norm()));
    Ok(out)
}
