use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pencil_svd::bench::{decades, run_sweep, worked_example_with_seed, SweepAxis, SweepConfig, WORKED_EXAMPLE_SEED};
use pencil_svd::eigen::{solve_general, solve_hpd, EigenClass, EigenSolution};
use pencil_svd::genmat::{generate, GeneratorConfig, ProblemKind};
use pencil_svd::kcf::{partition_from_ranks, predict_kcf, spectrum_counts_check, Ranks};
use pencil_svd::matcore::textio::{read_matrix, write_matrix};
use pencil_svd::matcore::CMatrix;
use pencil_svd::pencil::{
    build_aug_qsvd, build_aug_rsvd, build_aug_svd, build_cpf_qsvd, build_cpf_rsvd, build_cpf_svd, build_qqqq,
    build_sq_qsvd, build_sq_svd, Formulation, Pencil,
};
use pencil_svd::recovery::classify_spectrum;

/// Quotient and restricted singular values from cross-product-free pencils
#[derive(Parser, Debug)]
#[command(name = "pencil-svd", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a random problem with known singular values
    Generate(GenerateArgs),
    /// Eigenvalues of one pencil formulation
    Solve(SolveArgs),
    /// Predicted Kronecker structure, checked against the computed spectrum
    Kcf(KcfArgs),
    /// Median-max chordal errors over a condition-number grid, as CSV
    Sweep(SweepArgs),
    /// The n = 4 quotient example with all three pencils
    Example {
        #[arg(long, default_value_t = WORKED_EXAMPLE_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// qsvd or rsvd
    #[arg(long, default_value = "qsvd")]
    kind: ProblemKind,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 10.0)]
    kappa_x: f64,
    #[arg(long, default_value_t = 10.0)]
    kappa_y: f64,
    #[arg(long, default_value_t = 10.0)]
    kappa_sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for A.txt, B.txt, C.txt and truth.txt
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct Inputs {
    #[arg(long)]
    a: PathBuf,
    /// Defaults to the identity
    #[arg(long)]
    b: Option<PathBuf>,
    /// Defaults to the identity
    #[arg(long)]
    c: Option<PathBuf>,
    /// qqqq only
    #[arg(long)]
    d: Option<PathBuf>,
    /// qqqq only
    #[arg(long)]
    e: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, short)]
    formulation: Formulation,
    #[command(flatten)]
    inputs: Inputs,
    /// Print one line per singular triplet instead of the eigenvalues
    #[arg(long)]
    recover: bool,
    /// Classify with the structural thresholds instead of backward-error floors
    #[arg(long)]
    structural: bool,
    /// Use the Hermitian-definite solver (augmented forms)
    #[arg(long)]
    hpd: bool,
}

#[derive(Args, Debug)]
struct KcfArgs {
    #[arg(long, short, default_value = "cpf-rsvd")]
    formulation: Formulation,
    #[command(flatten)]
    inputs: Inputs,
    /// Relative rank tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value = "qsvd")]
    kind: ProblemKind,
    /// kappa_y, kappa_sigma or kappa_xy
    #[arg(long, default_value = "kappa_y")]
    axis: SweepAxis,
    /// First decade of the grid
    #[arg(long, default_value_t = 1)]
    from: i32,
    /// Last decade of the grid
    #[arg(long, default_value_t = 7)]
    to: i32,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Value of the condition numbers that the axis does not vary
    #[arg(long, default_value_t = 10.0)]
    kappa: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated subset of the kind's formulations
    #[arg(long, value_delimiter = ',')]
    formulations: Option<Vec<Formulation>>,
    /// Write the CSV here instead of stdout
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate(args) => cmd_generate(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Kcf(args) => cmd_kcf(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Example { seed } => {
            print!("{}", worked_example_with_seed(seed)?);
            Ok(())
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let cfg = GeneratorConfig {
        n: args.n,
        kappa_x: args.kappa_x,
        kappa_y: args.kappa_y,
        kappa_sigma: args.kappa_sigma,
        seed: args.seed,
    };
    let g = generate(args.kind, &cfg)?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_matrix(&args.out.join("A.txt"), &g.a)?;
    write_matrix(&args.out.join("B.txt"), &g.b)?;
    write_matrix(&args.out.join("C.txt"), &g.c)?;
    let mut truth = String::from("# sigma alpha beta gamma\n");
    for j in 0..g.n() {
        truth.push_str(&format!("{:.30} {:.30} {:.30} {:.30}\n", g.sigma[j], g.alpha[j], g.beta[j], g.gamma[j]));
    }
    fs::write(args.out.join("truth.txt"), truth)?;
    eprintln!("wrote {} problem (n = {}) to {}", g.kind, g.n(), args.out.display());
    Ok(())
}

fn load(path: &Path) -> Result<CMatrix> {
    read_matrix(path).with_context(|| format!("reading {}", path.display()))
}

fn build(f: Formulation, inputs: &Inputs) -> Result<Pencil> {
    let a = load(&inputs.a)?;
    let opt = |p: &Option<PathBuf>, n: usize| p.as_deref().map(load).unwrap_or_else(|| Ok(CMatrix::identity(n)));
    let b = opt(&inputs.b, a.rows())?;
    let c = opt(&inputs.c, a.cols())?;
    let p = match f {
        Formulation::SqSvd => build_sq_svd(&a)?,
        Formulation::AugSvd => build_aug_svd(&a)?,
        Formulation::CpfSvd => build_cpf_svd(&a)?,
        Formulation::SqQsvd => build_sq_qsvd(&a, &c)?,
        Formulation::AugQsvd => build_aug_qsvd(&a, &c)?,
        Formulation::CpfQsvd => build_cpf_qsvd(&a, &c)?,
        Formulation::AugRsvd => build_aug_rsvd(&a, &b, &c)?,
        Formulation::CpfRsvd => build_cpf_rsvd(&a, &b, &c)?,
        Formulation::Qqqq => {
            let d = opt(&inputs.d, b.cols())?;
            let e = opt(&inputs.e, c.rows())?;
            build_qqqq(&a, &b, &c, &d, &e)?
        }
    };
    Ok(p)
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let p = build(args.formulation, &args.inputs)?;
    let mut sol = if args.hpd { solve_hpd(&p)? } else { solve_general(&p)? };
    if args.structural {
        sol = sol.structural();
    }
    if args.recover {
        let classes = classify_spectrum(&sol, args.formulation)?;
        println!("# class alpha beta gamma sigma phase_residual");
        for t in &classes.triplets {
            println!("{t}");
        }
        return Ok(());
    }
    print_values(&sol);
    Ok(())
}

fn print_values(sol: &EigenSolution) {
    println!("# re im class");
    for v in &sol.values {
        let z = v.lambda();
        match v.class {
            EigenClass::Infinite => println!("inf 0 {}", v.class),
            EigenClass::Indeterminate => println!("nan nan {}", v.class),
            _ => println!("{:.16e} {:.16e} {}", z.re, z.im, v.class),
        }
    }
}

fn cmd_kcf(args: KcfArgs) -> Result<()> {
    let a = load(&args.inputs.a)?;
    let b = args.inputs.b.as_deref().map(load).transpose()?.unwrap_or_else(|| CMatrix::identity(a.rows()));
    let c = args.inputs.c.as_deref().map(load).transpose()?.unwrap_or_else(|| CMatrix::identity(a.cols()));
    let ranks = Ranks::of(&a, &b, &c, args.tol)?;
    let part = partition_from_ranks(a.rows(), a.cols(), b.cols(), c.rows(), ranks)?;
    println!("ranks {ranks:?}");
    println!("partition p {:?} q {:?} m {:?} n {:?}", part.p, part.q, part.m, part.n);

    // singular values for the Jordan blocks come from the restricted pencil
    let cpf = solve_general(&build_cpf_rsvd(&a, &b, &c)?)?.structural();
    let sigmas: Vec<f64> = classify_spectrum(&cpf, Formulation::CpfRsvd)?.quadruples.iter().map(|q| q.sigma).collect();
    if sigmas.len() != part.p[0] {
        bail!("found {} regular singular values, the ranks imply {}", sigmas.len(), part.p[0]);
    }
    let predicted = predict_kcf(args.formulation, &part, &sigmas)?;
    println!("predicted structure of {}:", args.formulation);
    print!("{predicted}");
    let p = build(args.formulation, &args.inputs)?;
    let report = spectrum_counts_check(&solve_general(&p)?, &predicted);
    print!("{report}");
    if !report.passes() {
        bail!("computed spectrum does not match the predicted structure");
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let mut cfg = SweepConfig::new(args.kind, args.axis, decades(args.from, args.to), args.samples, args.seed);
    cfg.base.n = args.n;
    cfg.base.kappa_x = args.kappa;
    cfg.base.kappa_y = args.kappa;
    cfg.base.kappa_sigma = args.kappa;
    if let Some(f) = args.formulations {
        cfg.formulations = f;
    }
    let csv = run_sweep(&cfg)?.to_csv();
    match args.out {
        Some(path) => fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}
