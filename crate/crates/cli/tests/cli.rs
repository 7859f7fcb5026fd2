use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pencil-svd")).args(args).output().expect("spawn pencil-svd")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn generate(dir: &Path, kind: &str, n: usize, seed: u64) {
    let out = run(&[
        "generate",
        "--kind",
        kind,
        "--n",
        &n.to_string(),
        "--seed",
        &seed.to_string(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    stdout(&out);
}

fn truth(dir: &Path) -> Vec<f64> {
    std::fs::read_to_string(dir.join("truth.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn generate_writes_all_files() {
    let tmp = tempfile::tempdir().unwrap();
    generate(tmp.path(), "rsvd", 3, 11);
    for f in ["A.txt", "B.txt", "C.txt", "truth.txt"] {
        assert!(tmp.path().join(f).is_file(), "{f} missing");
    }
    let sigma = truth(tmp.path());
    assert_eq!(sigma.len(), 3);
    assert!(sigma.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn solve_recovers_generated_sigmas() {
    let tmp = tempfile::tempdir().unwrap();
    generate(tmp.path(), "qsvd", 4, 3);
    let p = |f: &str| tmp.path().join(f).to_str().unwrap().to_owned();
    let text = stdout(&run(&["solve", "-f", "cpf-qsvd", "--a", &p("A.txt"), "--c", &p("C.txt"), "--recover"]));
    let got: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("regular"))
        .map(|l| l.split_whitespace().nth(4).unwrap().parse().unwrap())
        .collect();
    let want = truth(tmp.path());
    assert_eq!(got.len(), want.len(), "{text}");
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() <= 1e-12 * w, "{g} vs {w}");
    }
}

#[test]
fn solve_lists_every_eigenvalue() {
    let tmp = tempfile::tempdir().unwrap();
    generate(tmp.path(), "qsvd", 3, 9);
    let a = tmp.path().join("A.txt");
    let text = stdout(&run(&["solve", "-f", "aug-svd", "--a", a.to_str().unwrap()]));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6, "{text}");
}

#[test]
fn kcf_matches_on_generated_problem() {
    let tmp = tempfile::tempdir().unwrap();
    generate(tmp.path(), "rsvd", 3, 21);
    let p = |f: &str| tmp.path().join(f).to_str().unwrap().to_owned();
    let text = stdout(&run(&["kcf", "--a", &p("A.txt"), "--b", &p("B.txt"), "--c", &p("C.txt")]));
    assert!(text.contains("dimension 12x12"), "{text}");
    assert!(!text.contains("MISMATCH"), "{text}");
}

#[test]
fn kcf_rank_deficient_input() {
    let tmp = tempfile::tempdir().unwrap();
    // A = diag(1, 0), B = C = I: one regular value, one zero class
    let a = tmp.path().join("A.txt");
    std::fs::write(&a, "2 2 real\n1\n0\n0\n0\n").unwrap();
    let text = stdout(&run(&["kcf", "-f", "cpf-svd", "--a", a.to_str().unwrap()]));
    assert!(text.contains("partition"), "{text}");
}

#[test]
fn sweep_csv_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("s.csv");
    stdout(&run(&[
        "sweep",
        "--from",
        "1",
        "--to",
        "3",
        "--samples",
        "2",
        "--n",
        "3",
        "--formulations",
        "sq-qsvd,cpf-qsvd",
        "--out",
        out.to_str().unwrap(),
    ]));
    let csv = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1 + 3 * 2);
    assert!(lines[0].starts_with("kind,formulation"));
    assert!(lines[1..].iter().all(|l| l.split(',').count() == lines[0].split(',').count()));
}

#[test]
fn example_prints_exact_line() {
    let text = stdout(&run(&["example"]));
    assert!(text.contains("3.162277660168  1.467799267622  0.681292069058  0.316227766017"), "{text}");
    assert!(text.contains("max chordal error"));
}

#[test]
fn bad_formulation_is_rejected() {
    let out = run(&["solve", "-f", "nope", "--a", "missing.txt"]);
    assert!(!out.status.success());
}
