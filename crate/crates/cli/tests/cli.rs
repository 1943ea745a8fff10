use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sp6cells"))
        .args(args)
        .env_remove("SP6CELLS_CACHE")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn kl_polynomials() {
    assert_eq!(stdout(&["kl", "121", "121"]), "1\nmu = 0\n");
    assert!(stdout(&["kl", "0121", "01321"]).ends_with("mu = 1\n"));
    assert_eq!(stdout(&["kl", "3", "121"]), "0\nmu = 0\n");
}

#[test]
fn mu_lists_the_edges_below() {
    assert!(stdout(&["mu", "01321"]).lines().any(|l| l == "0121|1"));
}

#[test]
fn products_in_the_c_basis() {
    assert_eq!(stdout(&["prod", "c", "", "013"]), "1: 013\n");
    assert_eq!(stdout(&["prod", "c", "013", "013"]), "xi^3: 013\n");
    assert_eq!(stdout(&["prod", "c", "12310", "01321"]), "xi^3: 121\nxi^3: 1201321\n");
    assert_eq!(stdout(&["prod", "t", "1", "1"]), "1: e\nv - v^-1: 1\n");
}

#[test]
fn gamma_and_j_products() {
    assert_eq!(stdout(&["gamma", "12310", "01321", "121"]), "1\n");
    assert_eq!(stdout(&["gamma", "12310", "01321", "0132"]), "0\n");
    assert_eq!(stdout(&["jmul", "D12", "1", "1"]), "x2 + x1 + x0\n");
    assert_eq!(stdout(&["jmul", "D013", "1", "1'"]), "u'2 + u'1 + u'0\n");
}

#[test]
fn cells_list_the_d_representatives() {
    let out = stdout(&["cells", "8"]);
    let reps: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with('D') && l.contains(" cell "))
        .collect();
    assert_eq!(reps.len(), 12);
}

#[test]
fn a_function_and_distinguished_involutions() {
    assert!(stdout(&["afn", "121"]).starts_with("a(121) = 3 certified\n"));
    assert_eq!(stdout(&["dist", "013"]), "distinguished = true\ndelta = 0\n");
    assert_eq!(stdout(&["dist", "0132"]), "distinguished = false\ndelta = 0\n");
}

#[test]
fn phi_and_representations() {
    assert!(stdout(&["phi", "121", "121"]).ends_with("multiplicative = true\n"));
    assert_eq!(stdout(&["rep", "tensor", "V(2)", "eV(4)"]), "eV(6) + eV(4) + eV(2)\n");
    assert_eq!(stdout(&["rep", "pi", "D12", "x'2"]), "eV(4)\n");
    let f = stdout(&["rep", "falsify"]);
    assert_eq!(f.lines().filter(|l| l.contains("|rejected|")).count(), 4);
}

#[test]
fn full_verification_passes_at_radius_8() {
    let out = stdout(&["verify-paper", "--radius", "8"]);
    assert!(out.lines().last().unwrap().ends_with(": PASS"), "{out}");
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn full_verification_structured_output() {
    let out = stdout(&["verify-paper", "--radius", "8", "--output", "structured"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[..lines.len() - 1].iter().all(|l| l.starts_with("check\tsuite=")));
    assert!(lines.last().unwrap().starts_with("summary\tradius=8\t"));
    assert!(lines.last().unwrap().ends_with("status=PASS"));
}

#[test]
fn usage_errors_exit_with_2() {
    let out = run(&["verify-paper", "--radius", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("radius 6"));
    assert_eq!(run(&["kl", "12x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["jmul", "D7", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn uncertifiable_computations_exit_with_1() {
    let out = run(&["phi", "12310", "01321"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot certify"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.cache");
    let first = Command::new(env!("CARGO_BIN_EXE_sp6cells"))
        .args(["kl", "0121", "01321"])
        .env("SP6CELLS_CACHE", &path)
        .output()
        .unwrap();
    assert!(first.status.success());
    let saved = fs::read_to_string(&path).unwrap();
    assert!(saved.starts_with("# sp6cells kl-cache v1\n"));
    let second = Command::new(env!("CARGO_BIN_EXE_sp6cells"))
        .args(["kl", "0121", "01321"])
        .env("SP6CELLS_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(first.stdout, second.stdout);
    // Nothing new to append on the second run.
    assert_eq!(fs::read_to_string(&path).unwrap(), saved);
}

#[test]
fn incompatible_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.cache");
    fs::write(&path, "# other cache v9\n").unwrap();
    let out = run(&["--cache", path.to_str().unwrap(), "kl", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
