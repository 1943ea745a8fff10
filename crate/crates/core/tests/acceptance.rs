//! One test per acceptance criterion, all run against a single verifier at
//! radius 12 so later criteria reuse the cache and `γ` table of earlier ones.

use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use sp6cells::hecke::KLCache;
use sp6cells::verify::{Check, Verifier, VerifyConfig};

fn verifier() -> &'static Mutex<Verifier> {
    static V: OnceLock<Mutex<Verifier>> = OnceLock::new();
    V.get_or_init(|| {
        let config = VerifyConfig {
            radius: 12,
            ..VerifyConfig::default()
        };
        Mutex::new(Verifier::new(config, Arc::new(KLCache::new())).unwrap())
    })
}

fn criterion(n: u32, name: &str, limit: Duration) {
    let start = Instant::now();
    let checks: Vec<Check> = verifier().lock().unwrap_or_else(|e| e.into_inner()).run_suite(n);
    let elapsed = start.elapsed();
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed) && elapsed < limit;
    println!(
        "criterion {n}: {} {name} ({} checks, {:.2?})",
        if passed { "PASS" } else { "FAIL" },
        checks.len(),
        elapsed
    );
    for c in &checks {
        println!("  [{}] {} {}", c.status(), c.id, c.topic);
        for d in c.detail.iter().filter(|d| d.starts_with("FAILED")) {
            println!("      {d}");
        }
    }
    assert!(elapsed < limit, "criterion {n} took {elapsed:?}, limit {limit:?}");
    assert!(passed, "criterion {n} failed");
}

const MINUTE: Duration = Duration::from_secs(60);

#[test]
fn criterion_01_inverse_product() {
    criterion(1, "inverse product in H and J", MINUTE);
}

#[test]
fn criterion_02_square_of_1210321() {
    criterion(2, "square of t_1210321", 10 * MINUTE);
}

#[test]
fn criterion_03_family_identities() {
    criterion(3, "family product identities, direct and recursive", 10 * MINUTE);
}

#[test]
fn criterion_04_hecke_steps() {
    criterion(4, "Hecke computations for the u family", 10 * MINUTE);
}

#[test]
fn criterion_05_cell_structure() {
    criterion(5, "left cell representatives, a-values and star graphs", 10 * MINUTE);
}

#[test]
fn criterion_06_distinguished_involutions() {
    criterion(6, "distinguished involutions", 10 * MINUTE);
}

#[test]
fn criterion_07_representation_ring_isomorphism() {
    criterion(7, "families match the representation ring of O3", 10 * MINUTE);
}

#[test]
fn criterion_08_conjecture_rejected() {
    criterion(8, "all four orbit cases rejected", 10 * MINUTE);
}

#[test]
fn criterion_09_property_suites() {
    criterion(9, "KL, string, descent, gamma and tensor laws", 10 * MINUTE);
}

#[test]
fn criterion_10_truncation_labels() {
    criterion(10, "bounded-radius statements labelled provisional", 10 * MINUTE);
}
