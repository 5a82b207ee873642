//! Acceptance suite: every criterion at its stated bound and tolerance, one
//! pass/fail line per criterion.

use std::time::Instant;

use qll_core::hecke::{coset_counts, enumerate_cp, CosetShape};
use qll_core::lattice::verify_s_equals_w2o;
use qll_core::lift::Shape;
use qll_core::report::{Status, VerificationReport};
use qll_core::verify::{
    suite_cp_cardinality, suite_dirichlet, suite_equivariance_odd, suite_equivariance_two,
    suite_fundlemma, suite_lift_eval, suite_nonvanishing, suite_satake, suite_structure,
    suite_theta, DEFAULT_SEED,
};

fn announce(number: u32, name: &str, pass: bool, elapsed_ms: u128) {
    println!(
        "ACCEPTANCE {number:02} {name:<38} {} ({elapsed_ms} ms)",
        if pass { "pass" } else { "FAIL" }
    );
}

fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass)
}

fn dump_failures(reports: &[VerificationReport]) {
    for r in reports {
        if r.status != Status::Pass {
            eprintln!("  {}: {:?} {:?}", r.suite, r.status, r.witnesses);
        }
    }
}

#[test]
fn acceptance_01_cp_cardinality() {
    let started = Instant::now();
    let report = suite_cp_cardinality(&[3, 5, 7, 11, 13]);
    // raw counts double-checked here against the per-p enumeration
    let mut ok = report.status == Status::Pass;
    for p in [3u64, 5, 7, 11, 13] {
        let c = enumerate_cp(p).expect("odd prime");
        ok &= c.representatives.len() as u64 == p + 1 && c.raw_count as u64 == 24 * (p + 1);
    }
    let elapsed = started.elapsed();
    announce(1, "cp-cardinality", ok, elapsed.as_millis());
    dump_failures(&[report]);
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 1 exceeded 5 s");
}

#[test]
fn acceptance_02_fundlemma_sweep() {
    let started = Instant::now();
    let report = suite_fundlemma(&[3, 5, 7], 400);
    let elapsed = started.elapsed();
    let ok = report.status == Status::Pass;
    announce(2, "fundlemma-sweep (ν ≤ 400)", ok, elapsed.as_millis());
    dump_failures(std::slice::from_ref(&report));
    assert!(ok, "{:?}", report.witnesses);
    assert!(elapsed.as_secs_f64() < 60.0, "criterion 2 exceeded 60 s");
}

#[test]
fn acceptance_03_equivariance_odd() {
    let started = Instant::now();
    let mut reports = Vec::new();
    for p in [3u64, 5] {
        for shape in [Shape::B, Shape::C, Shape::A] {
            reports.push(suite_equivariance_odd(p, shape, 240));
        }
    }
    let elapsed = started.elapsed();
    let ok = all_pass(&reports);
    announce(3, "equivariance odd p (exact, ν ≤ 240)", ok, elapsed.as_millis());
    dump_failures(&reports);
    assert!(ok);
    assert!(elapsed.as_secs_f64() < 300.0, "criterion 3 exceeded 5 min");
}

#[test]
fn acceptance_04_equivariance_two() {
    let started = Instant::now();
    let reports = suite_equivariance_two(240);
    let elapsed = started.elapsed();
    let ok = all_pass(&reports) && reports.len() == 3;
    announce(4, "equivariance p = 2 (exact, both ε)", ok, elapsed.as_millis());
    dump_failures(&reports);
    assert!(ok);
}

#[test]
fn acceptance_05_dirichlet_identity() {
    let started = Instant::now();
    let mut reports = suite_dirichlet(0, 200);
    reports.extend(suite_dirichlet(2, 200));
    let elapsed = started.elapsed();
    let ok = all_pass(&reports);
    // both branches must actually occur at l = 2
    let branches: Vec<&str> = reports
        .iter()
        .filter_map(|r| r.params.get("branch"))
        .map(|s| s.as_str())
        .collect();
    let ok = ok && branches.contains(&"identity") && branches.contains(&"vanishing");
    announce(5, "dirichlet identity (N = 200)", ok, elapsed.as_millis());
    dump_failures(&reports);
    assert!(ok);
}

#[test]
fn acceptance_06_theta_checks() {
    let started = Instant::now();
    let reports = suite_theta(30, 1e-8);
    let elapsed = started.elapsed();
    let ok = all_pass(&reports);
    // the corrupt control is reported with inverted status, so all-pass means
    // the corruption was detected
    let has_control = reports
        .iter()
        .any(|r| r.suite == "theta-transform-corrupt-control");
    let ok = ok && has_control;
    announce(6, "theta O-vs-S and transformation", ok, elapsed.as_millis());
    dump_failures(&reports);
    assert!(ok);
}

#[test]
fn acceptance_07_satake() {
    let started = Instant::now();
    let report = suite_satake(DEFAULT_SEED);
    let elapsed = started.elapsed();
    let ok = report.status == Status::Pass;
    announce(7, "satake consistency and CAP match", ok, elapsed.as_millis());
    dump_failures(std::slice::from_ref(&report));
    assert!(ok, "{:?}", report.witnesses);
}

#[test]
fn acceptance_08_structure() {
    let started = Instant::now();
    let report = suite_structure(DEFAULT_SEED, 200, 30);
    let ok = report.status == Status::Pass
        && verify_s_equals_w2o()
        && coset_counts(CosetShape::Even, 2).unwrap() == (5, 5);
    let elapsed = started.elapsed();
    announce(8, "structure (S = ϖ₂O, words, cosets)", ok, elapsed.as_millis());
    dump_failures(std::slice::from_ref(&report));
    assert!(ok, "{:?}", report.witnesses);
}

#[test]
fn acceptance_09_numeric_lift() {
    let started = Instant::now();
    let report = suite_lift_eval(400);
    let elapsed = started.elapsed();
    let ok = report.status == Status::Pass;
    announce(9, "numeric lift eval and bessel oracle", ok, elapsed.as_millis());
    dump_failures(std::slice::from_ref(&report));
    assert!(ok, "{:?}", report.witnesses);
}

#[test]
fn acceptance_10_nonvanishing_witness() {
    let started = Instant::now();
    let report = suite_nonvanishing(&[1, 2, 3, 5]);
    let elapsed = started.elapsed();
    let ok = report.status == Status::Pass;
    announce(10, "non-vanishing witness", ok, elapsed.as_millis());
    dump_failures(std::slice::from_ref(&report));
    assert!(ok, "{:?}", report.witnesses);
}
