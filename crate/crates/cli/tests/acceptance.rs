//! Acceptance criteria, one test each. Every test prints its verdict and
//! the individual checks behind it.

use std::path::PathBuf;
use std::process::Command;

use dgpair_cli::acceptance::{self, CriterionOutcome, CORRUPTED_FIXTURE};

const SEED: u64 = 0;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn report(c: CriterionOutcome) {
    let verdict = if c.passed { "PASS" } else { "FAIL" };
    println!("criterion {:02} [{verdict}] {}", c.id, c.name);
    for d in &c.details {
        println!("    {d}");
    }
    assert!(c.passed, "criterion {} failed", c.id);
}

#[test]
fn criterion_01_axioms() {
    report(acceptance::criterion_01(SEED));
}

#[test]
fn criterion_02_cone() {
    report(acceptance::criterion_02(SEED));
}

#[test]
fn criterion_03_gamma() {
    report(acceptance::criterion_03(SEED));
}

#[test]
fn criterion_04_tangent() {
    report(acceptance::criterion_04(SEED));
}

#[test]
fn criterion_05_obstruction() {
    report(acceptance::criterion_05(SEED));
}

#[test]
fn criterion_06_transfer() {
    report(acceptance::criterion_06(SEED));
}

#[test]
fn criterion_07_validate_linf() {
    report(acceptance::criterion_07(SEED));
}

#[test]
fn criterion_08_contraction() {
    report(acceptance::criterion_08(SEED));
}

#[test]
fn criterion_09_mc_equivalence() {
    report(acceptance::criterion_09(SEED));
}

#[test]
fn criterion_10_gauge_homotopy() {
    report(acceptance::criterion_10(SEED));
}

#[test]
fn criterion_11_bernoulli() {
    report(acceptance::criterion_11(SEED));
}

/// In-process round trips, then the real binary: `suite` exits 0 and the
/// corrupted witness exits 1 naming the failed equation.
#[test]
fn criterion_12_cli() {
    let mut c = acceptance::criterion_12(&fixtures());
    let bin = env!("CARGO_BIN_EXE_dgpair");

    let suite = Command::new(bin)
        .arg("suite")
        .arg("--fixtures")
        .arg(fixtures())
        .output()
        .expect("run suite");
    let code = suite.status.code();
    c.details.push(format!("binary: suite exit {code:?}"));
    c.passed &= code == Some(0);

    let bad = Command::new(bin)
        .arg("mc-verify")
        .arg(fixtures().join(CORRUPTED_FIXTURE))
        .output()
        .expect("run mc-verify");
    let stderr = String::from_utf8_lossy(&bad.stderr);
    let stdout = String::from_utf8_lossy(&bad.stdout);
    let named = stderr.contains("g(y) = e^p * h(x)") && stdout.contains("g(y) = e^p * h(x)");
    c.details.push(format!(
        "binary: corrupted witness exit {:?}, equation named {named}",
        bad.status.code()
    ));
    c.passed &= bad.status.code() == Some(1) && named;

    let t = Command::new(bin)
        .args([
            "transfer",
            "--catalog",
            "gl2-wedge",
            "--arity",
            "4",
            "--mode",
            "both",
        ])
        .output()
        .expect("run transfer");
    let agreed =
        String::from_utf8_lossy(&t.stdout).contains("\"tree_closed_agreement\": \"10/10\"");
    c.details.push(format!(
        "binary: transfer both on gl2-wedge arity 4 exit {:?}, agreement {agreed}",
        t.status.code()
    ));
    c.passed &= t.status.code() == Some(0) && agreed;

    report(c);
}
