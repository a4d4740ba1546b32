use std::time::Instant;

use localface::regress::{run, RegressOptions};

fn criterion(id: usize) {
    let start = Instant::now();
    let outcome = run(id, RegressOptions::default()).unwrap();
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    println!(
        "criterion {id:>2} {verdict}: {} ({:.1}s)",
        outcome.title,
        start.elapsed().as_secs_f64()
    );
    if !outcome.passed {
        for line in &outcome.details {
            println!("    {line}");
        }
    }
    assert!(outcome.passed, "criterion {id} failed");
}

#[test]
fn criterion_01_local_h() {
    criterion(1);
}

#[test]
fn criterion_02_hilbert_function() {
    criterion(2);
}

#[test]
fn criterion_03_symmetry_and_nonnegativity() {
    criterion(3);
}

#[test]
fn criterion_04_counterexamples() {
    criterion(4);
}

#[test]
fn criterion_05_positive_lefschetz_evidence() {
    criterion(5);
}

#[test]
fn criterion_06_figure1_module() {
    criterion(6);
}

#[test]
fn criterion_07_bilinear_form_soundness() {
    criterion(7);
}

#[test]
fn criterion_08_symbolic_identity() {
    criterion(8);
}

#[test]
fn criterion_09_regularity() {
    criterion(9);
}

#[test]
fn criterion_10_homology_validation() {
    criterion(10);
}
