//! Acceptance gate: runs every end-to-end check and prints one line per
//! criterion.  Run with `cargo test --test acceptance -- --nocapture` to
//! see the full table.

use salemk3::selftest;

#[test]
fn acceptance_criteria() {
    let outcomes = selftest::run_all();
    print!("{}", selftest::render(&outcomes));
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.name).collect();
    assert!(
        failed.is_empty(),
        "{} of {} acceptance checks failed: {:?}",
        failed.len(),
        outcomes.len(),
        failed
    );
}
