//! Runs the verification suite and prints one line per check.
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! table; the test fails if any check does.

use floer_upsilon::suite::{all_passed, run_all};

#[test]
fn acceptance() {
    let outcomes = run_all();
    for o in &outcomes {
        match &o.result {
            Ok(()) => println!("PASS  {}", o.label),
            Err(msg) => println!("FAIL  {} :: {msg}", o.label),
        }
    }
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.result.is_err())
        .map(|o| o.label)
        .collect();
    assert!(all_passed(&outcomes), "failed checks: {failed:?}");
}
