//! Acceptance suite: every built-in verification row must pass exactly,
//! one pass/fail line per criterion.

use germ_contact_core::engine::EngineConfig;
use germ_contact_core::verify::{verify_paper, VerifyRow};

fn report(rows: &[VerifyRow], prefix: &str) -> (usize, usize) {
    let mut pass = 0;
    let mut fail = 0;
    for r in rows.iter().filter(|r| r.id.starts_with(prefix)) {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {}: {} (expected {}, computed {})",
            r.id, r.description, r.expected, r.computed
        );
        if r.pass {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    (pass, fail)
}

fn run_prefix(prefix: &str) {
    let config = EngineConfig::default();
    let outcome = verify_paper(&config);
    let (pass, fail) = report(&outcome.rows, prefix);
    assert!(pass > 0, "no rows matched criterion prefix {prefix}");
    assert_eq!(fail, 0, "{fail} row(s) failed under criterion {prefix}");
}

// Running the full suite once and splitting the assertions per criterion
// would hide which criterion broke; instead each test recomputes the
// suite and asserts its own slice. The suite is cached per test binary
// run via OnceLock to keep the total runtime in budget.

use std::sync::OnceLock;

static OUTCOME: OnceLock<Vec<VerifyRow>> = OnceLock::new();

fn rows() -> &'static [VerifyRow] {
    OUTCOME.get_or_init(|| verify_paper(&EngineConfig::default()).rows)
}

fn assert_prefix(prefix: &str) {
    let (pass, fail) = report(rows(), prefix);
    assert!(pass > 0, "no rows matched criterion prefix {prefix}");
    assert_eq!(fail, 0, "{fail} row(s) failed under criterion {prefix}");
}

#[test]
fn criterion_1_worked_example_types() {
    assert_prefix("1");
}

#[test]
fn criterion_2_slicing_bound() {
    assert_prefix("2");
}

#[test]
fn criterion_3_m_family_table() {
    assert_prefix("3");
}

#[test]
fn criterion_4_theorem_family() {
    assert_prefix("4");
}

#[test]
fn criterion_5_hypersurface() {
    assert_prefix("5");
}

#[test]
fn criterion_6_multiplicity_bounds() {
    assert_prefix("6");
}

#[test]
fn criterion_7_chain() {
    assert_prefix("7");
}

#[test]
fn criterion_8_property_suites() {
    assert_prefix("8");
}

#[test]
fn criterion_9_oracle_equivalence() {
    assert_prefix("9");
}

// Keep the one-shot entry point exercised too (it is what the command
// line runs); a cheap criterion avoids recomputing the heavy rows twice.
#[test]
fn verify_entry_point_runs() {
    run_prefix("6");
}
