//! Full-depth run of the verification suite: every item at its complete
//! population, one pass/fail line per item.

use boolift::suite::{all_passed, run_suite, Level};
use boolift::Caps;

#[test]
fn full_suite_passes() {
    let outcomes = run_suite(Level::Full, 0, &Caps::default());
    assert_eq!(outcomes.len(), 12);
    for o in &outcomes {
        println!(
            "{} {} ({:.1}s): {} [{}]",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.millis as f64 / 1000.0,
            o.title,
            o.details
        );
    }
    assert!(all_passed(&outcomes), "at least one suite item failed");
}
