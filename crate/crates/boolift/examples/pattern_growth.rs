//! Pattern complexity through the partner-closure process: each step
//! draws an unused support pair, pulls in its partner, and the number of
//! distinct partial patterns at most squares and doubles.

use boolift::patterns::{
    closing_bound_holds, pattern_complexity, pattern_growth_trace, step_bound_holds, Partner,
};
use boolift::{BooleanFunction, Caps};

fn show(name: &str, f: &BooleanFunction, caps: &Caps) -> boolift::Result<()> {
    let trace = pattern_growth_trace(f, caps)?;
    println!("{name}  sparsity {}", trace.sparsity);
    for (i, step) in trace.steps.iter().enumerate() {
        let partner = match step.partner {
            Partner::Union(w) => format!("union {w:#x}"),
            Partner::Pair(u, v) => format!("pair ({u:#x}, {v:#x})"),
        };
        println!(
            "  step {i}: drew ({:#x}, {:#x}), partner {partner}, {} sets tracked, {} patterns",
            step.drawn.0,
            step.drawn.1,
            step.tracked.len(),
            step.partial_patterns,
        );
        assert!(step_bound_holds(step.partial_patterns, step.tracked.len() as u32));
    }
    let total = pattern_complexity(f, caps)?;
    println!(
        "  final: {total} patterns; within 2 * 6^(spar/3): {}",
        closing_bound_holds(total, trace.sparsity as u32)
    );
    println!();
    Ok(())
}

fn main() -> boolift::Result<()> {
    let caps = Caps::default();
    show("addr:4", &BooleanFunction::addr(4)?, &caps)?;
    show("omb:6", &BooleanFunction::omb(6)?, &caps)?;
    show("maj:5", &BooleanFunction::maj(5)?, &caps)?;
    Ok(())
}
