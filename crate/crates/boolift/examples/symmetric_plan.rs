//! Randomized AND-query plans for symmetric functions. A symmetric
//! function that is constant below weight n-k is determined by a
//! separating family of random sets: the query pattern pins down any
//! high-weight input exactly. The family size is the sampling proof's
//! bound of order log^2 C(n,k), so it wins over the 2^n table only once
//! n is large; at these toy sizes the point is that one sampling round
//! already separates.

use boolift::query::{symmetric_naadt, symmetric_naadt_eval};
use boolift::{BooleanFunction, Caps};

fn main() -> boolift::Result<()> {
    let caps = Caps::default();
    let cases = [
        ("maj:5", BooleanFunction::maj(5)?),
        ("thr:7:8", BooleanFunction::threshold(7, 8)?),
        ("sym:0000000101", BooleanFunction::symmetric(&[
            false, false, false, false, false, false, false, true, false, true,
        ])?),
    ];
    for (name, f) in &cases {
        println!("{name}  switch value {}", f.switch_value()?);
        for seed in [0u64, 1] {
            let plan = symmetric_naadt(f, seed, &caps)?;
            let agrees =
                (0..1u32 << f.arity()).all(|x| symmetric_naadt_eval(&plan, x) == f.value_unchecked(x));
            let sets = plan.family.hex_sets();
            println!(
                "  seed {seed}: {} queries after {} attempts, first sets {:?}, agrees on all {} inputs: {agrees}",
                sets.len(),
                plan.attempts,
                &sets[..6.min(sets.len())],
                1u32 << f.arity(),
            );
        }
        println!();
    }
    Ok(())
}
