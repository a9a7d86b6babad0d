//! Extraction audit of an inner-product lift: color the rows of
//! M[f IP_b] optimally, restrict Alice to inputs whose blocks are all
//! nonzero, and inspect the heaviest message class. When messages are
//! short, some pair in that class agrees on few variables, yet the
//! agreement must already determine the function.

use boolift::bits::mask_to_vars;
use boolift::comm::lift_audit;
use boolift::{BooleanFunction, Caps};

fn main() -> boolift::Result<()> {
    let caps = Caps::default();
    for (name, f, b) in [
        // The dictator shows the mechanism: 4 messages for 27 inputs, so
        // the heavy class is large and its least-agreeing pair shares only
        // variable 1, which indeed determines the function.
        ("table:aa:3", BooleanFunction::from_fn(3, |x| x & 1 == 1)?, 2u32),
        ("maj:3", BooleanFunction::maj(3)?, 2),
        ("xor:2", BooleanFunction::xor(2)?, 3),
    ] {
        let a = lift_audit(&f, b, &caps)?;
        println!("{name} with ip:{b}");
        println!("  block alphabet q = {}, all-nonzero inputs: {}", a.q, a.z_count);
        println!("  optimal messages: {} ({} bits)", a.c_messages, a.message_bits);
        println!("  heaviest message class: {} inputs", a.heavy_part_size);
        println!(
            "  least-agreeing pair ({:#x}, {:#x}) agrees on variables {:?}",
            a.pair.0,
            a.pair.1,
            mask_to_vars(a.agreement_mask),
        );
        println!("  agreement determines f: {}", a.determined);
        println!(
            "  rate {:.3} bits per log2(q); short-message regime: {}",
            a.rate, a.rate_precondition
        );
        println!();
    }
    Ok(())
}
