//! The odd-max-bit function end to end: spectrum, alternation, exact
//! query complexity, and the one-way cost of its AND composition, which
//! grows only logarithmically while the sparsity grows linearly.

use boolift::comm::{comm_matrix, one_way_cc, one_way_cc_partial};
use boolift::query::{alternating_number, naadt_exact};
use boolift::transforms::{mobius_sparsity, mobius_spectrum};
use boolift::{BooleanFunction, Caps, ComposedFunction, Gadget};

fn main() -> boolift::Result<()> {
    let caps = Caps::default();

    let f = BooleanFunction::omb(5)?;
    println!("omb:5  table {}", f.table_string());
    let s = mobius_spectrum(&f)?;
    println!("AND-basis pairs (mask, coeff): {:?}", s.pairs());
    println!("alternating number: {}", alternating_number(&f)?);
    let (queries, family) = naadt_exact(&f, &caps)?;
    println!("exact non-adaptive AND tree: {queries} queries, sets {:?}", family.hex_sets());
    println!();

    println!("one-way cost of omb:n composed with a 1-bit AND gadget:");
    for n in 1..=10u32 {
        let f = BooleanFunction::omb(n)?;
        let spar = mobius_sparsity(&f)?;
        let cf = ComposedFunction::new(f, Gadget::and1(), &caps)?;
        let cc = one_way_cc(&comm_matrix(&cf, &caps)?)?;
        println!("  n={n:2}: sparsity {spar:2}, cost {cc} bits");
    }
    println!();

    let p = BooleanFunction::omb_partial(5)?;
    println!("partial variant, table {}", p.table_string());
    let cf = ComposedFunction::new(p, Gadget::and1(), &caps)?;
    let pc = one_way_cc_partial(&comm_matrix(&cf, &caps)?, &caps)?;
    println!("composed with AND: {} messages, {} bits", pc.chromatic, pc.bits);
    Ok(())
}
