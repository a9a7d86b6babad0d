//! Communication matrices of gadget compositions: build M[x][y] =
//! f(g(x_1,y_1), ..., g(x_n,y_n)), read off the exact one-way cost, and
//! compare it with the matrix rank, which for the AND gadget equals the
//! function's Möbius sparsity.

use boolift::comm::{
    and_matrix_rank_certified, comm_matrix, matrix_rank, one_way_cc, power_bound_check,
};
use boolift::{BooleanFunction, Caps, ComposedFunction, Gadget};

fn main() -> boolift::Result<()> {
    let caps = Caps::default();

    let f = BooleanFunction::maj(3)?;
    let cf = ComposedFunction::new(f.clone(), Gadget::and1(), &caps)?;
    let m = comm_matrix(&cf, &caps)?;
    println!("maj:3 with AND, {}x{} matrix, rows in hex:", m.row_count(), m.col_count());
    for row in m.rows_hex() {
        println!("  {row}");
    }
    println!("one-way cost: {} bits", one_way_cc(&m)?);
    println!("exact rank:   {}", matrix_rank(&m, &caps)?);
    println!("certified:    {} (spectrum reconstruction)", and_matrix_rank_certified(&f)?);
    println!();

    // The addressing function meets the rank power exactly; odd-max-bit
    // shows cost can drop to log of rank, so no power of rank is a lower
    // bound in general.
    println!("one-way cost against rank^(log_3 2):");
    for (name, f) in [
        ("addr:8", BooleanFunction::addr(8)?),
        ("omb:6", BooleanFunction::omb(6)?),
        ("thr:2:5", BooleanFunction::threshold(2, 5)?),
    ] {
        let rank = and_matrix_rank_certified(&f)?;
        let cf = ComposedFunction::new(f, Gadget::and1(), &caps)?;
        let cc = one_way_cc(&comm_matrix(&cf, &caps)?)?;
        let meets = power_bound_check(cc as u64, rank as u64)?;
        println!("  {name:8} rank {rank:3}, cost {cc} bits, meets the power: {meets}");
    }
    Ok(())
}
