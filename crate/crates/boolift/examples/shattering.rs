//! VC witnesses for inner-product compositions: one dependency
//! certificate per variable yields n*(b-1) columns that the rows of
//! M[f IP_b] shatter, so the one-way cost is at least n*(b-1).

use boolift::comm::{comm_matrix, ip_shattering_witness, one_way_cc, shattering_check, vc_dim_bruteforce};
use boolift::{BooleanFunction, Caps, ComposedFunction, Gadget};

fn main() -> boolift::Result<()> {
    let caps = Caps::default();
    let f = BooleanFunction::maj(3)?;

    for b in [2u32, 3] {
        let w = ip_shattering_witness(&f, b, &caps)?;
        println!("maj:3 with ip:{b}");
        println!("  witness columns ({} of expected {}):", w.columns().len(), w.expected_size());
        for &y in w.columns() {
            println!("    {y:#x}");
        }
        let cf = ComposedFunction::new(f.clone(), Gadget::ip(b)?, &caps)?;
        let m = comm_matrix(&cf, &caps)?;
        println!("  shattered: {}", shattering_check(&m, w.columns(), &caps)?);
        for pattern in [0u32, 1, (1 << w.expected_size()) - 1] {
            println!("    pattern {pattern:#x} realized by row {:#x}", w.witness_row(pattern));
        }
        let cc = one_way_cc(&m)?;
        println!("  one-way cost {cc} bits, witness floor {}", w.expected_size());
        if b == 2 {
            let vc = vc_dim_bruteforce(&m, w.expected_size() + 1, &caps)?;
            println!("  brute-force VC dimension: {vc:?}");
        }
        println!();
    }
    Ok(())
}
