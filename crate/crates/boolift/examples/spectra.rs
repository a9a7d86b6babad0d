//! Möbius (AND-basis) and Fourier (parity-basis) spectra of a few named
//! functions, plus the pointwise-squaring identity that certifies a
//! spectrum really came from a 0/1-valued table.

use boolift::bits::mask_to_vars;
use boolift::transforms::{
    fourier_sparsity, mobius_spectrum, titsworth_check, FourierConvention,
};
use boolift::BooleanFunction;

fn main() -> boolift::Result<()> {
    let named = [
        ("maj:3", BooleanFunction::maj(3)?),
        ("xor:3", BooleanFunction::xor(3)?),
        ("omb:4", BooleanFunction::omb(4)?),
        ("addr:4", BooleanFunction::addr(4)?),
    ];
    for (name, f) in &named {
        let s = mobius_spectrum(f)?;
        println!("{name}  table {}", f.table_string());
        println!("  AND-basis terms ({}):", s.sparsity());
        for &(mask, c) in s.pairs() {
            println!("    {c:+} on variables {:?}", mask_to_vars(mask));
        }
        println!(
            "  parity sparsity: {} as 0/1, {} as +-1",
            fourier_sparsity(f, FourierConvention::ZeroOne)?,
            fourier_sparsity(f, FourierConvention::PlusMinus)?,
        );
        let t = titsworth_check(f)?;
        println!("  squaring identity holds: {}", t.ok);
        println!();
    }
    Ok(())
}
