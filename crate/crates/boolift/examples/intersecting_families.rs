//! q-ary d-intersecting families built from a ball around the all-ones
//! string: members have at least d+r ones in the first d+2r coordinates,
//! so any two agree on at least d positions there, and the remaining
//! coordinates are free.

use boolift::families::{
    agr, br_enumerate, br_size, intersecting_check, largeq_check, packing_check,
};
use boolift::Caps;

fn main() -> boolift::Result<()> {
    let caps = Caps::default();

    let (q, n, d, r) = (3u32, 9u32, 3u32, 2u32);
    let fam = br_enumerate(q, n, d, r, &caps)?;
    println!("ball family at q={q}, n={n}, d={d}, r={r}: {} members", fam.len());
    println!("closed-form size: {}", br_size(q, n, d, r)?);
    let strings = fam.digit_strings();
    println!("first members: {:?}", &strings[..4.min(strings.len())]);
    let outcome = intersecting_check(&fam, d, &caps)?;
    println!("pairwise {d}-intersecting: {}", outcome.ok);
    println!();

    println!("largest d-intersecting family sizes at q=3:");
    for (n, d) in [(5u32, 1u32), (7, 3), (9, 3)] {
        println!("  n={n}, d={d}: {}", agr(3, n, d)?);
    }
    println!();

    println!("tenth-power packing bound, a^10 < q^(10n-d):");
    for (q, n, d) in [(3u32, 9u32, 3u32), (4, 8, 2)] {
        println!("  q={q}, n={n}, d={d}: {}", packing_check(q, n, d)?);
    }
    println!();

    println!("large-alphabet fourth-power bound, needs q d^2 > e^2 n^2:");
    println!("  q=100, n=9, d=3: {}", largeq_check(100, 9, 3)?);
    match largeq_check(66, 9, 3) {
        Err(e) => println!("  q=66,  n=9, d=3: rejected ({e})"),
        Ok(v) => println!("  q=66,  n=9, d=3: {v}"),
    }
    Ok(())
}
