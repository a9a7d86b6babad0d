//! Self-verification suite: twelve independent checks covering the
//! library's headline equalities and bounds, each exact and deterministic
//! for a given seed. `Fast` trims the random populations and the largest
//! exhaustive sweeps; `Full` runs the complete budgets.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::bf::{binomial_u64, BooleanFunction, ComposedFunction, Gadget};
use crate::bits::Bits;
use crate::comm::{
    and_matrix_rank_certified, comm_matrix, ip_shattering_witness, matrix_rank, one_way_cc,
    power_bound_check, shattering_check,
};
use crate::error::Result;
use crate::families::{
    br_enumerate, br_size, intersecting_check, largeq_check, packing_check, QaryFamily,
};
use crate::patterns::{closing_bound_holds, pattern_complexity, pattern_growth_trace, step_bound_holds};
use crate::query::{
    alternating_number, log2_ceil, naadt_exact, naadt_exact_unrestricted, napdt_exact,
    separating_check, separating_family, symmetric_naadt, symmetric_naadt_eval,
};
use crate::transforms::{
    mobius_sparsity, mobius_spectrum, titsworth_check, titsworth_check_spectrum, MobiusSpectrum,
};
use crate::Caps;

/// Verification depth: `Fast` is a smoke pass over trimmed populations,
/// `Full` runs every check at its complete size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

/// One suite item's outcome.
#[derive(Debug, Clone, Serialize)]
pub struct ItemOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
}

type Check = (bool, String);

struct Item {
    id: &'static str,
    title: &'static str,
    run: fn(Level, u64, &Caps) -> Result<Check>,
}

const ITEMS: [Item; 12] = [
    Item {
        id: "c01",
        title: "one-way cost of the AND composition equals the pattern logarithm",
        run: c01_oneway_equals_pattern_log,
    },
    Item {
        id: "c02",
        title: "AND-basis sparsity equals communication matrix rank",
        run: c02_sparsity_equals_rank,
    },
    Item {
        id: "c03",
        title: "pattern complexity sits between sparsity and its cube-root bound",
        run: c03_pattern_bounds,
    },
    Item {
        id: "c04",
        title: "odd-max-bit: sparsity, query count, one-way cost, alternation",
        run: c04_odd_max_bit,
    },
    Item {
        id: "c05",
        title: "addressing function: sparsity power law and one-way lower bound",
        run: c05_addressing,
    },
    Item {
        id: "c06",
        title: "inner-product compositions shatter n(b-1) columns",
        run: c06_shattering,
    },
    Item {
        id: "c07",
        title: "one-way cost of the XOR composition equals the parity query count",
        run: c07_xor_equals_parity_queries,
    },
    Item {
        id: "c08",
        title: "sampled AND plans evaluate every small-switch symmetric function",
        run: c08_symmetric_plans,
    },
    Item {
        id: "c09",
        title: "query counts sandwich sparsity and one-way cost on small functions",
        run: c09_query_sandwich,
    },
    Item {
        id: "c10",
        title: "q-ary ball families: sizes, intersection, packing bounds",
        run: c10_families,
    },
    Item {
        id: "c11",
        title: "union-convolution identity characterizes 0/1 spectra",
        run: c11_titsworth,
    },
    Item {
        id: "c12",
        title: "symmetric sparsity dominates the root of the top-tail count",
        run: c12_symmetric_sparsity,
    },
];

/// Runs every item in id order. Item errors (caps, preconditions) are
/// reported as failures, never panics.
pub fn run_suite(level: Level, seed: u64, caps: &Caps) -> Vec<ItemOutcome> {
    ITEMS
        .iter()
        .map(|item| {
            let start = Instant::now();
            let (passed, details) = match (item.run)(level, seed, caps) {
                Ok(check) => check,
                Err(e) => (false, format!("error: {e}")),
            };
            ItemOutcome {
                id: item.id,
                title: item.title,
                passed,
                details,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

pub fn all_passed(outcomes: &[ItemOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

fn random_per_n(level: Level) -> u64 {
    match level {
        Level::Fast => 100,
        Level::Full => 1000,
    }
}

fn random_function(n: u32, rng: &mut ChaCha12Rng) -> BooleanFunction {
    BooleanFunction::from_fn(n, |_| rng.gen::<bool>()).expect("arity within caps")
}

/// Shared population: every function on up to 3 variables, then seeded
/// random functions at n in 4..=8. The per-n random streams depend only on
/// the seed, so every caller sees the same functions.
fn visit_population(
    level: Level,
    seed: u64,
    mut visit: impl FnMut(&BooleanFunction) -> Result<Option<String>>,
) -> Result<(u64, Option<String>)> {
    let mut count = 0u64;
    for n in 1..=3u32 {
        for t in 0..1u64 << (1 << n) {
            let f = BooleanFunction::new_total(n, Bits::from_fn(1 << n, |i| t >> i & 1 == 1))?;
            count += 1;
            if let Some(msg) = visit(&f)? {
                return Ok((count, Some(msg)));
            }
        }
    }
    for n in 4..=8u32 {
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ (0xb001_1f70_0000 + n as u64));
        for _ in 0..random_per_n(level) {
            let f = random_function(n, &mut rng);
            count += 1;
            if let Some(msg) = visit(&f)? {
                return Ok((count, Some(msg)));
            }
        }
    }
    Ok((count, None))
}

fn population_summary(level: Level) -> String {
    format!("276 exhaustive (n <= 3) + {} random at each n in 4..=8", random_per_n(level))
}

// ---------------------------------------------------------------------
// c01

fn c01_oneway_equals_pattern_log(level: Level, seed: u64, caps: &Caps) -> Result<Check> {
    let and = Gadget::and1();
    let (count, fail) = visit_population(level, seed, |f| {
        let cf = ComposedFunction::new(f.clone(), and.clone(), caps)?;
        let cc = one_way_cc(&comm_matrix(&cf, caps)?)?;
        let pat = pattern_complexity(f, caps)?;
        if cc != log2_ceil(pat) {
            return Ok(Some(format!(
                "{}: one-way cost {cc} != ceil log2 of {pat} patterns",
                f.table_string()
            )));
        }
        Ok(None)
    })?;
    match fail {
        Some(msg) => Ok((false, msg)),
        None => Ok((true, format!("{count} functions ({}), all equal", population_summary(level)))),
    }
}

// ---------------------------------------------------------------------
// c02

fn c02_sparsity_equals_rank(level: Level, seed: u64, caps: &Caps) -> Result<Check> {
    let and = Gadget::and1();
    let mut spot: HashMap<u32, u32> = HashMap::new();
    let (count, fail) = visit_population(level, seed, |f| {
        let n = f.arity();
        let spar = mobius_sparsity(f)? as u32;
        let rank = if n <= 6 {
            let cf = ComposedFunction::new(f.clone(), and.clone(), caps)?;
            matrix_rank(&comm_matrix(&cf, caps)?, caps)?
        } else {
            // The certified path proves rank equals sparsity internally;
            // a few direct eliminations per arity corroborate it.
            let certified = and_matrix_rank_certified(f)?;
            let spots = spot.entry(n).or_insert(0);
            if *spots < 3 {
                *spots += 1;
                let cf = ComposedFunction::new(f.clone(), and.clone(), caps)?;
                let eliminated = matrix_rank(&comm_matrix(&cf, caps)?, caps)?;
                if eliminated != certified {
                    return Ok(Some(format!(
                        "{}: elimination rank {eliminated} != certified rank {certified}",
                        f.table_string()
                    )));
                }
            }
            certified
        };
        if spar != rank {
            return Ok(Some(format!(
                "{}: sparsity {spar} != matrix rank {rank}",
                f.table_string()
            )));
        }
        Ok(None)
    })?;
    match fail {
        Some(msg) => Ok((false, msg)),
        None => Ok((
            true,
            format!(
                "{count} functions ({}); elimination to n=6, certificate plus 3 spot eliminations at n=7,8",
                population_summary(level)
            ),
        )),
    }
}

// ---------------------------------------------------------------------
// c03

fn c03_pattern_bounds(level: Level, seed: u64, caps: &Caps) -> Result<Check> {
    let mut steps_seen = 0u64;
    let (count, fail) = visit_population(level, seed, |f| {
        // Below two support sets there is no pair to trace; the outer
        // bounds still apply to the direct pattern count.
        if mobius_sparsity(f)? < 2 {
            let spar = mobius_sparsity(f)? as u64;
            let pat = pattern_complexity(f, caps)?;
            if spar > pat || !closing_bound_holds(pat, spar as u32) {
                return Ok(Some(format!(
                    "{}: {pat} patterns out of bounds at sparsity {spar}",
                    f.table_string()
                )));
            }
            return Ok(None);
        }
        let trace = pattern_growth_trace(f, caps)?;
        let spar = trace.sparsity as u64;
        if spar > trace.final_patterns {
            return Ok(Some(format!(
                "{}: sparsity {spar} exceeds {} patterns",
                f.table_string(),
                trace.final_patterns
            )));
        }
        if !closing_bound_holds(trace.final_patterns, trace.sparsity as u32) {
            return Ok(Some(format!(
                "{}: {} patterns break the closing bound at sparsity {spar}",
                f.table_string(),
                trace.final_patterns
            )));
        }
        for step in &trace.steps {
            steps_seen += 1;
            if !step_bound_holds(step.partial_patterns, step.tracked.len() as u32) {
                return Ok(Some(format!(
                    "{}: step at {} tracked sets shows {} partial patterns",
                    f.table_string(),
                    step.tracked.len(),
                    step.partial_patterns
                )));
            }
        }
        Ok(None)
    })?;
    match fail {
        Some(msg) => Ok((false, msg)),
        None => Ok((
            true,
            format!(
                "{count} functions ({}); {steps_seen} growth steps within the per-step bound",
                population_summary(level)
            ),
        )),
    }
}

// ---------------------------------------------------------------------
// c04

fn c04_odd_max_bit(_level: Level, _seed: u64, caps: &Caps) -> Result<Check> {
    for n in 1..=12u32 {
        let f = BooleanFunction::omb(n)?;
        let expect = if n % 2 == 0 { n } else { n + 1 };
        let spar = mobius_sparsity(&f)? as u32;
        if spar != expect {
            return Ok((false, format!("omb:{n} sparsity {spar}, expected {expect}")));
        }
        let alt = alternating_number(&f)?;
        if alt != n {
            return Ok((false, format!("omb:{n} alternating number {alt}, expected {n}")));
        }
    }
    for n in 1..=5u32 {
        let f = BooleanFunction::omb(n)?;
        let (queries, _) = naadt_exact(&f, caps)?;
        if queries != n {
            return Ok((false, format!("omb:{n} needs {queries} AND queries, expected {n}")));
        }
    }
    for n in 1..=10u32 {
        let f = BooleanFunction::omb(n)?;
        let cf = ComposedFunction::new(f, Gadget::and1(), caps)?;
        let cc = one_way_cc(&comm_matrix(&cf, caps)?)?;
        let expect = log2_ceil(n as u64 + 1);
        if cc != expect {
            return Ok((false, format!("omb:{n} one-way cost {cc}, expected {expect}")));
        }
    }
    Ok((
        true,
        "sparsity and alternation to n=12, exact query search to n=5, one-way cost to n=10".into(),
    ))
}

// ---------------------------------------------------------------------
// c05

fn c05_addressing(_level: Level, _seed: u64, caps: &Caps) -> Result<Check> {
    for (n, expect) in [(2u32, 3u32), (4, 9), (8, 27)] {
        let spar = mobius_sparsity(&BooleanFunction::addr(n)?)? as u32;
        if spar != expect {
            return Ok((false, format!("addr:{n} sparsity {spar}, expected {expect}")));
        }
    }
    for n in [2u32, 4] {
        let f = BooleanFunction::addr(n)?;
        let pat = pattern_complexity(&f, caps)?;
        if pat < 1 << n {
            return Ok((false, format!("addr:{n} has {pat} patterns, below 2^{n}")));
        }
        let cf = ComposedFunction::new(f, Gadget::and1(), caps)?;
        let m = comm_matrix(&cf, caps)?;
        let rank = matrix_rank(&m, caps)?;
        let cc = one_way_cc(&m)?;
        if !power_bound_check(cc as u64, rank as u64)? {
            return Ok((false, format!("addr:{n} one-way cost {cc} below rank^(log_3 2) at rank {rank}")));
        }
    }
    Ok((true, "sparsity 3,9,27 at n=2,4,8; pattern and one-way lower bounds at n=2,4".into()))
}

// ---------------------------------------------------------------------
// c06

fn c06_shattering(level: Level, _seed: u64, caps: &Caps) -> Result<Check> {
    let mut checked = 0u64;
    for n in 1..=3u32 {
        for t in 0..1u64 << (1 << n) {
            let f = BooleanFunction::new_total(n, Bits::from_fn(1 << n, |i| t >> i & 1 == 1))?;
            if !f.depends_on_all() {
                continue;
            }
            for b in [2u32, 3] {
                if level == Level::Fast && b == 3 && n == 3 {
                    continue;
                }
                let witness = ip_shattering_witness(&f, b, caps)?;
                if witness.columns().len() as u32 != n * (b - 1) {
                    return Ok((false, format!(
                        "{} b={b}: witness has {} columns, expected {}",
                        f.table_string(),
                        witness.columns().len(),
                        n * (b - 1)
                    )));
                }
                let cf = ComposedFunction::new(f.clone(), Gadget::ip(b)?, caps)?;
                let m = comm_matrix(&cf, caps)?;
                if !shattering_check(&m, witness.columns(), caps)? {
                    return Ok((false, format!(
                        "{} b={b}: witness columns are not shattered",
                        f.table_string()
                    )));
                }
                if b == 2 {
                    let cc = one_way_cc(&m)?;
                    if cc < n {
                        return Ok((false, format!(
                            "{} b=2: one-way cost {cc} below the shattering bound {n}",
                            f.table_string()
                        )));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok((
        true,
        format!("{checked} (function, block) pairs over all fully-dependent n <= 3 functions"),
    ))
}

// ---------------------------------------------------------------------
// c07

fn c07_xor_equals_parity_queries(_level: Level, _seed: u64, caps: &Caps) -> Result<Check> {
    let xor = Gadget::xor1();
    let mut count = 0u64;
    for n in 1..=3u32 {
        for t in 0..1u64 << (1 << n) {
            let f = BooleanFunction::new_total(n, Bits::from_fn(1 << n, |i| t >> i & 1 == 1))?;
            let (queries, _) = napdt_exact(&f, caps)?;
            let cf = ComposedFunction::new(f.clone(), xor.clone(), caps)?;
            let cc = one_way_cc(&comm_matrix(&cf, caps)?)?;
            if cc != queries {
                return Ok((false, format!(
                    "{}: one-way cost {cc} != {queries} parity queries",
                    f.table_string()
                )));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} functions, exhaustive n <= 3, both sides by exact search")))
}

// ---------------------------------------------------------------------
// c08

fn symmetric_with_switch(n: u32, k: u32) -> Vec<Vec<bool>> {
    // Constant below weight n-k, flipped at n-k, free above: 2^(k+1) spectra.
    let mut out = Vec::new();
    for c in [false, true] {
        for tail in 0..1u32 << k {
            let mut spectrum = vec![c; (n + 1) as usize];
            spectrum[(n - k) as usize] = !c;
            for j in 0..k {
                spectrum[(n - k + 1 + j) as usize] = tail >> j & 1 == 1;
            }
            out.push(spectrum);
        }
    }
    out
}

fn c08_symmetric_plans(level: Level, _seed: u64, caps: &Caps) -> Result<Check> {
    // The attempt bound is stated for seed 0, so this item pins the seed.
    let seed = 0u64;
    let grid: Vec<(u32, u32)> = match level {
        Level::Fast => vec![(8, 1), (8, 2), (12, 1), (12, 2)],
        Level::Full => {
            let mut g = Vec::new();
            for n in [8u32, 12, 16] {
                for k in [1u32, 2, 3] {
                    g.push((n, k));
                }
            }
            g
        }
    };
    let mut plans = 0u64;
    let mut max_attempts = 0u32;
    for &(n, k) in &grid {
        let sampled = separating_family(n, k, None, seed, caps)?;
        max_attempts = max_attempts.max(sampled.attempts);
        if sampled.attempts > 8 {
            return Ok((false, format!("n={n} k={k}: {} sampling attempts", sampled.attempts)));
        }
        let log = (binomial_u64(n as u64, k as u64) as f64).log2();
        let bound = (24.0 * std::f64::consts::E * log * log).ceil() as u64;
        if sampled.family.sets.len() as u64 > bound {
            return Ok((false, format!(
                "n={n} k={k}: family of {} sets exceeds the bound {bound}",
                sampled.family.sets.len()
            )));
        }
        if !separating_check(&sampled.family, n, k, caps)?.ok {
            return Ok((false, format!("n={n} k={k}: family fails the separating check")));
        }

        // All plans at this (n, k) share the deterministic family, so the
        // pattern-to-weight classification of all 2^n inputs is computed
        // once. It only shortcuts evaluation when every reference pattern
        // pins a unique weight; otherwise each function falls back to the
        // full evaluator.
        let spectra = symmetric_with_switch(n, k);
        let representative = BooleanFunction::symmetric(&spectra[0])?;
        let rep_plan = symmetric_naadt(&representative, seed, caps)?;
        if rep_plan.family.sets != sampled.family.sets {
            return Ok((false, format!("n={n} k={k}: plan family differs from the shared sample")));
        }
        let mut pattern_weight: HashMap<Bits, u32> = HashMap::new();
        let mut unique_weights = true;
        for y in 0..1u32 << n {
            let w = y.count_ones();
            if w < n - k {
                continue;
            }
            let old = pattern_weight.insert(rep_plan.pattern(y), w);
            if old.is_some_and(|prev| prev != w) {
                unique_weights = false;
            }
        }
        let buckets: Vec<Option<u32>> = (0..1u32 << n)
            .map(|x| pattern_weight.get(&rep_plan.pattern(x)).copied())
            .collect();

        for (i, spectrum) in spectra.iter().enumerate() {
            let f = BooleanFunction::symmetric(spectrum)?;
            let plan = symmetric_naadt(&f, seed, caps)?;
            if plan.family.sets != sampled.family.sets {
                return Ok((false, format!("n={n} k={k}: plan family differs across functions")));
            }
            plans += 1;
            if i == 0 || !unique_weights {
                // Full public-path sweep.
                for x in 0..1u32 << n {
                    if symmetric_naadt_eval(&plan, x) != f.value_unchecked(x) {
                        return Ok((false, format!(
                            "n={n} k={k} spectrum {i}: plan disagrees at input {x:#x}"
                        )));
                    }
                }
            } else {
                for (x, bucket) in buckets.iter().enumerate() {
                    let predicted = match bucket {
                        Some(w) => spectrum[*w as usize],
                        None => plan.default_value,
                    };
                    if predicted != f.value_unchecked(x as u32) {
                        return Ok((false, format!(
                            "n={n} k={k} spectrum {i}: plan disagrees at input {x:#x}"
                        )));
                    }
                }
            }
        }
    }
    Ok((
        true,
        format!(
            "{} (n, k) cells at seed 0, {plans} plans, worst sampling attempts {max_attempts}",
            grid.len()
        ),
    ))
}

// ---------------------------------------------------------------------
// c09

/// Input remappings induced by the 24 permutations of four variables.
fn input_permutations4() -> Vec<[u16; 16]> {
    use itertools::Itertools;
    (0..4u8)
        .permutations(4)
        .map(|perm| {
            let mut sigma = [0u16; 16];
            for (y, slot) in sigma.iter_mut().enumerate() {
                let mut image = 0u16;
                for (i, &p) in perm.iter().enumerate() {
                    image |= (((y >> i) & 1) as u16) << p;
                }
                *slot = image;
            }
            sigma
        })
        .collect()
}

fn remap_table4(t: u16, sigma: &[u16; 16]) -> u16 {
    let mut out = 0u16;
    for y in 0..16 {
        if t >> y & 1 == 1 {
            out |= 1 << sigma[y];
        }
    }
    out
}

fn c09_check_one(f: &BooleanFunction, caps: &Caps) -> Result<Option<String>> {
    let spar = mobius_sparsity(f)? as u64;
    let (queries, _) = naadt_exact(f, caps)?;
    let (unrestricted, _) = naadt_exact_unrestricted(f, caps)?;
    if queries != unrestricted {
        return Ok(Some(format!(
            "{}: pruned search found {queries}, unrestricted {unrestricted}",
            f.table_string()
        )));
    }
    if (queries as u64) < log2_ceil(spar) as u64 || queries as u64 > spar {
        return Ok(Some(format!(
            "{}: {queries} queries outside [ceil log2 {spar}, {spar}]",
            f.table_string()
        )));
    }
    let cf = ComposedFunction::new(f.clone(), Gadget::and1(), caps)?;
    let cc = one_way_cc(&comm_matrix(&cf, caps)?)?;
    if cc < log2_ceil(queries as u64) || cc > queries {
        return Ok(Some(format!(
            "{}: one-way cost {cc} outside [ceil log2 {queries}, {queries}]",
            f.table_string()
        )));
    }
    Ok(None)
}

fn c09_query_sandwich(level: Level, _seed: u64, caps: &Caps) -> Result<Check> {
    let mut count = 0u64;
    for n in 1..=3u32 {
        for t in 0..1u64 << (1 << n) {
            let f = BooleanFunction::new_total(n, Bits::from_fn(1 << n, |i| t >> i & 1 == 1))?;
            if let Some(msg) = c09_check_one(&f, caps)? {
                return Ok((false, msg));
            }
            count += 1;
        }
    }
    if level == Level::Fast {
        return Ok((true, format!("{count} functions, exhaustive n <= 3")));
    }
    // n = 4 exhaustively, deduplicated by variable permutation: every
    // measure checked here is invariant under permuting inputs, so one
    // representative per orbit covers the orbit.
    let sigmas = input_permutations4();
    let mut reps = 0u64;
    for t in 0..=u16::MAX {
        let canonical = sigmas.iter().map(|s| remap_table4(t, s)).min().unwrap();
        if t != canonical {
            continue;
        }
        let f = BooleanFunction::new_total(4, Bits::from_fn(16, |i| t >> i & 1 == 1))?;
        if let Some(msg) = c09_check_one(&f, caps)? {
            return Ok((false, msg));
        }
        reps += 1;
        count += 1;
    }
    Ok((
        true,
        format!("{count} functions: exhaustive n <= 3 plus {reps} permutation-class representatives at n=4"),
    ))
}

// ---------------------------------------------------------------------
// c10

/// Structural proof of d-intersection for a ball family: every member has
/// at least d+r ones in the d+2r window, so any two members share ones in
/// at least (d+r) + (d+r) - (d+2r) = d window coordinates.
fn window_certifies(fam: &QaryFamily, d: u32, r: u32) -> bool {
    let window = (d + 2 * r) as usize;
    let need = (d + r) as usize;
    fam.members().iter().all(|m| m[..window].iter().filter(|&&x| x == 1).count() >= need)
}

fn c10_families(level: Level, seed: u64, caps: &Caps) -> Result<Check> {
    // Frozen instance with an independent membership count.
    let fam = br_enumerate(3, 9, 3, 2, caps)?;
    let mut direct = 0u64;
    for idx in 0..19683u32 {
        let mut x = idx;
        let mut ones = 0;
        for pos in 0..9 {
            if x % 3 == 0 && pos < 7 {
                ones += 1;
            }
            x /= 3;
        }
        if ones >= 5 {
            direct += 1;
        }
    }
    if fam.len() != 891 || direct != 891 || br_size(3, 9, 3, 2)? != 891u32.into() {
        return Ok((false, format!(
            "frozen ball family: enumerated {}, direct count {direct}, expected 891",
            fam.len()
        )));
    }

    let (n_max, scan_limit) = match level {
        Level::Fast => (7u32, 4096usize),
        Level::Full => (9u32, 8192usize),
    };
    let mut instances = 0u64;
    let mut certified = 0u64;
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xfa51_11e5);
    for q in [3u32, 4] {
        for n in 1..=n_max {
            for d in 0..=3u32 {
                for r in 0..=3u32 {
                    if n < d + 2 * r {
                        continue;
                    }
                    let fam = br_enumerate(q, n, d, r, caps)?;
                    if br_size(q, n, d, r)? != fam.len().into() {
                        return Ok((false, format!(
                            "q={q} n={n} d={d} r={r}: size formula disagrees with enumeration ({} members)",
                            fam.len()
                        )));
                    }
                    instances += 1;
                    if d == 0 {
                        continue;
                    }
                    if fam.len() <= scan_limit {
                        if !intersecting_check(&fam, d, caps)?.ok {
                            return Ok((false, format!(
                                "q={q} n={n} d={d} r={r}: pairwise scan found a violating pair"
                            )));
                        }
                    } else {
                        // Too many pairs to scan: certify structurally and
                        // run the public scan on a seeded subfamily.
                        if !window_certifies(&fam, d, r) {
                            return Ok((false, format!(
                                "q={q} n={n} d={d} r={r}: window certificate fails"
                            )));
                        }
                        let idx = rand::seq::index::sample(&mut rng, fam.len(), 2000);
                        let members = idx.iter().map(|i| fam.members()[i].clone()).collect();
                        let sub = QaryFamily::new(q, n, members)?;
                        if !intersecting_check(&sub, d, caps)?.ok {
                            return Ok((false, format!(
                                "q={q} n={n} d={d} r={r}: sampled subfamily fails the scan"
                            )));
                        }
                        certified += 1;
                    }
                }
            }
        }
    }

    let packing_n = match level {
        Level::Fast => 30u32,
        Level::Full => 60,
    };
    let mut packing_points = 0u64;
    for q in 3..=10u32 {
        for n in 3..=packing_n {
            for d in 1..=n / 3 {
                if !packing_check(q, n, d)? {
                    return Ok((false, format!("packing bound fails at q={q} n={n} d={d}")));
                }
                packing_points += 1;
            }
        }
    }

    let largeq_points = [
        (100u32, 9u32, 3u32),
        (150, 12, 4),
        (200, 15, 5),
        (300, 18, 6),
        (400, 21, 7),
        (500, 24, 8),
        (700, 30, 10),
        (1000, 36, 12),
        (2000, 45, 15),
        (5000, 60, 20),
    ];
    for (q, n, d) in largeq_points {
        if !largeq_check(q, n, d)? {
            return Ok((false, format!("large-alphabet bound fails at q={q} n={n} d={d}")));
        }
    }

    Ok((
        true,
        format!(
            "891 frozen; {instances} grid instances ({certified} window-certified), {packing_points} packing points, 10 large-alphabet points"
        ),
    ))
}

// ---------------------------------------------------------------------
// c11

fn c11_titsworth(level: Level, seed: u64, _caps: &Caps) -> Result<Check> {
    let mut count = 0u64;
    for n in 1..=3u32 {
        for t in 0..1u64 << (1 << n) {
            let f = BooleanFunction::new_total(n, Bits::from_fn(1 << n, |i| t >> i & 1 == 1))?;
            if !titsworth_check(&f)?.ok {
                return Ok((false, format!("{}: identity fails", f.table_string())));
            }
            count += 1;
        }
    }
    let random = match level {
        Level::Fast => 200u64,
        Level::Full => 1000,
    };
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x7175_0874);
    for _ in 0..random {
        let f = random_function(8, &mut rng);
        if !titsworth_check(&f)?.ok {
            return Ok((false, format!("{}: identity fails", f.table_string())));
        }
        count += 1;
    }
    // Negative control: adding 3 to any single coefficient shifts the
    // function by 3 on a nonempty set of inputs, so it is no longer
    // 0/1-valued and the identity must break with a witness.
    let mutations = match level {
        Level::Fast => 10u64,
        Level::Full => 50,
    };
    for _ in 0..mutations {
        let f = random_function(8, &mut rng);
        let s = mobius_spectrum(&f)?;
        let target = s.pairs().first().map_or(0, |&(m, _)| m);
        let mut pairs: Vec<(u32, i64)> = s.pairs().to_vec();
        pairs.push((target, 3));
        let mutated = MobiusSpectrum::from_pairs(8, pairs)?;
        let outcome = titsworth_check_spectrum(&mutated)?;
        if outcome.ok || outcome.violation.is_none() {
            return Ok((false, format!(
                "{}: mutated spectrum at mask {target:#x} was not caught",
                f.table_string()
            )));
        }
    }
    Ok((true, format!(
        "{count} spectra pass; {mutations} mutated spectra all caught with witnesses"
    )))
}

// ---------------------------------------------------------------------
// c12

fn c12_symmetric_sparsity(level: Level, seed: u64, _caps: &Caps) -> Result<Check> {
    let per_n = match level {
        Level::Fast => 50u64,
        Level::Full => 200,
    };
    let mut count = 0u64;
    for n in [8u32, 10, 12] {
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ (0x5e11_0000 + n as u64));
        let mut done = 0u64;
        while done < per_n {
            let spectrum: Vec<bool> = (0..=n).map(|_| rng.gen::<bool>()).collect();
            if spectrum.iter().all(|&v| v == spectrum[0]) {
                continue;
            }
            let f = BooleanFunction::symmetric(&spectrum)?;
            let k = f.switch_value()?;
            let spar = mobius_sparsity(&f)? as u128;
            let tail: u128 = (n - k..=n).map(|i| binomial_u64(n as u64, i as u64) as u128).sum();
            if spar * spar < tail {
                return Ok((false, format!(
                    "n={n} switch {k}: sparsity {spar} squared is below the tail count {tail}"
                )));
            }
            done += 1;
            count += 1;
        }
    }
    Ok((true, format!("{count} random symmetric spectra over n in {{8, 10, 12}}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_passes_end_to_end() {
        let outcomes = run_suite(Level::Fast, 0, &Caps::default());
        assert_eq!(outcomes.len(), 12);
        for o in &outcomes {
            assert!(o.passed, "{} failed: {}", o.id, o.details);
        }
        assert!(all_passed(&outcomes));
        let ids: Vec<&str> = outcomes.iter().map(|o| o.id).collect();
        assert_eq!(ids, ["c01", "c02", "c03", "c04", "c05", "c06", "c07", "c08", "c09", "c10", "c11", "c12"]);
    }

    #[test]
    fn suite_is_deterministic_for_a_seed() {
        let caps = Caps::default();
        let a = run_suite(Level::Fast, 7, &caps);
        let b = run_suite(Level::Fast, 7, &caps);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.passed, y.passed);
            assert_eq!(x.details, y.details);
        }
    }

    #[test]
    fn permutation_remap_is_a_group_action() {
        let sigmas = input_permutations4();
        assert_eq!(sigmas.len(), 24);
        // The identity permutation leaves every table fixed.
        assert!(sigmas.iter().any(|s| (0..16).all(|y| s[y] == y as u16)));
        // Orbit sizes divide 24 and every orbit member has the same canonical form.
        for t in [0x0001u16, 0xe8e8, 0x1234] {
            let canon = sigmas.iter().map(|s| remap_table4(t, s)).min().unwrap();
            for s in &sigmas {
                let mapped = remap_table4(t, s);
                let canon2 = sigmas.iter().map(|s2| remap_table4(mapped, s2)).min().unwrap();
                assert_eq!(canon, canon2);
            }
        }
    }

    #[test]
    fn switch_enumeration_matches_definition() {
        for (n, k) in [(8u32, 1u32), (8, 3), (12, 2)] {
            let spectra = symmetric_with_switch(n, k);
            assert_eq!(spectra.len(), 1 << (k + 1));
            for spectrum in &spectra {
                let f = BooleanFunction::symmetric(spectrum).unwrap();
                assert_eq!(f.switch_value().unwrap(), k);
            }
        }
    }
}
