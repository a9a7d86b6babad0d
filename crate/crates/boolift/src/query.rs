//! Non-adaptive query complexities and the randomized symmetric plan.
//!
//! Three exact models: plain variable queries (`nonadaptive_dt`), AND
//! queries (`naadt_exact`), and parity queries (`napdt_exact`). Each asks
//! for the smallest set of queries, fixed in advance, whose answers
//! determine the function. Alongside them: the alternating number, and the
//! sampled separating family that powers a small AND plan for symmetric
//! functions of low switch value.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bf::{binomial_u64, BooleanFunction};
use crate::bits::{full_mask, Bits};
use crate::error::{Error, Result};
use crate::transforms::mobius_support;
use crate::Caps;

/// Ordered family of subset masks, the common shape of query bases and
/// separating families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub arity: u32,
    pub sets: Vec<u32>,
}

impl SetFamily {
    /// Masks as fixed-width hex strings, the family's wire format.
    pub fn hex_sets(&self) -> Vec<String> {
        let digits = (self.arity as usize).div_ceil(4).max(1);
        self.sets.iter().map(|m| format!("{m:0digits$x}")).collect()
    }
}

/// Walks all size-k index combinations of 0..n in lexicographic order,
/// calling `visit` with each; stops early when `visit` returns true.
pub(crate) fn for_each_combination(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        // Advance the rightmost index that still has room.
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Evaluation bitmap of one query over all 2^n inputs, one word per 64
/// inputs.
fn query_bitmap(n: u32, mut q: impl FnMut(u32) -> bool) -> Vec<u64> {
    let size = 1u64 << n;
    let words = (size as usize).div_ceil(64);
    let mut bm = vec![0u64; words];
    for x in 0..size as u32 {
        bm[(x >> 6) as usize] |= (q(x) as u64) << (x & 63);
    }
    bm
}

/// Whether the answer vector of the chosen query bitmaps determines the
/// function: inputs sharing one answer vector must share their value.
///
/// The small case keeps a dense answer-vector table on the stack and exits
/// on the first conflict; the general case splits input classes per query.
fn queries_determine(n: u32, idx: &[usize], bitmaps: &[Vec<u64>], ones: &[u64]) -> bool {
    if n <= 6 && idx.len() <= 6 {
        let mut val = [0u8; 64];
        for x in 0..1u32 << n {
            let mut key = 0usize;
            for (i, &q) in idx.iter().enumerate() {
                key |= ((bitmaps[q][0] >> x & 1) as usize) << i;
            }
            let v = (ones[0] >> x & 1) as u8 + 1;
            let slot = &mut val[key];
            if *slot == 0 {
                *slot = v;
            } else if *slot != v {
                return false;
            }
        }
        return true;
    }
    let words = (1usize << n).div_ceil(64);
    let mut full = vec![u64::MAX; words];
    if n < 6 {
        full[0] = (1u64 << (1 << n)) - 1;
    }
    let mut classes: Vec<Vec<u64>> = vec![full];
    let mut next: Vec<Vec<u64>> = Vec::new();
    for &q in idx {
        let bm = &bitmaps[q];
        next.clear();
        for class in &classes {
            let mut inside = vec![0u64; words];
            let mut outside = vec![0u64; words];
            let (mut any_in, mut any_out) = (false, false);
            for w in 0..words {
                inside[w] = class[w] & bm[w];
                outside[w] = class[w] & !bm[w];
                any_in |= inside[w] != 0;
                any_out |= outside[w] != 0;
            }
            if any_in {
                next.push(inside);
            }
            if any_out {
                next.push(outside);
            }
        }
        std::mem::swap(&mut classes, &mut next);
    }
    classes.iter().all(|class| {
        let hit = (0..words).any(|w| class[w] & ones[w] != 0);
        let miss = (0..words).any(|w| class[w] & !ones[w] != 0);
        !(hit && miss)
    })
}

fn ones_bitmap(f: &BooleanFunction) -> Vec<u64> {
    query_bitmap(f.arity(), |x| f.value_unchecked(x))
}

/// Minimum number of input variables whose values determine `f` on its
/// domain, with the least witness set.
///
/// Every variable with a defined dependency pair must be in any witness, so
/// the search runs over supersets of that mandatory core, by size then by
/// mask.
pub fn nonadaptive_dt(f: &BooleanFunction, caps: &Caps) -> Result<(u32, u32)> {
    let n = f.arity();
    if n > 20 {
        return Err(Error::ArityTooLarge { arity: n, cap: 20 });
    }
    let domain = f.domain_points();
    let mandatory: u32 = f
        .dependencies()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_some())
        .fold(0, |m, (i, _)| m | 1 << i);
    let free: Vec<u32> = (0..n).filter(|i| mandatory >> i & 1 == 0).map(|i| 1 << i).collect();
    let determined = |qmask: u32| {
        let mut value_for: HashMap<u32, bool> = HashMap::new();
        domain.iter().all(|&x| {
            let v = f.value_unchecked(x);
            *value_for.entry(x & qmask).or_insert(v) == v
        })
    };
    let mut budget = 0u64;
    for extra in 0..=free.len() {
        let mut found = None;
        for_each_combination(free.len(), extra, |idx| {
            budget += domain.len() as u64;
            if budget > caps.work {
                return true;
            }
            let qmask = idx.iter().fold(mandatory, |m, &i| m | free[i]);
            if determined(qmask) {
                found = Some(qmask);
                return true;
            }
            false
        });
        if budget > caps.work {
            return Err(Error::CapExceeded {
                what: "variable-set enumeration",
                needed: budget as u128,
                cap: caps.work as u128,
            });
        }
        if let Some(qmask) = found {
            return Ok((qmask.count_ones(), qmask));
        }
    }
    unreachable!("querying every variable always determines the function")
}

fn check_naadt_arity(f: &BooleanFunction, caps: &Caps) -> Result<u32> {
    let n = f.arity();
    if !f.is_total() {
        return Err(Error::PartialUnsupported { op: "non-adaptive query search" });
    }
    if n > caps.naadt_arity {
        return Err(Error::ArityTooLarge { arity: n, cap: caps.naadt_arity });
    }
    Ok(n)
}

/// Shared search core for AND/parity bases: iterative deepening over
/// `pool`, combinations in lexicographic order, first determining family
/// wins.
fn smallest_basis(
    f: &BooleanFunction,
    pool: &[u32],
    start: usize,
    bitmaps: Vec<Vec<u64>>,
    caps: &Caps,
) -> Result<(u32, SetFamily)> {
    let n = f.arity();
    let ones = ones_bitmap(f);
    let mut budget = 0u64;
    for k in start..=pool.len() {
        let mut found = None;
        for_each_combination(pool.len(), k, |idx| {
            budget += 1u64 << n.min(8);
            if budget > caps.work {
                return true;
            }
            if queries_determine(n, idx, &bitmaps, &ones) {
                found = Some(idx.iter().map(|&i| pool[i]).collect::<Vec<u32>>());
                return true;
            }
            false
        });
        if budget > caps.work {
            return Err(Error::CapExceeded {
                what: "query-family search",
                needed: budget as u128,
                cap: caps.work as u128,
            });
        }
        if let Some(sets) = found {
            return Ok((k as u32, SetFamily { arity: n, sets }));
        }
    }
    unreachable!("the full pool always contains a determining family")
}

/// Starting depth for the AND search: the sparsity logarithm is a proven
/// lower bound on the basis size.
pub(crate) fn log2_ceil(v: u64) -> u32 {
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros()
    }
}

/// Minimum number of AND queries determining total `f`, with the least
/// basis. The candidate pool keeps only nonempty submasks of support sets;
/// every basis AND outside all of them can be dropped, so some optimal
/// basis survives the pruning.
pub fn naadt_exact(f: &BooleanFunction, caps: &Caps) -> Result<(u32, SetFamily)> {
    let support = mobius_support(f)?;
    let mut pool: Vec<u32> = Vec::new();
    for &s in &support {
        // Walk all nonempty submasks of s.
        let mut sub = s;
        while sub != 0 {
            pool.push(sub);
            sub = (sub - 1) & s;
        }
    }
    pool.sort_unstable();
    pool.dedup();
    naadt_over_pool(f, pool, support.len() as u64, caps)
}

/// [`naadt_exact`] with every nonempty mask as a candidate; exponentially
/// larger search, kept as the oracle for the pruning.
pub fn naadt_exact_unrestricted(f: &BooleanFunction, caps: &Caps) -> Result<(u32, SetFamily)> {
    let spar = mobius_support(f)?.len() as u64;
    let pool: Vec<u32> = (1..=full_mask(f.arity())).collect();
    naadt_over_pool(f, pool, spar, caps)
}

fn naadt_over_pool(
    f: &BooleanFunction,
    pool: Vec<u32>,
    spar: u64,
    caps: &Caps,
) -> Result<(u32, SetFamily)> {
    let n = check_naadt_arity(f, caps)?;
    let bitmaps: Vec<Vec<u64>> =
        pool.iter().map(|&s| query_bitmap(n, |x| x & s == s)).collect();
    smallest_basis(f, &pool, log2_ceil(spar) as usize, bitmaps, caps)
}

/// Minimum number of parity queries determining total `f`, with the least
/// basis. All nonempty masks are candidates.
pub fn napdt_exact(f: &BooleanFunction, caps: &Caps) -> Result<(u32, SetFamily)> {
    let n = check_naadt_arity(f, caps)?;
    let pool: Vec<u32> = (1..=full_mask(n)).collect();
    let bitmaps: Vec<Vec<u64>> = pool
        .iter()
        .map(|&s| query_bitmap(n, |x| (x & s).count_ones() % 2 == 1))
        .collect();
    smallest_basis(f, &pool, 0, bitmaps, caps)
}

/// Largest number of value changes along a monotone path from 0^n to 1^n,
/// by dynamic programming over predecessors with one bit cleared.
pub fn alternating_number(f: &BooleanFunction) -> Result<u32> {
    let n = f.arity();
    if !f.is_total() {
        return Err(Error::PartialUnsupported { op: "alternating number" });
    }
    if n > 22 {
        return Err(Error::ArityTooLarge { arity: n, cap: 22 });
    }
    let size = 1usize << n;
    let mut best = vec![0u8; size];
    // Clearing a bit always decreases the integer, so ascending input
    // order visits every predecessor first.
    for x in 1..size as u32 {
        let fx = f.value_unchecked(x);
        let mut m = 0u8;
        let mut rest = x;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            let y = x ^ bit;
            let step = best[y as usize] + (f.value_unchecked(y) != fx) as u8;
            m = m.max(step);
        }
        best[x as usize] = m;
    }
    Ok(best[size - 1] as u32)
}

/// Outcome of [`separating_check`]: either every designated element of
/// every (k+1)-subset is isolated by some family set, or a witness of the
/// first failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparatingOutcome {
    pub ok: bool,
    /// Failing (subset mask, designated element mask), in enumeration
    /// order.
    pub violation: Option<(u32, u32)>,
}

/// Checks the separating property: for every (k+1)-subset of variables and
/// every designated member, some family set contains the member and none
/// of the rest.
pub fn separating_check(family: &SetFamily, n: u32, k: u32, caps: &Caps) -> Result<SeparatingOutcome> {
    if n > 30 || k >= n {
        return Err(Error::BadParams(format!("separating check needs k < n <= 30, got n={n} k={k}")));
    }
    let tuples = binomial_u64(n as u64, k as u64 + 1);
    let work = tuples
        .saturating_mul(k as u64 + 1)
        .saturating_mul(family.sets.len().max(1) as u64);
    if work > caps.work {
        return Err(Error::CapExceeded {
            what: "separating-tuple enumeration",
            needed: work as u128,
            cap: caps.work as u128,
        });
    }
    // Gosper's hack walks all (k+1)-subsets in ascending mask order.
    let mut subset = (1u32 << (k + 1)) - 1;
    let limit = full_mask(n);
    while subset <= limit {
        let mut rest = subset;
        while rest != 0 {
            let designated = rest & rest.wrapping_neg();
            rest ^= designated;
            let isolated = family
                .sets
                .iter()
                .any(|&x| x & subset == designated);
            if !isolated {
                return Ok(SeparatingOutcome { ok: false, violation: Some((subset, designated)) });
            }
        }
        // Next mask with the same popcount.
        let c = subset & subset.wrapping_neg();
        let r = subset + c;
        if r > limit || r < subset {
            break;
        }
        subset = (((r ^ subset) >> 2) / c) | r;
    }
    Ok(SeparatingOutcome { ok: true, violation: None })
}

/// A separating family together with how many sampling rounds it took.
#[derive(Debug, Clone)]
pub struct SampledFamily {
    pub family: SetFamily,
    pub attempts: u32,
}

/// Default family size: the sampling proof's sufficient bound
/// 2e·log₂C(n,k) · 12·log₂C(n,k), rounded up.
pub fn default_family_size(n: u32, k: u32) -> u64 {
    let log = (binomial_u64(n as u64, k as u64) as f64).log2();
    (24.0 * std::f64::consts::E * log * log).ceil() as u64
}

/// Samples sets with per-element probability 1/(2k) until the family
/// passes [`separating_check`], bumping the seed each round.
pub fn separating_family(
    n: u32,
    k: u32,
    target_w: Option<u64>,
    seed: u64,
    caps: &Caps,
) -> Result<SampledFamily> {
    if k < 1 || 2 * k >= n {
        return Err(Error::BadParams(format!(
            "separating family needs 1 <= k < n/2, got n={n} k={k}"
        )));
    }
    let w = target_w.unwrap_or_else(|| default_family_size(n, k));
    let p = 1.0 / (2.0 * k as f64);
    for attempt in 1..=caps.sample_attempts {
        let mut rng = ChaCha12Rng::seed_from_u64(seed + (attempt as u64 - 1));
        let sets: Vec<u32> = (0..w)
            .map(|_| (0..n).fold(0u32, |m, i| m | (rng.gen_bool(p) as u32) << i))
            .collect();
        let family = SetFamily { arity: n, sets };
        if separating_check(&family, n, k, caps)?.ok {
            return Ok(SampledFamily { family, attempts: attempt });
        }
    }
    Err(Error::SamplingExhausted { attempts: caps.sample_attempts })
}

/// Fixed AND-query plan for a symmetric function whose switch value is
/// small: patterns of all high-weight inputs are stored, everything else
/// falls to the constant the function takes below weight n-k.
#[derive(Debug, Clone)]
pub struct SymmetricNaadtPlan {
    pub n: u32,
    pub k: u32,
    pub family: SetFamily,
    pub attempts: u32,
    pub reference: HashMap<Bits, bool>,
    pub default_value: bool,
}

impl SymmetricNaadtPlan {
    /// Pattern of `x` over the plan's family.
    pub fn pattern(&self, x: u32) -> Bits {
        Bits::from_fn(self.family.sets.len(), |i| {
            let m = self.family.sets[i];
            x & m == m
        })
    }
}

/// Builds the plan for a total symmetric `f`: a separating family for its
/// switch value k, reference patterns for all weights >= n-k, and the
/// constant value below.
pub fn symmetric_naadt(f: &BooleanFunction, seed: u64, caps: &Caps) -> Result<SymmetricNaadtPlan> {
    let n = f.arity();
    if !f.is_total() || !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let k = f.switch_value()?;
    if 2 * k >= n {
        return Err(Error::NoSmallPlan { n, k });
    }
    let (family, attempts) = if k == 0 {
        // Only 1^n is above the constant range; one full AND isolates it.
        (SetFamily { arity: n, sets: vec![full_mask(n)] }, 0)
    } else {
        let sampled = separating_family(n, k, None, seed, caps)?;
        (sampled.family, sampled.attempts)
    };
    let mut plan = SymmetricNaadtPlan {
        n,
        k,
        family,
        attempts,
        reference: HashMap::new(),
        default_value: f.value_unchecked(0),
    };
    for y in 0..1u32 << n {
        if y.count_ones() < n - k {
            continue;
        }
        let value = f.value_unchecked(y);
        if let Some(&old) = plan.reference.get(&plan.pattern(y)) {
            if old != value {
                return Err(Error::Inconclusive(format!(
                    "reference patterns collide at weight >= {}", n - k
                )));
            }
        }
        plan.reference.insert(plan.pattern(y), value);
    }
    Ok(plan)
}

/// Evaluates the plan on one input: reference value on a pattern match,
/// the low-weight constant otherwise.
pub fn symmetric_naadt_eval(plan: &SymmetricNaadtPlan, x: u32) -> bool {
    match plan.reference.get(&plan.pattern(x)) {
        Some(&v) => v,
        None => plan.default_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_queries_on_named_functions() {
        let caps = Caps::default();
        for n in 1..=5 {
            let f = BooleanFunction::xor(n).unwrap();
            assert_eq!(nonadaptive_dt(&f, &caps).unwrap(), (n, full_mask(n)));
        }
        let second = BooleanFunction::from_fn(3, |x| x >> 1 & 1 == 1).unwrap();
        assert_eq!(nonadaptive_dt(&second, &caps).unwrap(), (1, 0b010));
        let constant = BooleanFunction::from_fn(4, |_| true).unwrap();
        assert_eq!(nonadaptive_dt(&constant, &caps).unwrap(), (0, 0));
    }

    #[test]
    fn partial_chain_needs_all_but_the_lowest_variable() {
        // The chain domain {0^i 1^(5-i) : i in [5]} excludes 1^5, so
        // variable 1 has no defined dependency pair; consecutive chain
        // points force variables 2..5, and those four already separate all
        // five domain points.
        let caps = Caps::default();
        let f = BooleanFunction::omb_partial(5).unwrap();
        assert_eq!(nonadaptive_dt(&f, &caps).unwrap(), (4, 0b11110));
        // With 1^5 adjoined (value 0), every variable becomes forced.
        let n = 5u32;
        let chain = |x: u32| (0..=n).any(|i| x == full_mask(n) & !full_mask(i)) && x != full_mask(n)
            || x == full_mask(n);
        let table = Bits::from_fn(1 << n, |x| {
            let x = x as u32;
            x != full_mask(n) && {
                let zeros = !x & full_mask(n);
                zeros != 0 && (32 - zeros.leading_zeros()) % 2 == 1
            }
        });
        let domain = Bits::from_fn(1 << n, |x| chain(x as u32));
        let g = BooleanFunction::new_partial(n, table, domain).unwrap();
        assert_eq!(nonadaptive_dt(&g, &caps).unwrap(), (5, full_mask(5)));
    }

    #[test]
    fn partial_function_can_drop_a_dependent_looking_variable() {
        // Domain {00, 11}: no single-bit dependency pair exists, and one
        // variable distinguishes the two points.
        let caps = Caps::default();
        let table = Bits::from_fn(4, |x| x == 3);
        let domain = Bits::from_fn(4, |x| x == 0 || x == 3);
        let f = BooleanFunction::new_partial(2, table, domain).unwrap();
        assert_eq!(nonadaptive_dt(&f, &caps).unwrap(), (1, 0b01));
    }

    #[test]
    fn and_basis_hand_values() {
        let caps = Caps::default();
        for n in 1..=5 {
            let f = BooleanFunction::and(n).unwrap();
            let (k, basis) = naadt_exact(&f, &caps).unwrap();
            assert_eq!((k, basis.sets), (1, vec![full_mask(n)]));
        }
        let f = BooleanFunction::xor(2).unwrap();
        assert_eq!(naadt_exact(&f, &caps).unwrap().0, 2);
        let constant = BooleanFunction::from_fn(3, |_| false).unwrap();
        assert_eq!(naadt_exact(&constant, &caps).unwrap().0, 0);
        for n in 1..=4u32 {
            let f = BooleanFunction::omb(n).unwrap();
            assert_eq!(naadt_exact(&f, &caps).unwrap().0, n, "OMB_{n}");
        }
    }

    #[test]
    fn parity_basis_hand_values() {
        let caps = Caps::default();
        for n in 1..=5 {
            let f = BooleanFunction::xor(n).unwrap();
            let (k, basis) = napdt_exact(&f, &caps).unwrap();
            assert_eq!((k, basis.sets), (1, vec![full_mask(n)]));
        }
        // One parity never determines AND_2: checked exhaustively by the
        // search itself.
        let f = BooleanFunction::and(2).unwrap();
        assert_eq!(napdt_exact(&f, &caps).unwrap().0, 2);
    }

    #[test]
    fn pruned_and_unrestricted_searches_agree() {
        let caps = Caps::default();
        for table in 0..256u32 {
            let f = BooleanFunction::from_fn(3, |x| table >> x & 1 == 1).unwrap();
            let pruned = naadt_exact(&f, &caps).unwrap();
            let unrestricted = naadt_exact_unrestricted(&f, &caps).unwrap();
            assert_eq!(pruned.0, unrestricted.0, "table={table:#x}");
        }
    }

    #[test]
    fn addressing_basis_from_both_searches() {
        let mut caps = Caps::default();
        caps.naadt_arity = 6;
        let f = BooleanFunction::addr(4).unwrap();
        let pruned = naadt_exact(&f, &caps).unwrap();
        let unrestricted = naadt_exact_unrestricted(&f, &caps).unwrap();
        assert_eq!(pruned.0, unrestricted.0);
        assert!(pruned.0 >= 4, "sparsity 9 forces at least ceil(log 9)");
        assert!(pruned.0 <= 6);
    }

    #[test]
    fn alternating_number_hand_values() {
        let caps = Caps::default();
        for n in 1..=12 {
            let f = BooleanFunction::omb(n).unwrap();
            assert_eq!(alternating_number(&f).unwrap(), n, "OMB_{n}");
        }
        for n in 1..=8 {
            let f = BooleanFunction::xor(n).unwrap();
            assert_eq!(alternating_number(&f).unwrap(), n);
        }
        let maj = BooleanFunction::maj(3).unwrap();
        assert_eq!(alternating_number(&maj).unwrap(), 1);
        let constant = BooleanFunction::from_fn(5, |_| true).unwrap();
        assert_eq!(alternating_number(&constant).unwrap(), 0);
        let partial = BooleanFunction::omb_partial(3).unwrap();
        assert!(matches!(
            alternating_number(&partial),
            Err(Error::PartialUnsupported { .. })
        ));
        let _ = caps;
    }

    #[test]
    fn separating_check_basics() {
        let caps = Caps::default();
        let n = 6;
        let singletons = SetFamily { arity: n, sets: (0..n).map(|i| 1 << i).collect() };
        for k in 0..3 {
            assert!(separating_check(&singletons, n, k, &caps).unwrap().ok);
        }
        let empty = SetFamily { arity: n, sets: vec![] };
        let out = separating_check(&empty, n, 1, &caps).unwrap();
        assert!(!out.ok);
        assert_eq!(out.violation, Some((0b11, 0b01)));
        // A family missing variable 6 entirely fails on a tuple containing
        // it.
        let partial = SetFamily { arity: n, sets: (0..n - 1).map(|i| 1 << i).collect() };
        let out = separating_check(&partial, n, 1, &caps).unwrap();
        assert!(!out.ok);
        let (subset, designated) = out.violation.unwrap();
        assert_eq!(designated, 1 << (n - 1));
        assert_eq!(subset & designated, designated);
    }

    #[test]
    fn sampled_family_is_reproducible_and_guarded() {
        let caps = Caps::default();
        let a = separating_family(8, 1, None, 0, &caps).unwrap();
        let b = separating_family(8, 1, None, 0, &caps).unwrap();
        assert_eq!(a.family, b.family);
        assert_eq!(a.attempts, b.attempts);
        assert!(separating_check(&a.family, 8, 1, &caps).unwrap().ok);
        assert_eq!(a.family.sets.len() as u64, default_family_size(8, 1));
        let other = separating_family(8, 1, None, 1, &caps).unwrap();
        assert!(separating_check(&other.family, 8, 1, &caps).unwrap().ok);
        assert!(matches!(
            separating_family(8, 4, None, 0, &caps),
            Err(Error::BadParams(_))
        ));
        // Tiny forced size cannot separate and exhausts the attempt cap.
        let mut tight = Caps::default();
        tight.sample_attempts = 3;
        assert!(matches!(
            separating_family(8, 2, Some(1), 0, &tight),
            Err(Error::SamplingExhausted { attempts: 3 })
        ));
    }

    #[test]
    fn symmetric_plan_evaluates_exactly() {
        let caps = Caps::default();
        let n = 8;
        for f in [
            BooleanFunction::threshold(7, n).unwrap(),
            BooleanFunction::threshold(6, n).unwrap(),
            BooleanFunction::symmetric(&[true, true, true, true, true, true, false, true, false])
                .unwrap(),
        ] {
            let plan = symmetric_naadt(&f, 0, &caps).unwrap();
            assert!(plan.k >= 1 && 2 * plan.k < n);
            for x in 0..1u32 << n {
                assert_eq!(symmetric_naadt_eval(&plan, x), f.value_unchecked(x), "x={x}");
            }
        }
    }

    #[test]
    fn switch_zero_plan_uses_one_full_query() {
        let caps = Caps::default();
        let f = BooleanFunction::and(6).unwrap();
        let plan = symmetric_naadt(&f, 0, &caps).unwrap();
        assert_eq!(plan.k, 0);
        assert_eq!(plan.family.sets, vec![full_mask(6)]);
        assert_eq!(plan.reference.len(), 1);
        for x in 0..1u32 << 6 {
            assert_eq!(symmetric_naadt_eval(&plan, x), f.value_unchecked(x));
        }
    }

    #[test]
    fn plan_guards() {
        let caps = Caps::default();
        let maj = BooleanFunction::maj(8).unwrap();
        assert!(matches!(
            symmetric_naadt(&maj, 0, &caps),
            Err(Error::NoSmallPlan { n: 8, k: 4 })
        ));
        let xor = BooleanFunction::xor(8).unwrap();
        assert!(matches!(symmetric_naadt(&xor, 0, &caps), Err(Error::NoSmallPlan { .. })));
        let skew = BooleanFunction::omb(4).unwrap();
        assert!(matches!(symmetric_naadt(&skew, 0, &caps), Err(Error::NotSymmetric)));
        let constant = BooleanFunction::from_fn(4, |_| true).unwrap();
        assert!(matches!(symmetric_naadt(&constant, 0, &caps), Err(Error::ConstantFunction)));
    }

    #[test]
    fn family_hex_rendering() {
        let family = SetFamily { arity: 6, sets: vec![0b000011, 0b110000] };
        assert_eq!(family.hex_sets(), vec!["03", "30"]);
    }
}
