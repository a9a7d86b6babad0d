//! Patterns of AND-basis support sets and their counting.
//!
//! Fix the support `S_1 < S_2 < ... < S_r` (ascending masks) of a total
//! function. The pattern of an input `x` is the bit string
//! `(AND_{S_1}(x), ..., AND_{S_r}(x))`, where `AND_S(x)` tests `S ⊆ x`.
//! The pattern complexity is the number of distinct patterns over all `2^n`
//! inputs; it is what a one-way protocol for the AND-composed function has
//! to communicate, and its growth under the partner-closure process below is
//! the interesting part.

use std::collections::{HashMap, HashSet};

use crate::bf::BooleanFunction;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::transforms::{mobius_spectrum, MobiusSpectrum};
use crate::Caps;

/// Pattern of `x` over the given support sets, one bit per set in order.
pub fn pattern_over(support: &[u32], x: u32) -> Bits {
    Bits::from_fn(support.len(), |i| x & support[i] == support[i])
}

/// Pattern of `x` over the function's own canonical support.
pub fn pattern_of(f: &BooleanFunction, x: u32) -> Result<Bits> {
    let s = mobius_spectrum(f)?;
    if x >= 1 << f.arity() {
        return Err(Error::UndefinedInput { input: x });
    }
    Ok(pattern_over(&s.support(), x))
}

/// Number of distinct patterns over all inputs for the given support sets.
pub fn distinct_patterns(support: &[u32], arity: u32, caps: &Caps) -> Result<u64> {
    if arity > 22 {
        return Err(Error::ArityTooLarge { arity, cap: 22 });
    }
    let work = support.len() as u64 * (1u64 << arity);
    if work > caps.work {
        return Err(Error::CapExceeded {
            what: "pattern enumeration",
            needed: work as u128,
            cap: caps.work as u128,
        });
    }
    let size = 1u32 << arity;
    if support.len() <= 64 {
        let mut seen: HashSet<u64> = HashSet::new();
        for x in 0..size {
            let mut p = 0u64;
            for (i, &m) in support.iter().enumerate() {
                p |= ((x & m == m) as u64) << i;
            }
            seen.insert(p);
        }
        Ok(seen.len() as u64)
    } else {
        let words = support.len().div_ceil(64);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut buf = vec![0u64; words];
        for x in 0..size {
            buf.iter_mut().for_each(|w| *w = 0);
            for (i, &m) in support.iter().enumerate() {
                buf[i >> 6] |= ((x & m == m) as u64) << (i & 63);
            }
            if !seen.contains(buf.as_slice()) {
                seen.insert(buf.clone());
            }
        }
        Ok(seen.len() as u64)
    }
}

/// Pattern complexity of a total function: distinct patterns over its own
/// support.
pub fn pattern_complexity(f: &BooleanFunction, caps: &Caps) -> Result<u64> {
    let s = mobius_spectrum(f)?;
    distinct_patterns(&s.support(), f.arity(), caps)
}

/// How a support pair `{S, T}` with `S != T` is matched in the
/// union-convolution identity at `W = S ∪ T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partner {
    /// `S ∪ T` is itself in the support.
    Union(u32),
    /// A different support pair with the same union (lexicographically
    /// least, members ascending).
    Pair(u32, u32),
}

impl Partner {
    /// The partner's members as a slice-like array (union repeats once).
    pub fn members(&self) -> Vec<u32> {
        match *self {
            Partner::Union(w) => vec![w],
            Partner::Pair(u, v) => vec![u, v],
        }
    }
}

/// Partner of the pair `{S, T}` in the given spectrum.
///
/// For spectra of 0/1-valued functions a partner always exists; if none is
/// found the spectrum cannot belong to such a function and that is reported
/// as an error.
pub fn partner_in(s: &MobiusSpectrum, set_a: u32, set_b: u32) -> Result<Partner> {
    if set_a == set_b {
        return Err(Error::BadParams("partner needs two distinct support sets".into()));
    }
    for m in [set_a, set_b] {
        if s.coeff(m) == 0 {
            return Err(Error::NotInSupport { mask: m });
        }
    }
    let union = set_a | set_b;
    if s.coeff(union) != 0 {
        return Ok(Partner::Union(union));
    }
    let (lo, hi) = (set_a.min(set_b), set_a.max(set_b));
    let support = s.support();
    for (i, &u) in support.iter().enumerate() {
        if u & union != u {
            continue;
        }
        for &v in &support[i + 1..] {
            if u | v == union && (u, v) != (lo, hi) {
                return Ok(Partner::Pair(u, v));
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "pair {{{set_a:#x}, {set_b:#x}}} has no partner; spectrum is not that of a 0/1 function"
    )))
}

/// [`partner_in`] computed from the function.
pub fn partner(f: &BooleanFunction, set_a: u32, set_b: u32) -> Result<Partner> {
    partner_in(&mobius_spectrum(f)?, set_a, set_b)
}

/// One closure step of the doubling trace.
#[derive(Debug, Clone)]
pub struct GrowthStep {
    /// Pair drawn in this step (least unused, ascending).
    pub drawn: (u32, u32),
    /// Its partner.
    pub partner: Partner,
    /// Tracked sets after the step, ascending.
    pub tracked: Vec<u32>,
    /// Distinct partial patterns over `tracked`.
    pub partial_patterns: u64,
}

/// Trace of the partner-closure process.
#[derive(Debug, Clone)]
pub struct GrowthTrace {
    pub sparsity: usize,
    pub steps: Vec<GrowthStep>,
    /// Pattern complexity over the full support.
    pub final_patterns: u64,
}

/// Runs the partner-closure process: repeatedly draw the least unused
/// support pair, add the pair and its partner to the tracked set, and count
/// partial patterns, until fewer than two support sets remain untracked.
///
/// Pattern counts are maintained incrementally: each input keeps a class id
/// for its pattern over the tracked sets, and a step only refines classes
/// by the newly added sets, so a full trace costs O(steps * 2^n) instead of
/// rescanning every tracked set each step.
pub fn pattern_growth_trace(f: &BooleanFunction, caps: &Caps) -> Result<GrowthTrace> {
    let s = mobius_spectrum(f)?;
    let support = s.support();
    let spar = support.len();
    if spar < 2 {
        return Err(Error::BadParams(format!(
            "growth trace needs sparsity >= 2, this function has {spar}"
        )));
    }
    let work = spar as u64 * (1u64 << f.arity());
    if work > caps.work {
        return Err(Error::CapExceeded {
            what: "growth trace",
            needed: work as u128,
            cap: caps.work as u128,
        });
    }
    let size = 1u32 << f.arity();
    let mut classes = vec![0u32; size as usize];
    let refine = |classes: &mut Vec<u32>, added: &[u32]| -> u64 {
        let mut remap: HashMap<(u32, u8), u32> = HashMap::new();
        for x in 0..size {
            let mut ext = 0u8;
            for (i, &m) in added.iter().enumerate() {
                ext |= ((x & m == m) as u8) << i;
            }
            let next = remap.len() as u32;
            let id = *remap.entry((classes[x as usize], ext)).or_insert(next);
            classes[x as usize] = id;
        }
        remap.len() as u64
    };
    let mut tracked: Vec<u32> = Vec::new();
    let mut steps = Vec::new();
    while tracked.len() + 2 <= spar {
        let mut unused = support.iter().copied().filter(|m| !tracked.contains(m));
        let a = unused.next().expect("counted above");
        let b = unused.next().expect("counted above");
        let p = partner_in(&s, a, b)?;
        let mut added = Vec::new();
        for m in [a, b].into_iter().chain(p.members()) {
            if !tracked.contains(&m) {
                tracked.push(m);
                added.push(m);
            }
        }
        tracked.sort_unstable();
        let partial_patterns = refine(&mut classes, &added);
        steps.push(GrowthStep {
            drawn: (a, b),
            partner: p,
            tracked: tracked.clone(),
            partial_patterns,
        });
    }
    let leftover: Vec<u32> =
        support.iter().copied().filter(|m| !tracked.contains(m)).collect();
    let final_patterns = refine(&mut classes, &leftover);
    Ok(GrowthTrace { sparsity: spar, steps, final_patterns })
}

/// Exact check of `count <= 6^(sets/3)`, the per-step budget of the trace:
/// compares `count^3` with `6^sets` in integers.
pub fn step_bound_holds(count: u64, sets: u32) -> bool {
    // count is at most 2^22, so count^3 < 2^66 < 6^26.
    if sets >= 26 {
        return true;
    }
    let lhs = (count as u128).pow(3);
    lhs <= 6u128.pow(sets)
}

/// Exact check of `count <= 2 * 6^(spar/3)`, the closing bound on full
/// pattern complexity: compares `count^3` with `8 * 6^spar`.
pub fn closing_bound_holds(count: u64, spar: u32) -> bool {
    if spar >= 25 {
        // count^3 < 2^66 < 8 * 6^25.
        return true;
    }
    (count as u128).pow(3) <= 8 * 6u128.pow(spar)
}
