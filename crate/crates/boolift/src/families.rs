//! Extremal d-intersecting families over a q-ary alphabet: the ball-style
//! families B_r, the exact agreement count agr, and the packing and
//! large-alphabet bounds as exact integer comparisons.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::Caps;

/// Explicit family of strings over the alphabet {1..q}; symbol 1 is the
/// distinguished letter of the B_r construction.
#[derive(Debug, Clone)]
pub struct QaryFamily {
    q: u32,
    n: u32,
    members: Vec<Vec<u8>>,
}

impl QaryFamily {
    /// Validates digits in 1..=q, uniform length n, pairwise distinct
    /// members.
    pub fn new(q: u32, n: u32, members: Vec<Vec<u8>>) -> Result<Self> {
        if !(2..=255).contains(&q) {
            return Err(Error::BadParams(format!("alphabet size {q} outside 2..=255")));
        }
        let mut seen: HashSet<&[u8]> = HashSet::new();
        for m in &members {
            if m.len() != n as usize {
                return Err(Error::BadParams(format!(
                    "member of length {} in a family of length {n}",
                    m.len()
                )));
            }
            if m.iter().any(|&x| x == 0 || x as u32 > q) {
                return Err(Error::BadParams("digit outside 1..=q".into()));
            }
            if !seen.insert(m) {
                return Err(Error::BadParams("duplicate family member".into()));
            }
        }
        Ok(QaryFamily { q, n, members })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<u8>] {
        &self.members
    }

    /// Members as digit strings, first coordinate leftmost; digits are
    /// concatenated for q <= 9 and comma-separated beyond that.
    pub fn digit_strings(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|m| {
                if self.q <= 9 {
                    m.iter().map(|d| char::from(b'0' + d)).collect()
                } else {
                    m.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
                }
            })
            .collect()
    }
}

fn check_br_params(q: u32, n: u32, d: u32, r: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::BadParams(format!("alphabet size {q} below 2")));
    }
    if n < d + 2 * r {
        return Err(Error::BadParams(format!(
            "length {n} below the window d + 2r = {}",
            d + 2 * r
        )));
    }
    Ok(())
}

/// Enumerates B_r over [q]^n: the strings whose first d+2r coordinates
/// carry at least d+r ones. Coordinate 1 varies fastest, so members come
/// out in ascending base-q order.
pub fn br_enumerate(q: u32, n: u32, d: u32, r: u32, caps: &Caps) -> Result<QaryFamily> {
    check_br_params(q, n, d, r)?;
    if q > 255 {
        return Err(Error::BadParams(format!("alphabet size {q} outside 2..=255")));
    }
    let total = (q as u128).checked_pow(n).unwrap_or(u128::MAX);
    if total > caps.enum_cells as u128 {
        return Err(Error::CapExceeded {
            what: "family enumeration",
            needed: total,
            cap: caps.enum_cells as u128,
        });
    }
    let window = (d + 2 * r) as usize;
    let need = (d + r) as usize;
    let mut members = Vec::new();
    let mut digits = vec![1u8; n as usize];
    for idx in 0..total {
        if digits[..window].iter().filter(|&&x| x == 1).count() >= need {
            members.push(digits.clone());
        }
        if idx + 1 < total {
            for slot in digits.iter_mut() {
                if *slot as u32 == q {
                    *slot = 1;
                } else {
                    *slot += 1;
                    break;
                }
            }
        }
    }
    QaryFamily::new(q, n, members)
}

fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact size of B_r: strings split into the window of the first d+2r
/// coordinates, counted by the number j of ones there, and a free tail.
pub fn br_size(q: u32, n: u32, d: u32, r: u32) -> Result<BigUint> {
    check_br_params(q, n, d, r)?;
    let window = (d + 2 * r) as u64;
    let tail = BigUint::from(q).pow(n - d - 2 * r);
    let mut sum = BigUint::ZERO;
    for j in (d + r) as u64..=window {
        sum += binom_big(window, j) * BigUint::from(q - 1).pow((window - j) as u32);
    }
    Ok(sum * tail)
}

/// Largest possible d-intersecting family size over [q]^n, realized by B_r
/// at r = floor((d-1)/(q-2)).
pub fn agr(q: u32, n: u32, d: u32) -> Result<BigUint> {
    if q < 3 {
        return Err(Error::BadParams(format!(
            "agreement extremum needs alphabet size >= 3, got {q}"
        )));
    }
    if d == 0 {
        return Err(Error::BadParams("intersection requirement d must be >= 1".into()));
    }
    let r = (d - 1) / (q - 2);
    br_size(q, n, d, r)
}

/// Outcome of the pairwise d-intersection scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectingOutcome {
    pub ok: bool,
    /// First pair of member indices agreeing on fewer than d coordinates.
    pub violation: Option<(usize, usize)>,
}

/// True iff every pair of members agrees on at least d coordinates.
pub fn intersecting_check(fam: &QaryFamily, d: u32, caps: &Caps) -> Result<IntersectingOutcome> {
    let len = fam.members.len() as u128;
    let needed = len * len;
    if needed > caps.work as u128 {
        return Err(Error::CapExceeded {
            what: "pairwise intersection scan",
            needed,
            cap: caps.work as u128,
        });
    }
    for i in 0..fam.members.len() {
        for j in i + 1..fam.members.len() {
            let agree = fam.members[i]
                .iter()
                .zip(&fam.members[j])
                .filter(|(a, b)| a == b)
                .count();
            if (agree as u32) < d {
                return Ok(IntersectingOutcome { ok: false, violation: Some((i, j)) });
            }
        }
    }
    Ok(IntersectingOutcome { ok: true, violation: None })
}

fn check_packing_params(q: u32, n: u32, d: u32) -> Result<()> {
    if q < 3 {
        return Err(Error::BadParams(format!("packing bound needs q >= 3, got {q}")));
    }
    if d == 0 || 3 * d > n {
        return Err(Error::BadParams(format!(
            "packing bound needs 1 <= d <= n/3, got d={d}, n={n}"
        )));
    }
    Ok(())
}

/// Exact check of the packing bound agr(q,n,d) < q^{n - d/10}, cleared of
/// the fractional exponent by raising both sides to the tenth power.
pub fn packing_check(q: u32, n: u32, d: u32) -> Result<bool> {
    check_packing_params(q, n, d)?;
    let a = agr(q, n, d)?;
    Ok(a.pow(10) < BigUint::from(q).pow(10 * n - d))
}

/// Numerator of a rational strictly above e^2, at denominator 10^16; the
/// large-alphabet precondition q > (e n / d)^2 is enforced with it, so
/// inputs within one part in 10^16 of the boundary are rejected rather
/// than guessed.
const E_SQUARED_OVER: u128 = 73_890_560_989_306_503;

/// Exact check of the large-alphabet bound agr(q,n,d) < q^{n - d/4}, under
/// the precondition q > (e n / d)^2.
pub fn largeq_check(q: u32, n: u32, d: u32) -> Result<bool> {
    check_packing_params(q, n, d)?;
    let lhs = q as u128 * (d as u128).pow(2) * 10u128.pow(16);
    let rhs = E_SQUARED_OVER * (n as u128).pow(2);
    if lhs <= rhs {
        return Err(Error::BadParams(format!(
            "large-alphabet regime needs q > (e n / d)^2; q={q} is too small for n={n}, d={d}"
        )));
    }
    let a = agr(q, n, d)?;
    Ok(a.pow(4) < BigUint::from(q).pow(4 * n - d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_ball_count() {
        // (C(7,5) * 4 + C(7,6) * 2 + 1) * 9 = (84 + 14 + 1) * 9 = 891.
        assert_eq!(br_size(3, 9, 3, 2).unwrap(), BigUint::from(891u32));
        let fam = br_enumerate(3, 9, 3, 2, &Caps::default()).unwrap();
        assert_eq!(fam.len(), 891);
    }

    #[test]
    fn enumeration_matches_a_direct_membership_scan() {
        let caps = Caps::default();
        let fam = br_enumerate(3, 9, 3, 2, &caps).unwrap();
        let mut count = 0u32;
        let mut digits = vec![1u8; 9];
        for _ in 0..19683 {
            if digits[..7].iter().filter(|&&x| x == 1).count() >= 5 {
                count += 1;
            }
            for slot in digits.iter_mut() {
                if *slot == 3 {
                    *slot = 1;
                } else {
                    *slot += 1;
                    break;
                }
            }
        }
        assert_eq!(fam.len() as u32, count);
    }

    #[test]
    fn degenerate_windows() {
        assert_eq!(br_size(3, 4, 0, 0).unwrap(), BigUint::from(81u32));
        let fam = br_enumerate(4, 3, 3, 0, &Caps::default()).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.digit_strings(), vec!["111"]);
    }

    #[test]
    fn fixed_first_coordinate_family() {
        let fam = br_enumerate(3, 2, 1, 0, &Caps::default()).unwrap();
        assert_eq!(fam.len(), 3);
        assert_eq!(fam.digit_strings(), vec!["11", "12", "13"]);
        assert_eq!(br_size(3, 2, 1, 0).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn size_formula_agrees_with_enumeration_on_a_grid() {
        let caps = Caps::default();
        for q in [3u32, 4] {
            for n in 1..=7u32 {
                for d in 0..=3u32 {
                    for r in 0..=3u32 {
                        if n < d + 2 * r {
                            continue;
                        }
                        let fam = br_enumerate(q, n, d, r, &caps).unwrap();
                        let size = br_size(q, n, d, r).unwrap();
                        assert_eq!(BigUint::from(fam.len()), size, "q={q} n={n} d={d} r={r}");
                        let window = (d + 2 * r) as u64;
                        let bound = binom_big(window, (d + r) as u64)
                            * BigUint::from(q).pow(n - d - r);
                        assert!(size <= bound, "q={q} n={n} d={d} r={r}");
                        if d > 0 {
                            let check = intersecting_check(&fam, d, &caps).unwrap();
                            assert!(check.ok, "q={q} n={n} d={d} r={r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_violations_are_reported() {
        let caps = Caps::default();
        let fam = QaryFamily::new(3, 2, vec![vec![1, 2], vec![2, 1]]).unwrap();
        let out = intersecting_check(&fam, 1, &caps).unwrap();
        assert!(!out.ok);
        assert_eq!(out.violation, Some((0, 1)));
        let single = QaryFamily::new(3, 2, vec![vec![2, 3]]).unwrap();
        assert!(intersecting_check(&single, 2, &caps).unwrap().ok);
        let empty = QaryFamily::new(3, 2, vec![]).unwrap();
        assert!(intersecting_check(&empty, 2, &caps).unwrap().ok);
    }

    #[test]
    fn agreement_extremum_values() {
        assert_eq!(agr(3, 5, 1).unwrap(), BigUint::from(81u32));
        // q=4, d=2 puts r at 0, leaving the single-window count.
        let caps = Caps::default();
        let fam = br_enumerate(4, 8, 2, 0, &caps).unwrap();
        assert_eq!(agr(4, 8, 2).unwrap(), BigUint::from(fam.len()));
        // q=3, d=3 forces r=2; the boundary n = d + 2r = 7 is accepted.
        assert!(agr(3, 7, 3).is_ok());
        assert!(agr(3, 6, 3).is_err());
        assert!(agr(2, 5, 1).is_err());
        assert!(agr(3, 5, 0).is_err());
    }

    #[test]
    fn packing_bound_holds_at_the_frozen_point() {
        assert!(packing_check(3, 9, 3).unwrap());
        assert!(matches!(packing_check(3, 8, 3), Err(Error::BadParams(_))));
        assert!(matches!(packing_check(2, 9, 3), Err(Error::BadParams(_))));
        assert!(matches!(packing_check(3, 9, 0), Err(Error::BadParams(_))));
    }

    #[test]
    fn large_alphabet_bound_and_precondition() {
        assert!(largeq_check(100, 9, 3).unwrap());
        assert!(matches!(largeq_check(10, 9, 3), Err(Error::BadParams(_))));
        // q d^2 = 67 * 9 = 603 versus e^2 n^2 ~ 598.5: just inside.
        assert!(largeq_check(67, 9, 3).is_ok());
        assert!(matches!(largeq_check(66, 9, 3), Err(Error::BadParams(_))));
    }

    #[test]
    fn enumeration_caps_and_guards() {
        let tiny = Caps { enum_cells: 8, ..Caps::default() };
        assert!(matches!(br_enumerate(3, 9, 3, 2, &tiny), Err(Error::CapExceeded { .. })));
        assert!(br_enumerate(3, 4, 3, 1, &Caps::default()).is_err());
        assert!(QaryFamily::new(3, 2, vec![vec![1, 4]]).is_err());
        assert!(QaryFamily::new(3, 2, vec![vec![1]]).is_err());
        assert!(QaryFamily::new(3, 2, vec![vec![1, 2], vec![1, 2]]).is_err());
    }

    #[test]
    fn wide_alphabet_strings_render_with_separators() {
        let fam = QaryFamily::new(12, 2, vec![vec![10, 2]]).unwrap();
        assert_eq!(fam.digit_strings(), vec!["10,2"]);
    }
}
