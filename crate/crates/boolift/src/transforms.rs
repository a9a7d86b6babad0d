//! Exact spectra in the AND basis (Möbius coefficients over the subset
//! lattice) and the parity basis (Walsh coefficients, kept as integers
//! scaled by `2^n`).
//!
//! The AND-basis coefficient of a set `S` is the alternating subset sum
//! `sum_{X subseteq S} (-1)^{|S \ X|} f(X)`; the in-place lattice transform
//! below computes all of them in `O(n 2^n)` word operations, and the inverse
//! transform (plain subset sums) restores the table, which is what the
//! reconstruction tests pin down.

use crate::bf::BooleanFunction;
use crate::bits::full_mask;
use crate::error::{Error, Result};

/// Sparse AND-basis spectrum: nonzero coefficients keyed by variable-set
/// mask, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusSpectrum {
    arity: u32,
    coeffs: Vec<(u32, i64)>,
}

impl MobiusSpectrum {
    /// Builds a spectrum from raw pairs; masks are deduplicated by summing
    /// and zero entries are dropped.
    pub fn from_pairs(arity: u32, pairs: impl IntoIterator<Item = (u32, i64)>) -> Result<Self> {
        let mut coeffs: Vec<(u32, i64)> = Vec::new();
        for (mask, c) in pairs {
            if mask > full_mask(arity) {
                return Err(Error::BadParams(format!(
                    "mask {mask:#x} does not fit arity {arity}"
                )));
            }
            coeffs.push((mask, c));
        }
        coeffs.sort_by_key(|&(m, _)| m);
        coeffs.dedup_by(|later, first| {
            if first.0 == later.0 {
                first.1 += later.1;
                true
            } else {
                false
            }
        });
        coeffs.retain(|&(_, c)| c != 0);
        Ok(MobiusSpectrum { arity, coeffs })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    /// Coefficient of `mask` (zero when absent).
    pub fn coeff(&self, mask: u32) -> i64 {
        self.coeffs
            .binary_search_by_key(&mask, |&(m, _)| m)
            .map(|i| self.coeffs[i].1)
            .unwrap_or(0)
    }

    /// Nonzero (mask, coefficient) pairs in ascending mask order.
    pub fn pairs(&self) -> &[(u32, i64)] {
        &self.coeffs
    }

    /// Support masks in the canonical (ascending) order used by patterns.
    pub fn support(&self) -> Vec<u32> {
        self.coeffs.iter().map(|&(m, _)| m).collect()
    }

    pub fn sparsity(&self) -> usize {
        self.coeffs.len()
    }

    /// Evaluates the expansion at every point: entry `x` is
    /// `sum_{S subseteq x} coeff(S)`.
    pub fn reconstruct(&self) -> Vec<i64> {
        let size = 1usize << self.arity;
        let mut a = vec![0i64; size];
        for &(m, c) in &self.coeffs {
            a[m as usize] = c;
        }
        for b in 0..self.arity {
            let bit = 1usize << b;
            for x in 0..size {
                if x & bit != 0 {
                    a[x] += a[x ^ bit];
                }
            }
        }
        a
    }

    /// Serialization-friendly view: (mask hex, coefficient) pairs.
    pub fn pairs_hex(&self) -> Vec<(String, i64)> {
        self.coeffs.iter().map(|&(m, c)| (format!("{m:x}"), c)).collect()
    }
}

/// AND-basis spectrum of a total function.
pub fn mobius_spectrum(f: &BooleanFunction) -> Result<MobiusSpectrum> {
    if !f.is_total() {
        return Err(Error::PartialUnsupported { op: "mobius_spectrum" });
    }
    let n = f.arity();
    let size = 1usize << n;
    let mut a: Vec<i64> = (0..size).map(|x| f.value_unchecked(x as u32) as i64).collect();
    for b in 0..n {
        let bit = 1usize << b;
        for x in 0..size {
            if x & bit != 0 {
                a[x] -= a[x ^ bit];
            }
        }
    }
    let coeffs = a
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(m, c)| (m as u32, c))
        .collect();
    Ok(MobiusSpectrum { arity: n, coeffs })
}

/// Number of nonzero AND-basis coefficients.
pub fn mobius_sparsity(f: &BooleanFunction) -> Result<usize> {
    Ok(mobius_spectrum(f)?.sparsity())
}

/// Support of the AND-basis spectrum in canonical order.
pub fn mobius_support(f: &BooleanFunction) -> Result<Vec<u32>> {
    Ok(mobius_spectrum(f)?.support())
}

/// Which function the parity basis expands: the table itself (`ZeroOne`) or
/// its `1 - 2f` sign version (`PlusMinus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierConvention {
    ZeroOne,
    PlusMinus,
}

/// Parity-basis spectrum with coefficients scaled by `2^n`, so everything
/// stays integral: entry `S` is `sum_x g(x) (-1)^(|x & S|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierSpectrum {
    arity: u32,
    convention: FourierConvention,
    coeffs: Vec<(u32, i64)>,
}

impl FourierSpectrum {
    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn convention(&self) -> FourierConvention {
        self.convention
    }

    pub fn coeff(&self, mask: u32) -> i64 {
        self.coeffs
            .binary_search_by_key(&mask, |&(m, _)| m)
            .map(|i| self.coeffs[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(u32, i64)] {
        &self.coeffs
    }

    pub fn sparsity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn pairs_hex(&self) -> Vec<(String, i64)> {
        self.coeffs.iter().map(|&(m, c)| (format!("{m:x}"), c)).collect()
    }

    /// Evaluates the expansion at every point, still scaled by `2^n`.
    pub fn reconstruct_scaled(&self) -> Vec<i64> {
        let size = 1usize << self.arity;
        (0..size as u32)
            .map(|x| {
                self.coeffs
                    .iter()
                    .map(|&(m, c)| if (x & m).count_ones() % 2 == 0 { c } else { -c })
                    .sum()
            })
            .collect()
    }
}

/// Parity-basis spectrum of a total function under the chosen convention.
pub fn fourier_spectrum(
    f: &BooleanFunction,
    convention: FourierConvention,
) -> Result<FourierSpectrum> {
    if !f.is_total() {
        return Err(Error::PartialUnsupported { op: "fourier_spectrum" });
    }
    let n = f.arity();
    let size = 1usize << n;
    let mut a: Vec<i64> = (0..size)
        .map(|x| {
            let v = f.value_unchecked(x as u32) as i64;
            match convention {
                FourierConvention::ZeroOne => v,
                FourierConvention::PlusMinus => 1 - 2 * v,
            }
        })
        .collect();
    for b in 0..n {
        let bit = 1usize << b;
        for x in 0..size {
            if x & bit == 0 {
                let (u, v) = (a[x], a[x | bit]);
                a[x] = u + v;
                a[x | bit] = u - v;
            }
        }
    }
    let coeffs = a
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(m, c)| (m as u32, c))
        .collect();
    Ok(FourierSpectrum { arity: n, convention, coeffs })
}

pub fn fourier_sparsity(f: &BooleanFunction, convention: FourierConvention) -> Result<usize> {
    Ok(fourier_spectrum(f, convention)?.sparsity())
}

/// Result of the union-convolution self-test on an AND-basis spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsworthOutcome {
    pub ok: bool,
    /// First mask (ascending) where the identity fails, with the spectrum's
    /// coefficient and the pair-sum that was expected to match it.
    pub violation: Option<TitsworthViolation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TitsworthViolation {
    pub mask: u32,
    pub coeff: i64,
    pub pair_sum: i64,
}

/// Checks `coeff(W) = sum_{S union T = W} coeff(S) coeff(T)` for every `W`,
/// a consequence of the table being 0/1-valued (`f = f^2` pointwise). The
/// sum runs over ordered support pairs, enumerated directly so the check
/// does not reuse the lattice transform it is guarding.
pub fn titsworth_check_spectrum(s: &MobiusSpectrum) -> Result<TitsworthOutcome> {
    let n = s.arity();
    if n > 16 {
        return Err(Error::ArityTooLarge { arity: n, cap: 16 });
    }
    let mut union_sum = vec![0i128; 1usize << n];
    let pairs = s.pairs();
    for &(m1, c1) in pairs {
        for &(m2, c2) in pairs {
            union_sum[(m1 | m2) as usize] += c1 as i128 * c2 as i128;
        }
    }
    for w in 0..1u32 << n {
        let expect = s.coeff(w) as i128;
        let got = union_sum[w as usize];
        if expect != got {
            return Ok(TitsworthOutcome {
                ok: false,
                violation: Some(TitsworthViolation {
                    mask: w,
                    coeff: expect as i64,
                    pair_sum: got.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
                }),
            });
        }
    }
    Ok(TitsworthOutcome { ok: true, violation: None })
}

/// [`titsworth_check_spectrum`] applied to a function's own spectrum.
pub fn titsworth_check(f: &BooleanFunction) -> Result<TitsworthOutcome> {
    titsworth_check_spectrum(&mobius_spectrum(f)?)
}
