//! Packed bit vectors used for truth tables, domains, and matrix rows.

use crate::error::{Error, Result};

/// Fixed-length bit vector packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(64)] }
    }

    /// All-one vector of the given length.
    pub fn ones(len: usize) -> Self {
        let mut b = Bits { len, words: vec![!0u64; len.div_ceil(64)] };
        b.clear_tail();
        b
    }

    /// Builds a vector by evaluating `f` at every index.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut b = Bits::zeros(len);
        for i in 0..len {
            if f(i) {
                b.set(i, true);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i >> 6];
        if v {
            *w |= 1 << (i & 63);
        } else {
            *w &= !(1 << (i & 63));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Backing words, low indices first; unused tail bits are zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Zeroes the word bits past `len` so equality and hashing stay canonical.
    fn clear_tail(&mut self) {
        let r = self.len & 63;
        if r != 0 {
            if let Some(w) = self.words.last_mut() {
                *w &= (1u64 << r) - 1;
            }
        }
    }

    /// Hex rendering of the vector read as one integer (bit 0 least
    /// significant), padded to whole digits: MAJ on three bits prints `e8`.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for j in (0..digits).rev() {
            let bit = 4 * j;
            let w = self.words.get(bit >> 6).copied().unwrap_or(0);
            let nibble = (w >> (bit & 63)) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    /// Parses the `to_hex` form; the digit count must match `len` exactly and
    /// bits past `len` must be zero.
    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let digits = len.div_ceil(4).max(1);
        if s.len() != digits {
            return Err(Error::BadSpec(format!(
                "hex table `{s}` has {} digits, expected {digits} for {len} bits",
                s.len()
            )));
        }
        let mut b = Bits::zeros(len.max(s.len() * 4));
        for (pos, ch) in s.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .filter(|_| !ch.is_ascii_uppercase())
                .ok_or_else(|| Error::BadSpec(format!("bad hex digit `{ch}` in `{s}`")))?
                as u64;
            let bit = 4 * (digits - 1 - pos);
            b.words[bit >> 6] |= nibble << (bit & 63);
        }
        for i in len..b.len {
            if b.get(i) {
                return Err(Error::BadSpec(format!(
                    "hex table `{s}` sets bit {i}, past the table length {len}"
                )));
            }
        }
        b.len = len;
        b.words.truncate(len.div_ceil(64).max(1));
        b.clear_tail();
        Ok(b)
    }
}

/// Mask with the low `n` bits set: the full variable set of an `n`-bit input.
#[inline]
pub fn full_mask(n: u32) -> u32 {
    debug_assert!(n <= 31);
    (1u32 << n) - 1
}

/// Variables of `mask` as 1-based indices, ascending.
pub fn mask_to_vars(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Inverse of [`mask_to_vars`]: 1-based indices to a mask.
pub fn vars_to_mask(vars: &[u32]) -> u32 {
    vars.iter().map(|v| 1u32 << (v - 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_majority_on_three_bits() {
        let maj = Bits::from_fn(8, |x| (x as u32).count_ones() >= 2);
        assert_eq!(maj.to_hex(), "e8");
        assert_eq!(Bits::from_hex("e8", 8).unwrap(), maj);
    }

    #[test]
    fn hex_rejects_wrong_width_and_stray_bits() {
        assert!(Bits::from_hex("0e8", 8).is_err());
        assert!(Bits::from_hex("e", 8).is_err());
        // 2-bit table must fit in the low half of its single digit.
        assert!(Bits::from_hex("4", 2).is_err());
        assert!(Bits::from_hex("3", 2).is_ok());
    }

    #[test]
    fn var_mask_round_trip() {
        for mask in 0u32..1 << 10 {
            assert_eq!(vars_to_mask(&mask_to_vars(mask)), mask);
        }
    }

    proptest! {
        #[test]
        fn hex_round_trips(len in 1usize..200, seed: u64) {
            let mut state = seed;
            let b = Bits::from_fn(len, |_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                state >> 63 == 1
            });
            prop_assert_eq!(Bits::from_hex(&b.to_hex(), len).unwrap(), b);
        }

        #[test]
        fn set_get_agree(len in 1usize..300, idx in 0usize..300, v: bool) {
            prop_assume!(idx < len);
            let mut b = Bits::zeros(len);
            b.set(idx, v);
            prop_assert_eq!(b.get(idx), v);
            prop_assert_eq!(b.count_ones(), usize::from(v));
        }
    }
}
