//! Boolean functions over packed truth tables, the gadget type, and
//! block-wise composition.
//!
//! Conventions used everywhere in the crate:
//! * inputs are integers with `x_1` as the least significant bit;
//! * a variable set `S ⊆ [n]` is the mask `sum_{i in S} 2^(i-1)`;
//! * partial functions carry an explicit domain mask and store 0 in the
//!   table at undefined points.

use crate::bits::{full_mask, Bits};
use crate::error::{Error, Result};
use crate::Caps;

/// Total or partial Boolean function on `arity` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    arity: u32,
    table: Bits,
    /// `None` for total functions; otherwise bit `x` says `x` is defined.
    domain: Option<Bits>,
}

/// One certificate that variable `index` matters: two defined inputs that
/// differ exactly at `index` and get different values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DependencyWitness {
    /// 1-based variable index.
    pub index: u32,
    /// The pair member with the variable set to 0; lexicographically least.
    pub low: u32,
    /// `low` with the variable flipped to 1.
    pub high: u32,
    /// `f(low)`.
    pub value_low: bool,
}

impl BooleanFunction {
    pub fn new_total(arity: u32, table: Bits) -> Result<Self> {
        Self::check_arity(arity, &Caps::default())?;
        if table.len() != 1 << arity {
            return Err(Error::BadParams(format!(
                "table has {} entries, arity {arity} needs {}",
                table.len(),
                1u64 << arity
            )));
        }
        Ok(BooleanFunction { arity, table, domain: None })
    }

    /// A partial function; table bits outside `domain` are forced to zero.
    pub fn new_partial(arity: u32, table: Bits, domain: Bits) -> Result<Self> {
        Self::check_arity(arity, &Caps::default())?;
        let size = 1usize << arity;
        if table.len() != size || domain.len() != size {
            return Err(Error::BadParams(format!(
                "table/domain must both have {size} entries for arity {arity}"
            )));
        }
        let mut table = table;
        for x in 0..size {
            if !domain.get(x) {
                table.set(x, false);
            }
        }
        Ok(BooleanFunction { arity, table, domain: Some(domain) })
    }

    pub fn from_fn(arity: u32, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        Self::check_arity(arity, &Caps::default())?;
        Ok(BooleanFunction {
            arity,
            table: Bits::from_fn(1 << arity, |x| f(x as u32)),
            domain: None,
        })
    }

    fn check_arity(arity: u32, caps: &Caps) -> Result<()> {
        if arity > caps.max_arity || arity > 31 {
            return Err(Error::ArityTooLarge { arity, cap: caps.max_arity.min(31) });
        }
        Ok(())
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn table(&self) -> &Bits {
        &self.table
    }

    pub fn is_total(&self) -> bool {
        self.domain.is_none()
    }

    pub fn domain(&self) -> Option<&Bits> {
        self.domain.as_ref()
    }

    #[inline]
    pub fn is_defined(&self, x: u32) -> bool {
        x < (1 << self.arity) && self.domain.as_ref().map_or(true, |d| d.get(x as usize))
    }

    /// Value at `x`; errors outside the domain.
    pub fn evaluate(&self, x: u32) -> Result<bool> {
        if !self.is_defined(x) {
            return Err(Error::UndefinedInput { input: x });
        }
        Ok(self.table.get(x as usize))
    }

    /// Unchecked table read; undefined points read as 0.
    #[inline]
    pub fn value_unchecked(&self, x: u32) -> bool {
        self.table.get(x as usize)
    }

    /// Defined inputs, ascending.
    pub fn domain_points(&self) -> Vec<u32> {
        (0..1u32 << self.arity).filter(|&x| self.is_defined(x)).collect()
    }

    /// Canonical serialization, e.g. `n=3;tt=e8` (plus `;dom=..` if partial).
    pub fn table_string(&self) -> String {
        match &self.domain {
            None => format!("n={};tt={}", self.arity, self.table.to_hex()),
            Some(d) => {
                format!("n={};tt={};dom={}", self.arity, self.table.to_hex(), d.to_hex())
            }
        }
    }

    // ----- named constructors -------------------------------------------

    /// OMB: 1 iff the highest zero position is odd; the all-ones input maps
    /// to 0.
    pub fn omb(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams("omb needs n >= 1".into()));
        }
        Self::from_fn(n, |x| omb_value(x, n))
    }

    /// Partial OMB on the chain `0^i 1^(n-i)` for `i in [n]`: the all-ones
    /// point is excluded, the all-zeros point is kept.
    pub fn omb_partial(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams("ombp needs n >= 1".into()));
        }
        Self::check_arity(n, &Caps::default())?;
        let size = 1usize << n;
        let mut domain = Bits::zeros(size);
        for i in 1..=n {
            let x = full_mask(n) & !full_mask(i);
            domain.set(x as usize, true);
        }
        let table = Bits::from_fn(size, |x| domain.get(x) && omb_value(x as u32, n));
        Self::new_partial(n, table, domain)
    }

    /// Addressing function with `n` targets (`n` a power of two): the low
    /// `log2 n` bits select a target bit, which is the value.
    pub fn addr(n: u32) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::BadParams(format!(
                "addr needs a power-of-two target count, got {n}"
            )));
        }
        let log = n.trailing_zeros();
        Self::from_fn(log + n, move |x| addr_value(x, log))
    }

    /// Inner product on `2b` bits: parity of the blockwise AND of the low
    /// and high halves.
    pub fn inner_product(b: u32) -> Result<Self> {
        if b == 0 {
            return Err(Error::BadParams("ip needs b >= 1".into()));
        }
        Self::from_fn(2 * b, move |z| {
            let x = z & full_mask(b);
            let y = z >> b;
            (x & y).count_ones() % 2 == 1
        })
    }

    pub fn and(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x == full_mask(n))
    }

    pub fn or(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x != 0)
    }

    pub fn nor(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x == 0)
    }

    pub fn xor(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x.count_ones() % 2 == 1)
    }

    /// Majority with ties (even arity, weight exactly n/2) mapping to 1.
    pub fn maj(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| 2 * x.count_ones() >= n)
    }

    /// Threshold: 1 iff at least `k` inputs are 1.
    pub fn threshold(k: u32, n: u32) -> Result<Self> {
        if k > n + 1 {
            return Err(Error::BadParams(format!("thr threshold {k} exceeds n+1={}", n + 1)));
        }
        Self::from_fn(n, move |x| x.count_ones() >= k)
    }

    /// Symmetric function from its weight spectrum (`spectrum[w]` = value on
    /// weight-`w` inputs); arity is `spectrum.len() - 1`.
    pub fn symmetric(spectrum: &[bool]) -> Result<Self> {
        if spectrum.is_empty() {
            return Err(Error::BadParams("weight spectrum must be non-empty".into()));
        }
        let n = (spectrum.len() - 1) as u32;
        let spectrum = spectrum.to_vec();
        Self::from_fn(n, move |x| spectrum[x.count_ones() as usize])
    }

    // ----- structural queries -------------------------------------------

    /// Per-variable dependency certificates; `None` at position `i-1` means
    /// the function does not depend on variable `i`.
    pub fn dependencies(&self) -> Vec<Option<DependencyWitness>> {
        let n = self.arity;
        (0..n)
            .map(|i| {
                let bit = 1u32 << i;
                (0..1u32 << n)
                    .filter(|x| x & bit == 0)
                    .find_map(|low| {
                        let high = low | bit;
                        if !self.is_defined(low) || !self.is_defined(high) {
                            return None;
                        }
                        let vl = self.table.get(low as usize);
                        if vl != self.table.get(high as usize) {
                            Some(DependencyWitness { index: i + 1, low, high, value_low: vl })
                        } else {
                            None
                        }
                    })
            })
            .collect()
    }

    /// True iff every variable has a dependency certificate.
    pub fn depends_on_all(&self) -> bool {
        self.dependencies().iter().all(|w| w.is_some())
    }

    /// True iff the value is determined by input weight (and, for partial
    /// functions, the domain is closed under permutations).
    pub fn is_symmetric(&self) -> bool {
        let n = self.arity;
        let mut seen: Vec<Option<bool>> = vec![None; n as usize + 1];
        let mut defined_count = vec![0u64; n as usize + 1];
        for x in 0..1u32 << n {
            if !self.is_defined(x) {
                continue;
            }
            let w = x.count_ones() as usize;
            defined_count[w] += 1;
            let v = self.table.get(x as usize);
            match seen[w] {
                None => seen[w] = Some(v),
                Some(prev) if prev != v => return false,
                _ => {}
            }
        }
        if self.is_total() {
            return true;
        }
        (0..=n as usize).all(|w| {
            let level = binomial_u64(n as u64, w as u64);
            defined_count[w] == 0 || defined_count[w] == level
        })
    }

    /// Weight spectrum of a total symmetric function.
    pub fn symmetric_spectrum(&self) -> Result<Vec<bool>> {
        if !self.is_total() {
            return Err(Error::PartialUnsupported { op: "symmetric_spectrum" });
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.arity;
        Ok((0..=n).map(|w| self.table.get((full_mask(w)) as usize)).collect())
    }

    /// Least `k` such that the function is constant on all inputs of weight
    /// below `n - k`. Errors on non-symmetric or constant input.
    pub fn switch_value(&self) -> Result<u32> {
        let spectrum = self.symmetric_spectrum()?;
        let n = self.arity;
        let first = spectrum[0];
        let prefix = spectrum.iter().take_while(|&&v| v == first).count() as u32;
        if prefix == n + 1 {
            return Err(Error::ConstantFunction);
        }
        Ok(n - prefix)
    }
}

#[inline]
fn omb_value(x: u32, n: u32) -> bool {
    let zeros = !x & full_mask(n);
    if zeros == 0 {
        false
    } else {
        (32 - zeros.leading_zeros()) % 2 == 1
    }
}

#[inline]
fn addr_value(x: u32, log: u32) -> bool {
    let address = x & full_mask(log);
    x >> (log + address) & 1 == 1
}

pub(crate) fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Two-party gadget: Alice holds `alice_bits`, Bob holds `bob_bits`, and the
/// table is indexed by `alice + (bob << alice_bits)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    alice_bits: u32,
    bob_bits: u32,
    table: Bits,
}

impl Gadget {
    pub fn new(alice_bits: u32, bob_bits: u32, table: Bits) -> Result<Self> {
        if alice_bits == 0 || bob_bits == 0 || alice_bits + bob_bits > 20 {
            return Err(Error::BadParams(format!(
                "gadget sides must be >= 1 bit and total at most 20, got {alice_bits}+{bob_bits}"
            )));
        }
        if table.len() != 1 << (alice_bits + bob_bits) {
            return Err(Error::BadParams(format!(
                "gadget table has {} entries, needs {}",
                table.len(),
                1u64 << (alice_bits + bob_bits)
            )));
        }
        Ok(Gadget { alice_bits, bob_bits, table })
    }

    /// Single-bit AND.
    pub fn and1() -> Self {
        Gadget::new(1, 1, Bits::from_fn(4, |i| i == 3)).unwrap()
    }

    /// Single-bit XOR.
    pub fn xor1() -> Self {
        Gadget::new(1, 1, Bits::from_fn(4, |i| i == 1 || i == 2)).unwrap()
    }

    /// Inner product on `b + b` bits.
    pub fn ip(b: u32) -> Result<Self> {
        if b == 0 || 2 * b > 20 {
            return Err(Error::BadParams(format!("ip gadget needs 1 <= b <= 10, got {b}")));
        }
        let table = Bits::from_fn(1 << (2 * b), |i| {
            let x = i as u32 & full_mask(b);
            let y = i as u32 >> b;
            (x & y).count_ones() % 2 == 1
        });
        Gadget::new(b, b, table)
    }

    /// Addressing gadget: Alice holds `b` target bits, Bob holds `log2 b`
    /// addressing bits that select one of them.
    pub fn addr(b: u32) -> Result<Self> {
        if b < 2 || !b.is_power_of_two() {
            return Err(Error::BadParams(format!(
                "addr gadget needs a power-of-two target count >= 2, got {b}"
            )));
        }
        let log = b.trailing_zeros();
        let table = Bits::from_fn(1 << (b + log), |i| {
            let targets = i as u32 & full_mask(b);
            let address = i as u32 >> b;
            targets >> address & 1 == 1
        });
        Gadget::new(b, log, table)
    }

    pub fn alice_bits(&self) -> u32 {
        self.alice_bits
    }

    pub fn bob_bits(&self) -> u32 {
        self.bob_bits
    }

    #[inline]
    pub fn evaluate(&self, x: u32, y: u32) -> bool {
        debug_assert!(x < 1 << self.alice_bits && y < 1 << self.bob_bits);
        self.table.get((x | y << self.alice_bits) as usize)
    }

    /// True for the 1x1-bit AND gadget, which composition can shortcut.
    pub fn is_single_and(&self) -> bool {
        self.alice_bits == 1 && self.bob_bits == 1 && self.table == Bits::from_fn(4, |i| i == 3)
    }
}

/// An outer function applied blockwise to gadget outputs: Alice's input
/// packs `n` blocks of `alice_bits`, Bob's packs `n` blocks of `bob_bits`,
/// block `i` feeding outer variable `i`.
#[derive(Debug, Clone)]
pub struct ComposedFunction {
    outer: BooleanFunction,
    gadget: Gadget,
}

impl ComposedFunction {
    pub fn new(outer: BooleanFunction, gadget: Gadget, caps: &Caps) -> Result<Self> {
        let n = outer.arity();
        let (a, b) = (n * gadget.alice_bits(), n * gadget.bob_bits());
        let cap = caps.max_composed_arity.min(31);
        for side in [a, b] {
            if side > cap {
                return Err(Error::ArityTooLarge { arity: side, cap });
            }
        }
        Ok(ComposedFunction { outer, gadget })
    }

    pub fn outer(&self) -> &BooleanFunction {
        &self.outer
    }

    pub fn gadget(&self) -> &Gadget {
        &self.gadget
    }

    pub fn alice_arity(&self) -> u32 {
        self.outer.arity() * self.gadget.alice_bits
    }

    pub fn bob_arity(&self) -> u32 {
        self.outer.arity() * self.gadget.bob_bits
    }

    /// The outer input produced by applying the gadget to each block pair.
    #[inline]
    pub fn inner_point(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.gadget.alice_bits, self.gadget.bob_bits);
        let mut z = 0u32;
        for i in 0..self.outer.arity() {
            let xi = x >> (i * a) & full_mask(a);
            let yi = y >> (i * b) & full_mask(b);
            z |= (self.gadget.evaluate(xi, yi) as u32) << i;
        }
        z
    }

    /// Value on (Alice, Bob) inputs; errors where the outer function is
    /// undefined.
    pub fn evaluate(&self, x: u32, y: u32) -> Result<bool> {
        self.outer.evaluate(self.inner_point(x, y))
    }
}
