//! Communication matrices of composed functions and their exact measures:
//! one-way complexity for total and partial outer functions, rank over the
//! integers, VC dimension, shattering witnesses, entropy-based bounds, the
//! gadget cross-completeness property, and message-extraction audits.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bf::{BooleanFunction, ComposedFunction, DependencyWitness, Gadget};
use crate::bits::{full_mask, mask_to_vars, Bits};
use crate::error::{Error, Result};
use crate::query::{for_each_combination, log2_ceil};
use crate::transforms::mobius_spectrum;
use crate::Caps;

/// Fully materialized matrix of a composed function: row `X` holds Alice's
/// input, column `Y` holds Bob's, entry `(X, Y)` the composed value.
#[derive(Debug, Clone)]
pub struct CommMatrix {
    row_bits: u32,
    col_bits: u32,
    rows: Vec<Bits>,
    /// Per-row definedness masks; `None` when the outer function is total.
    defined: Option<Vec<Bits>>,
}

impl CommMatrix {
    pub fn row_bits(&self) -> u32 {
        self.row_bits
    }

    pub fn col_bits(&self) -> u32 {
        self.col_bits
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        1usize << self.col_bits
    }

    pub fn is_total(&self) -> bool {
        self.defined.is_none()
    }

    /// Stored value at `(x, y)`; zero wherever the entry is undefined.
    pub fn value(&self, x: u32, y: u32) -> bool {
        self.rows[x as usize].get(y as usize)
    }

    pub fn is_defined(&self, x: u32, y: u32) -> bool {
        match &self.defined {
            None => true,
            Some(d) => d[x as usize].get(y as usize),
        }
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn defined_rows(&self) -> Option<&[Bits]> {
        self.defined.as_deref()
    }

    /// Plain-text PBM bitmap of the stored values (undefined entries print
    /// as 0; pair with [`CommMatrix::defined_to_pbm`] for partial matrices).
    pub fn to_pbm(&self) -> String {
        pbm(&self.rows, self.col_count())
    }

    /// PBM bitmap of the definedness mask, when the matrix is partial.
    pub fn defined_to_pbm(&self) -> Option<String> {
        self.defined.as_ref().map(|d| pbm(d, self.col_count()))
    }

    /// One hex string per row, most significant digit first.
    pub fn rows_hex(&self) -> Vec<String> {
        self.rows.iter().map(Bits::to_hex).collect()
    }

    pub fn defined_rows_hex(&self) -> Option<Vec<String>> {
        self.defined.as_ref().map(|d| d.iter().map(Bits::to_hex).collect())
    }
}

fn pbm(rows: &[Bits], cols: usize) -> String {
    let mut out = format!("P1\n{} {}\n", cols, rows.len());
    for row in rows {
        let line: Vec<&str> = (0..cols).map(|y| if row.get(y) { "1" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Materializes the communication matrix of `cf`.
pub fn comm_matrix(cf: &ComposedFunction, caps: &Caps) -> Result<CommMatrix> {
    let (ra, rb) = (cf.alice_arity(), cf.bob_arity());
    let cells = 1u128 << (ra + rb);
    if cells > caps.matrix_cells as u128 {
        return Err(Error::CapExceeded {
            what: "communication matrix cells",
            needed: cells,
            cap: caps.matrix_cells as u128,
        });
    }
    let f = cf.outer();
    let cols = 1usize << rb;
    let single_and = cf.gadget().is_single_and();
    let single_xor = *cf.gadget() == Gadget::xor1();
    let mut rows = Vec::with_capacity(1usize << ra);
    let mut defined = if f.is_total() { None } else { Some(Vec::with_capacity(1usize << ra)) };
    for x in 0..1u32 << ra {
        let mut row = Bits::zeros(cols);
        let mut def = defined.as_ref().map(|_| Bits::zeros(cols));
        for y in 0..cols as u32 {
            let z = if single_and {
                x & y
            } else if single_xor {
                x ^ y
            } else {
                cf.inner_point(x, y)
            };
            if let Some(d) = def.as_mut() {
                if !f.is_defined(z) {
                    continue;
                }
                d.set(y as usize, true);
            }
            if f.value_unchecked(z) {
                row.set(y as usize, true);
            }
        }
        rows.push(row);
        if let (Some(all), Some(d)) = (defined.as_mut(), def) {
            all.push(d);
        }
    }
    Ok(CommMatrix { row_bits: ra, col_bits: rb, rows, defined })
}

/// One-way deterministic communication complexity of a total matrix:
/// `ceil(log2 #distinct rows)`. Rows are hashed whole; bucket collisions
/// fall back to full word-by-word comparison, so no truncation is trusted.
pub fn one_way_cc(m: &CommMatrix) -> Result<u32> {
    if !m.is_total() {
        return Err(Error::PartialUnsupported {
            op: "one_way_cc (partial matrices go through one_way_cc_partial)",
        });
    }
    let distinct: HashSet<&Bits> = m.rows.iter().collect();
    Ok(log2_ceil(distinct.len() as u64))
}

/// Optimal one-way protocol for a possibly partial matrix: message count is
/// the chromatic number of the row conflict graph.
#[derive(Debug, Clone)]
pub struct PartialCc {
    /// `ceil(log2 chromatic)`.
    pub bits: u32,
    /// Exact chromatic number of the conflict graph.
    pub chromatic: u32,
    /// Row index to class index.
    pub class_of: Vec<u32>,
    /// Class index to color in `0..chromatic`.
    pub color_of: Vec<u32>,
}

impl PartialCc {
    /// Message assigned to a row by the optimal coloring.
    pub fn row_color(&self, row: usize) -> u32 {
        self.color_of[self.class_of[row] as usize]
    }
}

/// One-way complexity of a partial matrix. Rows with identical values and
/// identical definedness collapse into one class; two classes conflict iff
/// some column is defined in both with different values, and a message can
/// be shared exactly by conflict-free classes.
pub fn one_way_cc_partial(m: &CommMatrix, caps: &Caps) -> Result<PartialCc> {
    let cols = m.col_count();
    let all_defined = Bits::ones(cols);
    let mut class_of = vec![0u32; m.row_count()];
    let mut reps: Vec<(&Bits, &Bits)> = Vec::new();
    let mut index: HashMap<(&Bits, &Bits), u32> = HashMap::new();
    for (x, row) in m.rows.iter().enumerate() {
        let def = match &m.defined {
            None => &all_defined,
            Some(d) => &d[x],
        };
        let next = reps.len() as u32;
        let id = *index.entry((row, def)).or_insert(next);
        if id == next {
            reps.push((row, def));
        }
        class_of[x] = id;
    }
    if reps.len() > caps.row_classes {
        return Err(Error::CapExceeded {
            what: "row classes",
            needed: reps.len() as u128,
            cap: caps.row_classes as u128,
        });
    }
    let k = reps.len();
    let mut adj = vec![vec![false; k]; k];
    for u in 0..k {
        for v in u + 1..k {
            let (ru, du) = reps[u];
            let (rv, dv) = reps[v];
            let conflict = ru
                .words()
                .iter()
                .zip(rv.words())
                .zip(du.words().iter().zip(dv.words()))
                .any(|((a, b), (da, db))| (a ^ b) & da & db != 0);
            adj[u][v] = conflict;
            adj[v][u] = conflict;
        }
    }
    let (chromatic, color_of) = chromatic_exact(&adj);
    Ok(PartialCc { bits: log2_ceil(chromatic as u64), chromatic, class_of, color_of })
}

/// Greedy clique on a degree-descending vertex order; its size is a valid
/// chromatic lower bound.
fn greedy_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].iter().filter(|&&e| e).count()));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[v][u]) {
            clique.push(v);
        }
    }
    clique
}

/// Colors tracked as fixed 256-bit sets; class counts are capped well below
/// that before coloring starts.
#[derive(Clone, Copy, Default)]
struct ColorSet([u64; 4]);

impl ColorSet {
    fn insert(&mut self, c: u32) {
        self.0[(c / 64) as usize] |= 1 << (c % 64);
    }

    fn contains(&self, c: u32) -> bool {
        self.0[(c / 64) as usize] >> (c % 64) & 1 == 1
    }

    fn len(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

fn dsatur_greedy(adj: &[Vec<bool>]) -> Vec<u32> {
    let n = adj.len();
    let deg: Vec<usize> = (0..n).map(|v| adj[v].iter().filter(|&&e| e).count()).collect();
    let mut colors = vec![u32::MAX; n];
    let mut sat = vec![ColorSet::default(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == u32::MAX)
            .max_by_key(|&v| (sat[v].len(), deg[v], std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..).find(|&c| !sat[v].contains(c)).unwrap();
        colors[v] = c;
        for u in 0..n {
            if adj[v][u] {
                sat[u].insert(c);
            }
        }
    }
    colors
}

struct ColorSearch<'a> {
    adj: &'a [Vec<bool>],
    colors: Vec<u32>,
    best: u32,
    best_colors: Vec<u32>,
    lower: u32,
}

impl ColorSearch<'_> {
    /// Branch-and-bound over colorings; vertices are chosen by saturation
    /// degree and only colors that keep the palette below `best` are tried.
    fn run(&mut self, colored: usize, used: u32) {
        if self.best == self.lower {
            return;
        }
        let n = self.adj.len();
        if colored == n {
            self.best = used;
            self.best_colors = self.colors.clone();
            return;
        }
        let mut pick = usize::MAX;
        let mut pick_key = (0u32, 0usize);
        let mut forbidden = ColorSet::default();
        for v in 0..n {
            if self.colors[v] != u32::MAX {
                continue;
            }
            let mut f = ColorSet::default();
            let mut open = 0usize;
            for u in 0..n {
                if self.adj[v][u] {
                    match self.colors[u] {
                        u32::MAX => open += 1,
                        c => f.insert(c),
                    }
                }
            }
            let key = (f.len(), open);
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
                forbidden = f;
            }
        }
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if forbidden.contains(c) {
                continue;
            }
            self.colors[pick] = c;
            self.run(colored + 1, used.max(c + 1));
            self.colors[pick] = u32::MAX;
            if self.best == self.lower {
                return;
            }
        }
    }
}

/// Exact chromatic number with an optimal coloring. A greedy clique is
/// pre-colored to break color symmetry and to give the lower bound; the
/// DSATUR greedy coloring gives the initial upper bound.
fn chromatic_exact(adj: &[Vec<bool>]) -> (u32, Vec<u32>) {
    let n = adj.len();
    if n == 0 {
        return (0, Vec::new());
    }
    let greedy = dsatur_greedy(adj);
    let ub = greedy.iter().max().unwrap() + 1;
    let clique = greedy_clique(adj);
    let lb = clique.len() as u32;
    if lb == ub {
        return (ub, greedy);
    }
    let mut search = ColorSearch {
        adj,
        colors: vec![u32::MAX; n],
        best: ub,
        best_colors: greedy,
        lower: lb.max(1),
    };
    for (c, &v) in clique.iter().enumerate() {
        search.colors[v] = c as u32;
    }
    search.run(clique.len(), lb);
    (search.best, search.best_colors)
}

/// Exact rank of a total matrix over the rationals, by fraction-free
/// integer elimination. Duplicate rows and columns are removed first; that
/// never changes the rank.
pub fn matrix_rank(m: &CommMatrix, caps: &Caps) -> Result<u32> {
    if !m.is_total() {
        return Err(Error::PartialUnsupported { op: "matrix_rank" });
    }
    let min_dim = m.row_count().min(m.col_count());
    if min_dim > caps.rank_dim {
        return Err(Error::CapExceeded {
            what: "rank elimination dimension",
            needed: min_dim as u128,
            cap: caps.rank_dim as u128,
        });
    }
    let mut seen_rows: HashSet<&Bits> = HashSet::new();
    let rows: Vec<&Bits> = m.rows.iter().filter(|r| seen_rows.insert(r)).collect();
    let mut seen_cols: HashSet<Bits> = HashSet::new();
    let mut cols: Vec<Bits> = Vec::new();
    for y in 0..m.col_count() {
        let sig = Bits::from_fn(rows.len(), |i| rows[i].get(y));
        if seen_cols.insert(sig.clone()) {
            cols.push(sig);
        }
    }
    let cells: Vec<Vec<i128>> = (0..rows.len())
        .map(|i| cols.iter().map(|c| c.get(i) as i128).collect())
        .collect();
    match bareiss_rank_i128(cells) {
        Some(rank) => Ok(rank),
        None => {
            let cells: Vec<Vec<BigInt>> = (0..rows.len())
                .map(|i| cols.iter().map(|c| BigInt::from(c.get(i) as i64)).collect())
                .collect();
            Ok(bareiss_rank_big(cells))
        }
    }
}

/// One-step Bareiss elimination; every intermediate entry is a minor of the
/// input, so the divisions are exact. Returns `None` on i128 overflow.
fn bareiss_rank_i128(mut a: Vec<Vec<i128>>) -> Option<u32> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev: i128 = 1;
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pivot = prow[c];
        for row in rest.iter_mut() {
            let lead = row[c];
            for j in c + 1..cols {
                let t = pivot.checked_mul(row[j])?.checked_sub(lead.checked_mul(prow[j])?)?;
                row[j] = t / prev;
            }
            row[c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank as u32)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> u32 {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pivot = prow[c].clone();
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let t = &pivot * &row[j] - &lead * &prow[j];
                row[j] = t / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank as u32
}

/// Rank of `M_{f AND}` through the sparsity identity rather than
/// elimination.
///
/// With `U[x][S] = [S subset of x]`, the reconstruction identity
/// `f(x AND y) = sum_S c_S [S subset of x][S subset of y]` says
/// `M = U diag(c) U^T` over the support, so `rank <= spar`. The principal
/// submatrix on the support rows and columns is `Z diag(c) Z^T` with
/// `Z[i][j] = [S_j subset of S_i]`; in ascending-mask order `Z` is lower
/// triangular with unit diagonal, so that submatrix has determinant
/// `prod c_S != 0` and `rank >= spar`. The runtime checks are the two facts
/// the argument consumes: every stored coefficient is nonzero, and the
/// spectrum reconstructs `f` at every point.
pub fn and_matrix_rank_certified(f: &BooleanFunction) -> Result<u32> {
    let s = mobius_spectrum(f)?;
    if let Some(&(mask, _)) = s.pairs().iter().find(|&&(_, c)| c == 0) {
        return Err(Error::Inconclusive(format!(
            "spectrum stores a zero coefficient at mask {mask}"
        )));
    }
    let values = s.reconstruct();
    for (x, v) in values.iter().enumerate() {
        if *v != f.value_unchecked(x as u32) as i64 {
            return Err(Error::Inconclusive(format!(
                "spectrum fails to reconstruct the function at input {x}"
            )));
        }
    }
    Ok(s.sparsity() as u32)
}

/// VC dimension reported by brute force; `AtLeast` appears only when the
/// search stopped at the caller's cap with a shattered set still in hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VcBound {
    Exact(u32),
    AtLeast(u32),
}

impl VcBound {
    pub fn lower(self) -> u32 {
        match self {
            VcBound::Exact(d) | VcBound::AtLeast(d) => d,
        }
    }
}

/// Largest `d <= cap_d` such that some `d` columns are shattered by the
/// rows of `m`.
pub fn vc_dim_bruteforce(m: &CommMatrix, cap_d: u32, caps: &Caps) -> Result<VcBound> {
    if !m.is_total() {
        return Err(Error::PartialUnsupported { op: "vc_dim_bruteforce" });
    }
    let cols = m.col_count();
    for d in 1..=cap_d {
        if d as usize > cols || (1u128 << d) > m.row_count() as u128 {
            return Ok(VcBound::Exact(d - 1));
        }
        let needed = binom_u128(cols as u128, d as u128)
            .and_then(|b| b.checked_mul(1u128 << d))
            .and_then(|b| b.checked_mul(m.row_count() as u128))
            .unwrap_or(u128::MAX);
        if needed > caps.work as u128 {
            return Err(Error::CapExceeded {
                what: "vc enumeration",
                needed,
                cap: caps.work as u128,
            });
        }
        let mut found = false;
        for_each_combination(cols, d as usize, |set| {
            found = shattered(&m.rows, set);
            found
        });
        if !found {
            return Ok(VcBound::Exact(d - 1));
        }
    }
    Ok(VcBound::AtLeast(cap_d))
}

fn shattered(rows: &[Bits], set: &[usize]) -> bool {
    let total = 1usize << set.len();
    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut count = 0usize;
    for row in rows {
        let mut idx = 0usize;
        for (t, &y) in set.iter().enumerate() {
            idx |= (row.get(y) as usize) << t;
        }
        if seen[idx / 64] >> (idx % 64) & 1 == 0 {
            seen[idx / 64] |= 1 << (idx % 64);
            count += 1;
            if count == total {
                return true;
            }
        }
    }
    false
}

fn binom_u128(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Columns of `M_{f IP_b}` that the rows shatter, one per variable and
/// per nonzero block position beyond the first.
#[derive(Debug, Clone)]
pub struct ShatterWitness {
    arity: u32,
    block: u32,
    columns: Vec<u32>,
    pairs: Vec<DependencyWitness>,
}

impl ShatterWitness {
    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn block(&self) -> u32 {
        self.block
    }

    /// Bob inputs `y^{(i,j)}`, ordered by variable then block position.
    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    /// Dependency certificates consumed by the construction, one per
    /// variable.
    pub fn pairs(&self) -> &[DependencyWitness] {
        &self.pairs
    }

    pub fn expected_size(&self) -> u32 {
        self.arity * (self.block - 1)
    }

    /// Alice input realizing `pattern` over [`ShatterWitness::columns`]:
    /// the first bit of each block is 1 and the remaining bits carry the
    /// pattern, flipped wherever the variable's low value is 1.
    pub fn witness_row(&self, pattern: u32) -> u32 {
        let (n, b) = (self.arity, self.block);
        let mut x = 0u32;
        for i in 1..=n {
            x |= 1 << ((i - 1) * b);
            let v = self.pairs[(i - 1) as usize].value_low;
            for j in 2..=b {
                let bit = pattern >> ((i - 1) * (b - 1) + (j - 2)) & 1 == 1;
                if bit != v {
                    x |= 1 << ((i - 1) * b + (j - 1));
                }
            }
        }
        x
    }
}

/// Builds the shattered column set for `M_{f IP_b}` from one dependency
/// certificate per variable. Column `y^{(i,j)}` repeats the certificate's
/// shared assignment in the first position of every block except block `i`,
/// which holds a single 1 at position `j`.
pub fn ip_shattering_witness(f: &BooleanFunction, b: u32, caps: &Caps) -> Result<ShatterWitness> {
    let n = f.arity();
    let deps = f.dependencies();
    if let Some(i) = deps.iter().position(Option::is_none) {
        return Err(Error::BadParams(format!("does not depend on input {}", i + 1)));
    }
    let pairs: Vec<DependencyWitness> = deps.into_iter().flatten().collect();
    if b == 0 {
        return Err(Error::BadParams("block width must be at least 1".into()));
    }
    if b == 1 {
        return Ok(ShatterWitness { arity: n, block: b, columns: Vec::new(), pairs });
    }
    let cap = caps.max_composed_arity.min(31);
    if n * b > cap {
        return Err(Error::ArityTooLarge { arity: n * b, cap });
    }
    let patterns = 1u128 << (n * (b - 1));
    if patterns > caps.work as u128 {
        return Err(Error::CapExceeded {
            what: "shattering patterns",
            needed: patterns,
            cap: caps.work as u128,
        });
    }
    let mut columns = Vec::with_capacity((n * (b - 1)) as usize);
    for i in 1..=n {
        let z = pairs[(i - 1) as usize].low;
        for j in 2..=b {
            let mut y = 0u32;
            for k in 1..=n {
                if k == i {
                    y |= 1 << ((k - 1) * b + (j - 1));
                } else if z >> (k - 1) & 1 == 1 {
                    y |= 1 << ((k - 1) * b);
                }
            }
            columns.push(y);
        }
    }
    Ok(ShatterWitness { arity: n, block: b, columns, pairs })
}

/// True iff every bit pattern over `columns` occurs among the rows of `m`.
pub fn shattering_check(m: &CommMatrix, columns: &[u32], caps: &Caps) -> Result<bool> {
    if let Some(&y) = columns.iter().find(|&&y| y as usize >= m.col_count()) {
        return Err(Error::BadParams(format!("column {y} outside the matrix")));
    }
    let k = columns.len() as u32;
    let needed = if k >= 64 {
        u128::MAX
    } else {
        (1u128 << k).saturating_mul(m.row_count() as u128)
    };
    if needed > caps.work as u128 {
        return Err(Error::CapExceeded {
            what: "shattering check",
            needed,
            cap: caps.work as u128,
        });
    }
    let total = 1usize << k;
    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut count = 0usize;
    for row in &m.rows {
        let mut idx = 0usize;
        for (t, &y) in columns.iter().enumerate() {
            idx |= (row.get(y as usize) as usize) << t;
        }
        if seen[idx / 64] >> (idx % 64) & 1 == 0 {
            seen[idx / 64] |= 1 << (idx % 64);
            count += 1;
            if count == total {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Binary entropy in bits; the endpoints take their continuity value 0.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParams(format!("entropy argument {p} outside [0, 1]")));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-(p * p.log2() + (1.0 - p) * (1.0 - p).log2()))
}

/// Quantum one-way lower bound from the VC dimension:
/// `(1 - H(eps)) * vc`, halved when entanglement is allowed.
pub fn klauck_bound(vc: u32, eps: f64, entangled: bool) -> Result<f64> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::BadParams(format!("error rate {eps} outside [0, 1/2)")));
    }
    let v = (1.0 - binary_entropy(eps)?) * vc as f64;
    Ok(if entangled { v / 2.0 } else { v })
}

/// Searches the gadget's Alice inputs for a cross-complete set: at least
/// three inputs such that for every pair and every target value pair some
/// Bob input realizes both targets. Returns the lexicographically least
/// witness triple.
pub fn gadget_property_check(g: &Gadget, caps: &Caps) -> Result<Option<Vec<u32>>> {
    let na = 1u64 << g.alice_bits();
    if na > caps.gadget_alice_inputs {
        return Err(Error::CapExceeded {
            what: "gadget alice inputs",
            needed: na as u128,
            cap: caps.gadget_alice_inputs as u128,
        });
    }
    let na = na as u32;
    let nb = 1u32 << g.bob_bits();
    let related = |x1: u32, x2: u32| {
        let mut seen = 0u8;
        for y in 0..nb {
            seen |= 1 << ((g.evaluate(x1, y) as u8) << 1 | g.evaluate(x2, y) as u8);
            if seen == 0b1111 {
                return true;
            }
        }
        false
    };
    let mut rel = vec![vec![false; na as usize]; na as usize];
    for x1 in 0..na {
        for x2 in x1 + 1..na {
            let r = related(x1, x2);
            rel[x1 as usize][x2 as usize] = r;
            rel[x2 as usize][x1 as usize] = r;
        }
    }
    for a in 0..na {
        for b in a + 1..na {
            if !rel[a as usize][b as usize] {
                continue;
            }
            for c in b + 1..na {
                if rel[a as usize][c as usize] && rel[b as usize][c as usize] {
                    return Ok(Some(vec![a, b, c]));
                }
            }
        }
    }
    Ok(None)
}

/// Everything the message-extraction argument produces for `f IP_b`,
/// reported rather than asserted: the constants involved only bind
/// asymptotically.
#[derive(Debug, Clone, Serialize)]
pub struct LiftAudit {
    pub n: u32,
    pub block: u32,
    /// Nonzero block alphabet size `2^b - 1`.
    pub q: u64,
    /// Optimal message count (chromatic number of the row coloring).
    pub c_messages: u32,
    /// `ceil(log2 c_messages)`.
    pub message_bits: u32,
    /// `q^n`, the number of Alice inputs with every block nonzero.
    pub z_count: u64,
    pub heavy_color: u32,
    pub heavy_part_size: u64,
    /// Pair inside the heavy part minimizing blockwise agreement; both
    /// components coincide when the part has a single element.
    pub pair: (u32, u32),
    /// Variables on which the pair's blocks agree, 1-based ascending.
    pub agreement: Vec<u32>,
    pub agreement_mask: u32,
    /// Whether the agreement variables already determine `f` on its domain.
    pub determined: bool,
    /// `message_bits / log2 q`, for display; the flags below are exact.
    pub rate: f64,
    /// `|I| < 10 c`, decided exactly as `q^{|I|} < 2^{10 message_bits}`.
    pub agreement_small: bool,
    /// `c < n/30`, decided exactly as `2^{30 message_bits} < q^n`.
    pub rate_precondition: bool,
}

/// Runs the extraction argument on `f IP_b`: color the rows optimally,
/// restrict to all-blocks-nonzero inputs, take the heaviest color class,
/// pick its minimum-agreement pair, and test whether the agreement
/// variables determine `f`.
pub fn lift_audit(f: &BooleanFunction, b: u32, caps: &Caps) -> Result<LiftAudit> {
    if b < 2 {
        return Err(Error::BadParams(format!(
            "extraction needs block width >= 2 so the nonzero alphabet has >= 3 letters, got {b}"
        )));
    }
    let n = f.arity();
    let q = (1u64 << b) - 1;
    let z_count = (q as u128).checked_pow(n).unwrap_or(u128::MAX);
    if z_count > caps.enum_cells as u128 {
        return Err(Error::CapExceeded {
            what: "nonzero-block enumeration",
            needed: z_count,
            cap: caps.enum_cells as u128,
        });
    }
    let cf = ComposedFunction::new(f.clone(), Gadget::ip(b)?, caps)?;
    let m = comm_matrix(&cf, caps)?;
    let pc = one_way_cc_partial(&m, caps)?;
    let d = pc.bits;
    let bmask = full_mask(b);
    let nonzero_blocks = |x: u32| (0..n).all(|i| x >> (i * b) & bmask != 0);
    let mut per_color = vec![0u64; pc.chromatic as usize];
    for x in 0..m.row_count() as u32 {
        if nonzero_blocks(x) {
            per_color[pc.row_color(x as usize) as usize] += 1;
        }
    }
    let heavy_color = (0..per_color.len()).max_by_key(|&c| (per_color[c], usize::MAX - c)).unwrap()
        as u32;
    let heavy_part_size = per_color[heavy_color as usize];
    let zs: Vec<u32> = (0..m.row_count() as u32)
        .filter(|&x| nonzero_blocks(x) && pc.row_color(x as usize) == heavy_color)
        .collect();
    let agreements = |x1: u32, x2: u32| {
        let mut mask = 0u32;
        for i in 0..n {
            if (x1 ^ x2) >> (i * b) & bmask == 0 {
                mask |= 1 << i;
            }
        }
        mask
    };
    let mut pair = (zs[0], zs[0]);
    let mut best = n + 1;
    for (i, &x1) in zs.iter().enumerate() {
        for &x2 in &zs[i + 1..] {
            let a = agreements(x1, x2).count_ones();
            if a < best {
                best = a;
                pair = (x1, x2);
            }
        }
    }
    let agreement_mask = agreements(pair.0, pair.1);
    let mut buckets: HashMap<u32, bool> = HashMap::new();
    let mut determined = true;
    for z in f.domain_points() {
        let v = f.value_unchecked(z);
        if *buckets.entry(z & agreement_mask).or_insert(v) != v {
            determined = false;
            break;
        }
    }
    let isize = agreement_mask.count_ones();
    let qb = BigUint::from(q);
    let agreement_small = qb.pow(isize) < (BigUint::one() << (10 * d));
    let rate_precondition = (BigUint::one() << (30 * d)) < qb.pow(n);
    Ok(LiftAudit {
        n,
        block: b,
        q,
        c_messages: pc.chromatic,
        message_bits: d,
        z_count: z_count as u64,
        heavy_color,
        heavy_part_size,
        pair,
        agreement: mask_to_vars(agreement_mask),
        agreement_mask,
        determined,
        rate: d as f64 / (q as f64).log2(),
        agreement_small,
        rate_precondition,
    })
}

/// Decides `c >= rank^{log_3 2}` exactly. The exponent lies strictly
/// between 306/485 and 53/84, so each rational power test proves one side;
/// inputs whose ratio of logarithms falls in the tiny gap between the two
/// rationals come back as `Inconclusive` instead of a float guess.
pub fn power_bound_check(c: u64, rank: u64) -> Result<bool> {
    if c >= rank {
        return Ok(true);
    }
    let (mut r3, mut a) = (rank, 0u32);
    while r3 > 1 && r3 % 3 == 0 {
        r3 /= 3;
        a += 1;
    }
    if r3 == 1 {
        return Ok(c >= 1u64 << a);
    }
    let cb = BigUint::from(c);
    let rb = BigUint::from(rank);
    if cb.pow(84) >= rb.pow(53) {
        return Ok(true);
    }
    if cb.pow(485) < rb.pow(306) {
        return Ok(false);
    }
    Err(Error::Inconclusive(format!(
        "{c} against {rank}^(log_3 2) falls between the rational test exponents"
    )))
}

/// Checks `d <= (log2 6 / 3) * rank + 1` exactly, as
/// `2^{3(d-1)} <= 6^rank`.
pub fn rank_bound_holds(d: u32, rank: u64) -> bool {
    if d <= 1 {
        return true;
    }
    let e = 3 * (d as u64 - 1);
    if e <= 2 * rank {
        return true;
    }
    (BigUint::one() << e as usize) <= BigUint::from(6u32).pow(rank as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::mobius_sparsity;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn and_matrix(f: &BooleanFunction) -> CommMatrix {
        let caps = Caps::default();
        let cf = ComposedFunction::new(f.clone(), Gadget::and1(), &caps).unwrap();
        comm_matrix(&cf, &caps).unwrap()
    }

    #[test]
    fn matrices_match_pointwise_evaluation() {
        let caps = Caps::default();
        let m = and_matrix(&BooleanFunction::and(1).unwrap());
        assert_eq!(m.row_count(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(m.value(x, y), x == 1 && y == 1);
            }
        }
        let zero = and_matrix(&BooleanFunction::from_fn(2, |_| false).unwrap());
        assert!(zero.rows().iter().all(|r| r.count_ones() == 0));
        let f = BooleanFunction::omb(3).unwrap();
        let cf = ComposedFunction::new(f.clone(), Gadget::and1(), &caps).unwrap();
        let m = comm_matrix(&cf, &caps).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(m.value(x, y), f.evaluate(x & y).unwrap());
            }
        }
        let p = BooleanFunction::omb_partial(3).unwrap();
        let mp = and_matrix(&p);
        assert!(!mp.is_total());
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(mp.is_defined(x, y), p.is_defined(x & y));
                if mp.is_defined(x, y) {
                    assert_eq!(mp.value(x, y), p.value_unchecked(x & y));
                }
            }
        }
    }

    #[test]
    fn xor_composition_uses_the_xor_point() {
        let caps = Caps::default();
        let f = BooleanFunction::omb(3).unwrap();
        let cf = ComposedFunction::new(f.clone(), Gadget::xor1(), &caps).unwrap();
        let m = comm_matrix(&cf, &caps).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(m.value(x, y), f.value_unchecked(x ^ y));
            }
        }
    }

    #[test]
    fn one_way_counts_distinct_rows() {
        let m = and_matrix(&BooleanFunction::from_fn(3, |_| true).unwrap());
        assert_eq!(one_way_cc(&m).unwrap(), 0);
        let m = and_matrix(&BooleanFunction::omb(5).unwrap());
        assert_eq!(one_way_cc(&m).unwrap(), 3);
        let m = and_matrix(&BooleanFunction::omb(3).unwrap());
        assert_eq!(one_way_cc(&m).unwrap(), 2);
        let m = and_matrix(&BooleanFunction::omb_partial(3).unwrap());
        assert!(matches!(one_way_cc(&m), Err(Error::PartialUnsupported { .. })));
    }

    #[test]
    fn partial_protocol_agrees_with_total_on_total_matrices() {
        let caps = Caps::default();
        for f in [
            BooleanFunction::omb(3).unwrap(),
            BooleanFunction::maj(3).unwrap(),
            BooleanFunction::from_fn(3, |x| x.count_ones() == 1).unwrap(),
        ] {
            let m = and_matrix(&f);
            let pc = one_way_cc_partial(&m, &caps).unwrap();
            assert_eq!(pc.bits, one_way_cc(&m).unwrap());
            assert_eq!(pc.chromatic as usize, m.rows.iter().collect::<HashSet<_>>().len());
        }
    }

    #[test]
    fn undefined_everywhere_needs_no_message() {
        let caps = Caps::default();
        let f = BooleanFunction::new_partial(2, Bits::zeros(4), Bits::zeros(4)).unwrap();
        let m = and_matrix(&f);
        let pc = one_way_cc_partial(&m, &caps).unwrap();
        assert_eq!(pc.chromatic, 1);
        assert_eq!(pc.bits, 0);
    }

    fn brute_chromatic(adj: &[Vec<bool>]) -> u32 {
        let n = adj.len();
        if n == 0 {
            return 0;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(adj[v].iter().filter(|&&e| e).count()));
        fn place(
            k: u32,
            pos: usize,
            order: &[usize],
            adj: &[Vec<bool>],
            colors: &mut Vec<u32>,
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let v = order[pos];
            for c in 0..k.min(pos as u32 + 1) {
                if order[..pos].iter().any(|&u| adj[v][u] && colors[u] == c) {
                    continue;
                }
                colors[v] = c;
                if place(k, pos + 1, order, adj, colors) {
                    return true;
                }
            }
            false
        }
        (1..=n as u32)
            .find(|&k| place(k, 0, &order, adj, &mut vec![u32::MAX; n]))
            .unwrap()
    }

    fn brute_max_clique(adj: &[Vec<bool>]) -> u32 {
        // A clique here is an independent set of the complement graph,
        // which is sparse for these dense conflict graphs; vertices with
        // complement-degree at most 1 can always join the set.
        let n = adj.len();
        assert!(n <= 128);
        let comp: Vec<u128> = (0..n)
            .map(|v| {
                let mut m = 0u128;
                for u in 0..n {
                    if u != v && !adj[v][u] {
                        m |= 1 << u;
                    }
                }
                m
            })
            .collect();
        fn mis(comp: &[u128], live: u128) -> u32 {
            if live == 0 {
                return 0;
            }
            let mut v_best = usize::MAX;
            let mut d_best = 0u32;
            let mut scan = live;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                let d = (comp[v] & live).count_ones();
                if d <= 1 {
                    return 1 + mis(comp, live & !(comp[v] | (1 << v)));
                }
                if v_best == usize::MAX || d > d_best {
                    v_best = v;
                    d_best = d;
                }
            }
            let v = v_best;
            let with = 1 + mis(comp, live & !(comp[v] | (1u128 << v)));
            let without = mis(comp, live & !(1u128 << v));
            with.max(without)
        }
        let live = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        mis(&comp, live)
    }

    fn conflict_classes(m: &CommMatrix, pc: &PartialCc) -> Vec<Vec<bool>> {
        let mut reps: Vec<u32> = Vec::new();
        let mut class_rows: HashMap<u32, u32> = HashMap::new();
        for x in 0..m.row_count() as u32 {
            if let std::collections::hash_map::Entry::Vacant(e) =
                class_rows.entry(pc.class_of[x as usize])
            {
                e.insert(x);
                reps.push(x);
            }
        }
        let k = reps.len();
        let mut adj = vec![vec![false; k]; k];
        for u in 0..k {
            for v in 0..k {
                adj[u][v] = (0..m.col_count() as u32).any(|y| {
                    m.is_defined(reps[u], y)
                        && m.is_defined(reps[v], y)
                        && m.value(reps[u], y) != m.value(reps[v], y)
                });
            }
        }
        adj
    }

    fn assert_coloring_proper(m: &CommMatrix, pc: &PartialCc) {
        for x1 in 0..m.row_count() as u32 {
            for x2 in 0..m.row_count() as u32 {
                let conflict = (0..m.col_count() as u32).any(|y| {
                    m.is_defined(x1, y) && m.is_defined(x2, y) && m.value(x1, y) != m.value(x2, y)
                });
                if conflict {
                    assert_ne!(pc.row_color(x1 as usize), pc.row_color(x2 as usize));
                }
            }
        }
    }

    #[test]
    fn partial_coloring_matches_bruteforce_when_small() {
        let caps = Caps::default();
        let f = BooleanFunction::omb_partial(2).unwrap();
        let cf = ComposedFunction::new(f, Gadget::ip(2).unwrap(), &caps).unwrap();
        let m = comm_matrix(&cf, &caps).unwrap();
        let pc = one_way_cc_partial(&m, &caps).unwrap();
        assert_coloring_proper(&m, &pc);
        let adj = conflict_classes(&m, &pc);
        assert_eq!(pc.chromatic, brute_chromatic(&adj));
        assert_eq!(pc.bits, log2_ceil(pc.chromatic as u64));
    }

    #[test]
    fn partial_coloring_certified_by_exact_clique() {
        // The class graph here has 64 vertices, far past honest brute-force
        // coloring. An exact maximum clique forces chromatic >= clique and
        // the returned proper coloring shows the other direction, so
        // equality of the two numbers certifies the value.
        let caps = Caps::default();
        let f = BooleanFunction::omb_partial(3).unwrap();
        let cf = ComposedFunction::new(f, Gadget::ip(2).unwrap(), &caps).unwrap();
        let m = comm_matrix(&cf, &caps).unwrap();
        let pc = one_way_cc_partial(&m, &caps).unwrap();
        assert_coloring_proper(&m, &pc);
        let adj = conflict_classes(&m, &pc);
        assert_eq!(pc.chromatic, brute_max_clique(&adj));
        assert_eq!(pc.bits, log2_ceil(pc.chromatic as u64));
    }

    #[test]
    fn rank_of_and_matrices_equals_sparsity() {
        let caps = Caps::default();
        let m = and_matrix(&BooleanFunction::nor(2).unwrap());
        assert_eq!(matrix_rank(&m, &caps).unwrap(), 4);
        let m = and_matrix(&BooleanFunction::omb(3).unwrap());
        assert_eq!(matrix_rank(&m, &caps).unwrap(), 4);
        let m = and_matrix(&BooleanFunction::from_fn(2, |_| false).unwrap());
        assert_eq!(matrix_rank(&m, &caps).unwrap(), 0);
        for n in 1..=3u32 {
            for t in 0..1u64 << (1 << n) {
                let f = BooleanFunction::from_fn(n, |x| t >> x & 1 == 1).unwrap();
                let m = and_matrix(&f);
                let rank = matrix_rank(&m, &caps).unwrap();
                assert_eq!(rank as usize, mobius_sparsity(&f).unwrap());
                assert_eq!(rank, and_matrix_rank_certified(&f).unwrap());
            }
        }
    }

    #[test]
    fn certified_rank_agrees_with_elimination_on_random_functions() {
        let caps = Caps::default();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for (n, reps) in [(4u32, 25usize), (5, 25), (6, 4)] {
            for _ in 0..reps {
                let f = BooleanFunction::from_fn(n, |_| rng.gen_bool(0.5)).unwrap();
                let m = and_matrix(&f);
                assert_eq!(matrix_rank(&m, &caps).unwrap(), and_matrix_rank_certified(&f).unwrap());
            }
        }
    }

    #[test]
    fn rank_guards() {
        let caps = Caps::default();
        let m = and_matrix(&BooleanFunction::omb_partial(3).unwrap());
        assert!(matches!(matrix_rank(&m, &caps), Err(Error::PartialUnsupported { .. })));
        let tight = Caps { rank_dim: 2, ..Caps::default() };
        let m = and_matrix(&BooleanFunction::omb(3).unwrap());
        assert!(matches!(matrix_rank(&m, &tight), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn vc_dimension_small_matrices() {
        let caps = Caps::default();
        let m = and_matrix(&BooleanFunction::from_fn(2, |_| true).unwrap());
        assert_eq!(vc_dim_bruteforce(&m, 4, &caps).unwrap(), VcBound::Exact(0));
        // NOR composed over XOR is the 4x4 equality matrix.
        let eq = ComposedFunction::new(
            BooleanFunction::nor(2).unwrap(),
            Gadget::xor1(),
            &caps,
        )
        .unwrap();
        let m = comm_matrix(&eq, &caps).unwrap();
        assert_eq!(vc_dim_bruteforce(&m, 4, &caps).unwrap(), VcBound::Exact(1));
        let ip = ComposedFunction::new(
            BooleanFunction::xor(2).unwrap(),
            Gadget::ip(2).unwrap(),
            &caps,
        )
        .unwrap();
        let m = comm_matrix(&ip, &caps).unwrap();
        assert!(vc_dim_bruteforce(&m, 4, &caps).unwrap().lower() >= 2);
        assert_eq!(vc_dim_bruteforce(&m, 1, &caps).unwrap(), VcBound::AtLeast(1));
        let tiny = Caps { work: 4, ..Caps::default() };
        assert!(matches!(vc_dim_bruteforce(&m, 4, &tiny), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn shattering_witness_construction_and_check() {
        let caps = Caps::default();
        for (f, b) in [
            (BooleanFunction::xor(3).unwrap(), 2u32),
            (BooleanFunction::maj(3).unwrap(), 3),
            (BooleanFunction::omb(2).unwrap(), 3),
        ] {
            let w = ip_shattering_witness(&f, b, &caps).unwrap();
            assert_eq!(w.columns().len() as u32, w.expected_size());
            let cf = ComposedFunction::new(f.clone(), Gadget::ip(b).unwrap(), &caps).unwrap();
            let m = comm_matrix(&cf, &caps).unwrap();
            assert!(shattering_check(&m, w.columns(), &caps).unwrap());
            for pattern in 0..1u32 << w.expected_size() {
                let x = w.witness_row(pattern);
                for (t, &y) in w.columns().iter().enumerate() {
                    assert_eq!(m.value(x, y), pattern >> t & 1 == 1);
                }
            }
        }
        let w = ip_shattering_witness(&BooleanFunction::xor(3).unwrap(), 1, &caps).unwrap();
        assert!(w.columns().is_empty());
        let m = and_matrix(&BooleanFunction::xor(3).unwrap());
        assert!(shattering_check(&m, w.columns(), &caps).unwrap());
        let lazy = BooleanFunction::from_fn(2, |x| x & 1 == 1).unwrap();
        match ip_shattering_witness(&lazy, 2, &caps) {
            Err(Error::BadParams(msg)) => assert!(msg.contains("does not depend on input 2")),
            other => panic!("expected a dependency error, got {other:?}"),
        }
    }

    #[test]
    fn entropy_and_klauck_values() {
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(binary_entropy(-0.1).is_err());
        let v = klauck_bound(6, 1.0 / 3.0, false).unwrap();
        assert!((v - 0.490224995673063).abs() < 1e-9);
        let half = klauck_bound(6, 1.0 / 3.0, true).unwrap();
        assert!((half - v / 2.0).abs() < 1e-15);
        assert!(klauck_bound(6, 0.5, false).is_err());
    }

    #[test]
    fn gadget_cross_completeness_witnesses() {
        let caps = Caps::default();
        let w = gadget_property_check(&Gadget::ip(2).unwrap(), &caps).unwrap();
        assert_eq!(w, Some(vec![1, 2, 3]));
        assert_eq!(gadget_property_check(&Gadget::and1(), &caps).unwrap(), None);
        assert_eq!(gadget_property_check(&Gadget::xor1(), &caps).unwrap(), None);
        // Addressing with 4 targets: a single shared position cannot give
        // both (1,1) and (1,0), so weight-1 strings drop out and the least
        // pairwise cross-complete triple is {0011, 0101, 0110}.
        let w = gadget_property_check(&Gadget::addr(4).unwrap(), &caps).unwrap();
        assert_eq!(w, Some(vec![3, 5, 6]));
        let g = Gadget::addr(4).unwrap();
        for (x1, x2) in [(3u32, 5u32), (3, 6), (5, 6)] {
            for b1 in [false, true] {
                for b2 in [false, true] {
                    assert!((0..4u32)
                        .any(|y| g.evaluate(x1, y) == b1 && g.evaluate(x2, y) == b2));
                }
            }
        }
    }

    #[test]
    fn lift_audit_reports() {
        let caps = Caps::default();
        let constant = BooleanFunction::from_fn(2, |_| false).unwrap();
        let a = lift_audit(&constant, 2, &caps).unwrap();
        assert_eq!(a.c_messages, 1);
        assert_eq!(a.message_bits, 0);
        assert_eq!(a.z_count, 9);
        assert_eq!(a.heavy_part_size, 9);
        assert!(a.determined);
        assert!(a.rate_precondition);
        assert!(!a.agreement_small);

        let total = BooleanFunction::xor(2).unwrap();
        let a = lift_audit(&total, 2, &caps).unwrap();
        assert!(a.determined);

        let f = BooleanFunction::omb_partial(3).unwrap();
        let a = lift_audit(&f, 2, &caps).unwrap();
        assert_eq!(a.q, 3);
        assert_eq!(a.z_count, 27);
        assert_eq!(a.message_bits, log2_ceil(a.c_messages as u64));
        assert!(a.c_messages >= 2);
        let bmask = full_mask(2);
        for x in [a.pair.0, a.pair.1] {
            assert!((0..3).all(|i| x >> (i * 2) & bmask != 0));
        }
        assert_eq!(a.agreement, mask_to_vars(a.agreement_mask));
        // Assignment-enumeration oracle for the determination flag.
        let mut oracle = true;
        for assignment in 0..8u32 {
            if assignment & !a.agreement_mask != 0 {
                continue;
            }
            let vals: HashSet<bool> = f
                .domain_points()
                .into_iter()
                .filter(|z| z & a.agreement_mask == assignment)
                .map(|z| f.value_unchecked(z))
                .collect();
            if vals.len() > 1 {
                oracle = false;
            }
        }
        assert_eq!(a.determined, oracle);
        // d >= 1 makes 10c > n here, so the agreement side always passes.
        assert!(a.agreement_small);
        assert!(lift_audit(&f, 1, &caps).is_err());
    }

    #[test]
    fn power_and_message_bounds() {
        assert!(power_bound_check(4, 9).unwrap());
        assert!(!power_bound_check(3, 9).unwrap());
        assert!(power_bound_check(5, 5).unwrap());
        assert!(power_bound_check(0, 0).unwrap());
        assert!(power_bound_check(1, 1).unwrap());
        assert!(!power_bound_check(0, 2).unwrap());
        assert!(!power_bound_check(1, 2).unwrap());
        assert!(power_bound_check(2, 2).unwrap());
        // 476816 sits between 10^9 raised to 306/485 and to 53/84, inside
        // the undecided sliver around the true exponent.
        assert!(matches!(
            power_bound_check(476_816, 1_000_000_000),
            Err(Error::Inconclusive(_))
        ));
        assert!(rank_bound_holds(1, 0));
        assert!(rank_bound_holds(4, 4));
        assert!(!rank_bound_holds(5, 4));
        assert!(!rank_bound_holds(10, 6));
        assert!(rank_bound_holds(4, 10));
        assert!(rank_bound_holds(3, 3));
    }

    #[test]
    fn matrix_exports() {
        let f = BooleanFunction::omb_partial(3).unwrap();
        let m = and_matrix(&f);
        let pbm = m.to_pbm();
        assert!(pbm.starts_with("P1\n8 8\n"));
        assert_eq!(pbm.lines().count(), 10);
        let def = m.defined_to_pbm().unwrap();
        assert!(def.starts_with("P1\n8 8\n"));
        let hex = m.rows_hex();
        assert_eq!(hex.len(), 8);
        assert!(hex.iter().all(|h| h.len() == 2));
        assert!(m.defined_rows_hex().is_some());
        let t = and_matrix(&BooleanFunction::omb(3).unwrap());
        assert!(t.defined_to_pbm().is_none());
    }

    #[test]
    fn random_rank_population_respects_one_way_bounds() {
        let caps = Caps::default();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..40 {
            let f = BooleanFunction::from_fn(4, |_| rng.gen_bool(0.5)).unwrap();
            let m = and_matrix(&f);
            let rank = matrix_rank(&m, &caps).unwrap();
            let cc = one_way_cc(&m).unwrap();
            assert!(log2_ceil(rank as u64) <= cc);
            assert!(cc as u64 <= rank as u64);
            assert!(rank_bound_holds(cc, rank as u64));
        }
    }
}
