//! Exact computation on Boolean functions: AND-basis (Möbius) and parity
//! (Fourier) spectra, pattern complexity, non-adaptive decision-tree models,
//! one-way communication of gadget-composed functions, and q-ary intersecting
//! families. Everything outside a few explicitly real-valued bounds is integer
//! arithmetic; nothing is sampled unless a seed is passed in.
//!
//! The library is the product; the `examples/` directory is the front door.
//! Each example is a small, runnable tour of one capability:
//!
//! ```text
//! cargo run --release --example spectra            # Möbius/Fourier spectra of named functions
//! cargo run --release --example odd_max_bit        # the OMB function end to end
//! cargo run --release --example pattern_growth     # pattern complexity and its growth trace
//! cargo run --release --example compose_rank       # communication matrices, one-way cc, exact rank
//! cargo run --release --example shattering         # VC witnesses for IP-composed functions
//! cargo run --release --example lift_extraction    # message-coloring audit of a lifted function
//! cargo run --release --example symmetric_plan     # randomized AND-query plans for symmetric functions
//! cargo run --release --example intersecting_families
//! ```
//!
//! A thin `boolift` binary exposes the same operations as subcommands
//! (`eval`, `analyze`, `compose`, `query`, `symmetric-naadt`, `families`,
//! `verify`); run `boolift --help` for the grammar.

pub mod bits;
pub mod error;

pub mod bf;
pub mod comm;
pub mod families;
pub mod patterns;
pub mod query;
pub mod transforms;

pub mod cli;
pub mod report;
pub mod spec;
pub mod suite;

pub use bf::{BooleanFunction, ComposedFunction, Gadget};
pub use error::{Error, Result};

/// Resource limits for the expensive operations. Every limit is data, not a
/// constant: the CLI maps `--cap-*` flags here and tests shrink or grow them.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest arity accepted by the core constructors.
    pub max_arity: u32,
    /// Largest per-side arity (`n * b`) accepted when composing with a gadget.
    pub max_composed_arity: u32,
    /// Communication-matrix size limit in cells (rows x columns).
    pub matrix_cells: u64,
    /// Largest `min(rows, cols)` fed to exact rank elimination.
    pub rank_dim: usize,
    /// Generic enumeration budget (pattern scans, subset searches).
    pub work: u64,
    /// Family-enumeration budget (`q^n` strings).
    pub enum_cells: u64,
    /// Most distinct row classes a partial matrix may have before coloring.
    pub row_classes: usize,
    /// Arity guard for the exact AND-decision-tree search.
    pub naadt_arity: u32,
    /// Cap on `2^{alice_bits}` for the gadget cross-completeness search.
    pub gadget_alice_inputs: u64,
    /// Resampling attempts before a randomized construction gives up.
    pub sample_attempts: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_arity: 24,
            max_composed_arity: 22,
            matrix_cells: 1 << 28,
            rank_dim: 4096,
            work: 1 << 32,
            enum_cells: 1 << 24,
            row_classes: 256,
            naadt_arity: 5,
            gadget_alice_inputs: 64,
            sample_attempts: 64,
        }
    }
}
