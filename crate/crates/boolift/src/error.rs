use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed function spec: {0}")]
    BadSpec(String),

    #[error("bad parameter: {0}")]
    BadParams(String),

    #[error("arity {arity} exceeds cap {cap}")]
    ArityTooLarge { arity: u32, cap: u32 },

    #[error("input {input:#x} is outside the function's domain")]
    UndefinedInput { input: u32 },

    #[error("{op} requires a total function; this one is partial")]
    PartialUnsupported { op: &'static str },

    #[error("function is not symmetric")]
    NotSymmetric,

    #[error("function is constant; the requested measure is undefined")]
    ConstantFunction,

    #[error("{what} needs {needed} units but the cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },

    #[error("no small plan for n={n}, k={k} (k >= n/2); fall back to the trivial n-query basis")]
    NoSmallPlan { n: u32, k: u32 },

    #[error("sampling failed the separating check {attempts} times; giving up")]
    SamplingExhausted { attempts: u32 },

    #[error("set {mask:#x} is not in the support")]
    NotInSupport { mask: u32 },

    #[error("comparison is too close to decide with the built-in bounds: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Process exit code the CLI maps this error to (2 usage, 3 cap).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ArityTooLarge { .. } | Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
