use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}` in carrier")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("carrier mismatch: expected {expected}, found {found}")]
    CarrierMismatch { expected: String, found: String },

    #[error("codomain mismatch: {left} vs {right}")]
    CodomainMismatch { left: String, right: String },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("{what} needs {needed} values, exceeding the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },

    #[error("functor mismatch: `{left}` vs `{right}`")]
    FunctorMismatch { left: String, right: String },

    #[error("malformed value: {0}")]
    MalformedValue(String),

    #[error("not a homomorphism: the square fails at `{0}`")]
    NotHomomorphism(String),

    #[error("coalgebra is not well-founded: `{vertex}` lies on the cycle {}", cycle.join(" -> "))]
    NotWellFounded { vertex: String, cycle: Vec<String> },

    #[error("map is not surjective: `{0}` has no preimage")]
    NotSurjective(String),

    #[error("kernel is not a congruence: `{0}` and `{1}` are merged but their structures differ")]
    IncompatibleKernel(String, String),

    #[error("algebra table is not total: missing `{0}`")]
    NotTotal(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

/// Enumeration bounds shared by every exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible `|F X|` when enumerating functor values.
    pub max_enum: u64,
    /// Largest admissible number of candidate maps (homomorphisms, algebras).
    pub max_maps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: 100_000,
            max_maps: 10_000_000,
        }
    }
}

/// `base^exp` if it stays within `cap`.
pub(crate) fn bounded_pow(base: u64, exp: u64, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap {
            return None;
        }
    }
    if acc > cap {
        None
    } else {
        Some(acc)
    }
}

pub(crate) fn cap_error(what: &'static str, base: u64, exp: u64, cap: u64) -> Error {
    Error::CapExceeded {
        what,
        needed: format!("{base}^{exp}"),
        cap,
    }
}
