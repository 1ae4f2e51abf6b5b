use thiserror::Error;

use crate::ring::Elem;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring axiom `{axiom}` violated at ({}, {}, {})", witness.0, witness.1, witness.2)]
    AxiomViolation {
        axiom: &'static str,
        witness: (Elem, Elem, Elem),
    },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("carrier of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("ring is not local: {0}")]
    NotLocal(String),
    #[error("bimodule action axiom violated: {0}")]
    ActionAxiomViolation(String),
    #[error("associativity violated for coordinates ({i},{j},{k},{l}) at entries {witness:?}")]
    AssociativityViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        witness: (u32, u32, u32),
    },
    #[error("no unital ring homomorphism {0}")]
    NoHomomorphism(String),
    #[error("element {0} is not an idempotent")]
    NotIdempotent(Elem),
    #[error("subset is not a submodule")]
    NotSubmodule,
    #[error("module is not semisimple (M·J ≠ 0)")]
    NotSemisimple,
    #[error("module is not simple")]
    NotSimple,
    #[error("simple module type is ambiguous ({0} candidates)")]
    AmbiguousType(usize),
    #[error("component of size {size} is not a power of {base}")]
    NonIntegralLength { size: usize, base: usize },
    #[error("top profile inconsistent: {0}")]
    ProfileInconsistent(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: cannot resolve `{name}`: {message}")]
    Resolution {
        name: String,
        line: usize,
        col: usize,
        message: String,
    },
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Errors that indicate a broken invariant inside the library rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::AmbiguousType(_)
                | Error::NonIntegralLength { .. }
                | Error::ProfileInconsistent(_)
                | Error::Inconsistent(_)
        )
    }
}
