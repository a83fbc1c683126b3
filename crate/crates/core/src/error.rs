use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// Report-style outcomes (PASS/FAIL, theorem tripwires, precondition
/// failures of the checker operations) are *not* errors; they are returned
/// as typed reports.  `Error` covers malformed inputs and states that the
/// invariants of the library make impossible.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrices live over different fields")]
    FieldMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u32),

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("modules are defined over different algebras")]
    AlgebraMismatch,

    #[error("relation {relation} references generator {index} but the algebra has {generators}")]
    BadWord {
        relation: usize,
        index: usize,
        generators: usize,
    },

    #[error("map is not a module homomorphism ({0})")]
    NotAHomomorphism(String),

    #[error("module point violates relation {relation}")]
    InvalidModule { relation: usize },

    #[error("subspace is not invariant under generator {generator}")]
    NotInvariant { generator: usize },

    #[error("operation `{0}` requires the rational field")]
    UnsupportedField(&'static str),

    #[error("invalid cusp (bi)module: {0}")]
    InvalidCusp(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
