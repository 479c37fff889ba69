use thiserror::Error;

/// Errors raised by the library. Every fallible operation returns one of these.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: no facets")]
    EmptyInput,

    #[error("line {line}: malformed label `{token}`")]
    MalformedLabel { line: usize, token: String },

    #[error("line {line}: vertex `{label}` repeated within one facet")]
    DuplicateVertex { line: usize, label: String },

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("`{0}` is not a face of the complex")]
    NotAFace(String),

    #[error("vertex set is not contained in the complex: `{0}`")]
    NotASubset(String),

    #[error("vertex label `{0}` occurs in both complexes")]
    LabelCollision(String),

    #[error("complex is not pure")]
    NotPure,

    #[error("complex is not a closed pseudomanifold")]
    NotClosedPseudomanifold,

    #[error("negative dimension {0}")]
    NegativeDimension(i64),

    #[error("vertex order does not cover the vertex set: {0}")]
    BadVertexOrder(String),

    #[error("orbit spec: {0}")]
    OrbitSpec(String),

    #[error("permutation `{0}` is not a bijection")]
    NotBijective(String),

    #[error("group closure exceeds {cap} elements")]
    CapExceeded { cap: usize },

    #[error("generator `{0}` is not an automorphism of the complex")]
    NotAnAutomorphism(String),

    #[error("orbit naming: {0}")]
    Naming(String),

    #[error("group action is not pure: {0}")]
    Impure(String),

    #[error("integer elimination exceeded {bits} bits; fall back to a field")]
    Overflow { bits: u64 },

    #[error("unsupported coefficient ring `{0}`")]
    UnsupportedRing(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("move log: {0}")]
    MoveLog(String),

    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),

    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),

    #[error("dataset digest mismatch for `{0}`")]
    DigestMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
