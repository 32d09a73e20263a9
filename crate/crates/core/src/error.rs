use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("operator {0} is not Hermitian")]
    NotHermitian(String),

    #[error("generators not commuting ({0},{1})")]
    NotCommuting(usize, usize),

    #[error("dependent generator {0}")]
    DependentGenerator(usize),

    #[error("group contains -identity")]
    ContainsMinusIdentity,

    #[error("expected {expected} generators, found {found}")]
    GeneratorCount { expected: usize, found: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("entropy is not concave in the squared expectation value: {0}")]
    NotConcave(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("not an orthonormal basis: {0}")]
    NotOrthonormal(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
