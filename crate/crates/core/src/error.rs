use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different scalar modes")]
    ModeMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("infinite product diverges for |q| >= 1")]
    NonConvergent,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("elements belong to different algebras or truncations")]
    AlgebraMismatch,
    #[error("series argument has a nonzero constant term and the outer series is not polynomial")]
    NonNilpotentArgument,
    #[error("constant term is not invertible")]
    NonUnitConstantTerm,
    #[error("substitution violates relation: {0}")]
    RelationViolation(String),
    #[error("missing lattice sample at {0}")]
    MissingSample(String),
    #[error("lattice tail did not fall below tolerance within the window")]
    TailNotConverged,
    #[error("upper lattice tail diverges")]
    DivergentUpperTail,
    #[error("evaluation too close to a pole of the product form")]
    PoleHit,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
