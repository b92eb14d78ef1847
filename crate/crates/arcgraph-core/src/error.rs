use thiserror::Error;

/// Errors raised across the crate.  Variant names follow the operation
/// contracts they belong to.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArcGraphError {
    #[error("surface must have at least one boundary label")]
    EmptyBoundary,
    #[error("duplicate boundary label `{0}`")]
    DuplicateLabel(String),
    #[error("surface has non-negative Euler characteristic ({0}); no ideal triangulation")]
    NonHyperbolicSurface(i64),
    #[error("edge {edge} is not flippable: {reason}")]
    Unflippable { edge: usize, reason: String },
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("arc frames disagree ({0} vs {1})")]
    FrameMismatch(u64, u64),
    #[error("unknown boundary label `{0}`")]
    UnknownLabel(String),
    #[error("prescribing graph vertices do not match surface boundary labels")]
    LabelMismatch,
    #[error("endpoints of the two arcs share no edge of the prescribing graph")]
    NoSharedEdge,
    #[error("standing hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no surgery case applied (bug): {0}")]
    CaseExhausted(String),
    #[error("enumeration bound too large: {0}")]
    BoundTooLargeForMemory(String),
    #[error("vertex not contained in the ball")]
    VertexNotInBall,
    #[error("prescribing graph has no loop at `{0}`")]
    NoSuchLoop(String),
    #[error("sampled component is disconnected")]
    DisconnectedSample,
    #[error("audit family escaped the enumerated ball: {0}")]
    FamilyOutOfBall(String),
    #[error("subgraph has no edges")]
    EmptySubgraph,
    #[error("invalid subsurface partition: {0}")]
    InvalidPartition(String),
    #[error("orbit escaped the enumerable ball at power {0}")]
    OrbitEscapesBall(usize),
    #[error("tightening monovariant violated (bug): {0}")]
    InternalNonTermination(String),
    #[error("internal invariant violated (bug): {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, ArcGraphError>;
