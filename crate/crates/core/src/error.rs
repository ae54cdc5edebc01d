use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("outcome dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state count mismatch: expected {expected}, found {found}")]
    StateMismatch { expected: usize, found: usize },

    #[error("mixture weight {0} is outside [0, 1]")]
    WeightOutOfRange(String),

    #[error("utility is constant (all weights are zero)")]
    ConstantUtility,

    #[error("outcome must have at least one coordinate")]
    EmptyOutcome,

    #[error("duplicate state label `{0}`")]
    DuplicateState(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("pessimistic and optimistic scenario sets are disjoint")]
    DisjointScenarios,

    #[error("utilities are not positive affine transformations of each other")]
    UtilityMismatch,

    #[error("unsupported planner criterion: {0}")]
    UnsupportedPlanner(&'static str),

    #[error("probe evaluations are inconsistent with any alpha-MEU extension: {0}")]
    InconsistentProbes(String),

    #[error("recovered weight {0} is outside [0, 1]; the evaluations are not monotone")]
    RecoveredWeightOutOfRange(String),

    #[error("invalid mechanism: {0}")]
    InvalidMechanism(String),
}

pub type Result<T> = std::result::Result<T, Error>;
