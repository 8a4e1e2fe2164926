use thiserror::Error;

use crate::model::Weighing;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("invalid weighing: {0}")]
    InvalidWeighing(String),
    #[error("coin {coin} out of range for {n} coins")]
    CoinOutOfRange { coin: usize, n: usize },
    #[error("size mismatch: {0} vs {1} coins")]
    SizeMismatch(usize, usize),
    #[error("pan policy violation: {0}")]
    PanPolicyViolation(String),
    #[error("outcome of {0} is not determined by generic weights")]
    UndeterminedOutcome(Weighing),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot split middle-search candidates: {0}")]
    InfeasibleSplit(String),
    #[error("strategy unsound: {0}")]
    StrategyUnsound(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("transcript is inconsistent with every assignment")]
    InconsistentTranscript,
    /// Raised by the step-wise driver when a strategy asks for an outcome
    /// that has not been supplied yet.
    #[error("awaiting outcome of {0}")]
    AwaitingOutcome(Weighing),
}
