use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conditioning on a null event")]
    NullConditioningEvent,
    #[error("objects belong to different state spaces")]
    MixedSpaces,
    #[error("invalid state space: {0}")]
    InvalidSpace(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("strategy space too large: {count} exceeds cap {cap}")]
    StrategySpaceTooLarge { count: BigUint, cap: u64 },
    #[error("operation requires action-kind utilities")]
    WrongUtilityKind,
    #[error("operation requires state-independent utilities")]
    StateDependentUtilities,
    #[error("players do not share a common prior")]
    NoCommonPrior,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumeration cap exceeded: {total} coherent systems exceed cap {cap}")]
    EnumerationCapExceeded { total: BigUint, cap: u64 },
    #[error("scenario space of size {size} could not be exhausted within a budget of {cap} search nodes")]
    ScenarioSpaceTooLarge { size: BigUint, cap: u64 },
    #[error("no player has imperfect information")]
    NotImperfectInformation,
    #[error("wrong player count: {0}")]
    WrongPlayerCount(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error at {field}: {message}")]
    Validation { field: String, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NullConditioningEvent => "null_conditioning_event",
            Error::MixedSpaces => "mixed_spaces",
            Error::InvalidSpace(_) => "invalid_space",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::InvalidMeasure(_) => "invalid_measure",
            Error::StrategySpaceTooLarge { .. } => "strategy_space_too_large",
            Error::WrongUtilityKind => "wrong_utility_kind",
            Error::StateDependentUtilities => "state_dependent_utilities",
            Error::NoCommonPrior => "no_common_prior",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::EnumerationCapExceeded { .. } => "enumeration_cap_exceeded",
            Error::ScenarioSpaceTooLarge { .. } => "scenario_space_too_large",
            Error::NotImperfectInformation => "not_imperfect_information",
            Error::WrongPlayerCount(_) => "wrong_player_count",
            Error::UnknownExample(_) => "unknown_example",
            Error::Parse(_) => "parse_error",
            Error::Validation { .. } => "validation_error",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io_error",
        }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
