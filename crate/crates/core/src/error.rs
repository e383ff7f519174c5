use thiserror::Error;

use crate::netlang::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("transient circuit not evaluable: theta placeholder for automaton {0}")]
    TransientCircuit(usize),

    #[error("automaton index {index} out of range for a network of {size} automata")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("configuration of length {got} does not match a network of {expected} automata")]
    ConfigurationLength { got: usize, expected: usize },

    #[error("invalid configuration `{0}`: expected a word over {{0,1}} of at most 64 letters")]
    InvalidConfiguration(String),

    #[error("networks are limited to {max} automata, got {got}")]
    TooManyAutomata { got: usize, max: usize },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("empty schedule")]
    EmptySchedule,

    #[error("empty block in schedule")]
    EmptyBlock,

    #[error("schedule is not block-sequential")]
    NotBlockSequential,

    #[error("schedule is defined over {schedule} automata but the network has {network}")]
    ScheduleSize { schedule: usize, network: usize },

    #[error(
        "influence check too large: circuit support of {support} inputs exceeds the cap of {cap}"
    )]
    SupportTooLarge { support: usize, cap: usize },

    #[error("enumeration too large: {n} automata exceeds the cap of {cap}")]
    EnumerationTooLarge { n: usize, cap: usize },

    #[error("unsigned edge {from} -> {to}: dependence is not monotone")]
    UnsignedEdge { from: usize, to: usize },

    #[error("{from} does not influence {to}")]
    NoEdge { from: usize, to: usize },

    #[error("no theta-free circuit left to substitute; theta dependencies are cyclic")]
    ThetaDeadlock,

    #[error("merge precondition violated: f_{removed} is not {map} of f_{kept}")]
    MergePrecondition {
        removed: usize,
        kept: usize,
        map: crate::reduce::UnaryMap,
    },

    #[error("network is not a tangential cycle")]
    NotTangential,

    #[error("invalid cycle specification: {0}")]
    InvalidSpec(String),

    #[error("reduction leaves a cycle of size < 1")]
    DegenerateReduction,
}

/// Coarse failure classes, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    CapExceeded,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::InvalidConfiguration(_) => ErrorClass::Parse,
            Error::SupportTooLarge { .. } | Error::EnumerationTooLarge { .. } => {
                ErrorClass::CapExceeded
            }
            _ => ErrorClass::Precondition,
        }
    }
}
