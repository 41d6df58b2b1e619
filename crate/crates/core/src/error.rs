use thiserror::Error;

use crate::measure::Measure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{0} requires a simple graph (parallel edges present)")]
    NotSimple(&'static str),

    #[error("measure {0} is undefined on graphs with parallel edges")]
    MeasureNeedsSimple(Measure),

    #[error("representative {0} is not a member of the contracted set")]
    RepresentativeNotInSet(usize),

    #[error("source and sink must differ (both are {0})")]
    SameTerminals(usize),

    #[error("no edge between {0} and {1}")]
    NoSuchEdge(usize, usize),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid satellite instance: {0}")]
    InvalidInstance(String),

    #[error("solver handles measure {expected}, got {got}")]
    WrongMeasure { expected: Measure, got: Measure },

    #[error("enumeration limit of {0} candidates exceeded")]
    LimitExceeded(u64),

    #[error("oracle budget exceeded: {0}")]
    OracleBudget(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed solution file: {0}")]
    Solution(String),

    #[error("base graph is not regular")]
    NotRegular,

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
}
