use thiserror::Error;

use crate::symbolic::SymbolSeq;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {value} out of range for {what}")]
    ParameterOutOfRange { what: String, value: String },
    #[error("point {0} lies outside the map's domain")]
    OutOfDomain(String),
    #[error("map is not symmetric unimodal: {0}")]
    NotSymmetric(String),
    #[error("not a degree-one circle map: {0}")]
    NotDegreeOne(String),
    #[error("precision exhausted: interval comparison stayed ambiguous")]
    PrecisionExhausted,
    #[error("depth exceeded: {0}")]
    DepthExceeded(String),
    #[error("invalid cutting sequence: {0}")]
    InvalidCuttingSequence(String),
    #[error("no tested offset reproduces a self-consistent kneading sequence")]
    OffsetMismatch,
    #[error("target {0} outside the admissible range")]
    TargetOutOfRange(String),
    #[error("rotation orbit hits a partition boundary at position {position}")]
    BoundaryHit {
        position: usize,
        lower: SymbolSeq,
        upper: SymbolSeq,
    },
    #[error("word too short: need {need} symbols, got {got}")]
    InsufficientLength { need: usize, got: usize },
    #[error("lap budget exceeded ({0} laps)")]
    LapBudgetExceeded(usize),
    #[error("no admissible forcing witness: {0}")]
    NoAdmissibleWitness(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
