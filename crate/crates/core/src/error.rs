use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on distinct charts ({left}) and ({right})")]
    ChartMismatch { left: String, right: String },

    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),

    #[error("no value assigned to coordinate `{0}`")]
    MissingAssignment(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("fiber coordinate `{0}` collides with an existing name")]
    NameCollision(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("paracomplex pairing: {0}")]
    Pairing(String),

    #[error("horizontal lifts need a connection")]
    MissingConnection,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("metric is not symmetric at ({0}, {1})")]
    NonSymmetricMetric(usize, usize),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub(crate) fn chart_mismatch(left: &crate::Chart, right: &crate::Chart) -> Error {
    Error::ChartMismatch { left: left.names().join(" "), right: right.names().join(" ") }
}
