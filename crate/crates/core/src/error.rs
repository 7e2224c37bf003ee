use thiserror::Error;

use crate::scalar::Variable;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable {var} is not declared for chart (m = {m}, n = {n})")]
    UndeclaredVariable { var: Variable, m: usize, n: usize },

    #[error("cannot differentiate with respect to {0}")]
    NotDifferentiable(Variable),

    #[error("no numeric binding for variable {0}")]
    MissingBinding(Variable),

    #[error("chart mismatch: (m = {left_m}, n = {left_n}) vs (m = {right_m}, n = {right_n})")]
    ChartMismatch {
        left_m: usize,
        left_n: usize,
        right_m: usize,
        right_n: usize,
    },

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("matrix is not special orthogonal: {0}")]
    NotSpecialOrthogonal(String),

    #[error("{what} is not skew at entry ({i}, {j}): {detail}")]
    NotSkew {
        what: &'static str,
        i: usize,
        j: usize,
        detail: String,
    },

    #[error("omega is not closed: d(omega) contains {term}")]
    NotClosed { term: String },

    #[error("{what} is not a base form: {reason}")]
    NotBaseForm { what: String, reason: String },

    #[error("divergent fiber integral: term {term} carries all dy but no Gaussian weight")]
    DivergentIntegral { term: String },

    #[error(
        "unsupported Gaussian weight {weight} in fiber integral (only weight 1 has a moment table)"
    )]
    UnsupportedWeight { weight: u32 },

    #[error("malformed A: {0}")]
    MalformedA(String),

    #[error("exp(-A) did not terminate within {0} wedge powers")]
    ExpDidNotTerminate(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
