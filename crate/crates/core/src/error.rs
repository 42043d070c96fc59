use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("label {label:?} is outside the declared alphabet {alphabet:?}")]
    LabelOutsideAlphabet { label: String, alphabet: Vec<String> },

    #[error("positive label {0:?} does not occur in the input and no negative label was declared")]
    UnknownPositiveLabel(String),

    #[error("count {name} = {value} is invalid (must be finite and nonnegative)")]
    InvalidCount { name: &'static str, value: f64 },

    #[error("total count is zero")]
    ZeroTotal,

    #[error("count matrix must be square with k >= 2 (got {rows}x{cols})")]
    Shape { rows: usize, cols: usize },

    #[error("{what} = {value} is outside the reachable range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("degenerate denominator: {0}")]
    Degenerate(&'static str),

    #[error("inconsistent index combination: {0}")]
    Inconsistent(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("target entropy is zero (single-class target); NI is undefined")]
    ZeroTargetEntropy,

    #[error("class sizes must satisfy w1 >= w2 > 0 (got w1 = {w1}, w2 = {w2}); use swapped classes explicitly")]
    ClassOrder { w1: f64, w2: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("enumeration cap exceeded: w1 + w2 = {total} > {cap}")]
    CapExceeded { total: u64, cap: u64 },

    #[error("NI is undefined for model {0:?}: target entropy is zero (single-class target)")]
    UndefinedNi(String),

    #[error("envelope violated at {metric} = {x}: NI = {ni} outside [{lower}, {upper}]")]
    EnvelopeViolation {
        metric: &'static str,
        x: f64,
        ni: f64,
        lower: f64,
        upper: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the mathematics of the input rather than
    /// its syntax (e.g. a single-class target).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::ZeroTargetEntropy
                | Error::UndefinedNi(_)
                | Error::Degenerate(_)
                | Error::Inconsistent(_)
                | Error::Infeasible(_)
                | Error::OutOfRange { .. }
                | Error::EnvelopeViolation { .. }
        )
    }
}
