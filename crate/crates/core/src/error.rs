use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge subset has length {got}, graph has {expected} edges")]
    SubsetLength { expected: usize, got: usize },

    #[error("probability vector has length {got}, graph has {expected} edges")]
    ProbsLength { expected: usize, got: usize },

    #[error("{what} = {value} is outside [0, 1]")]
    ProbabilityOutOfRange { what: &'static str, value: f64 },

    #[error("graph has {edges} edges, too large for exact enumeration (cap {cap})")]
    TooLargeForEnumeration { edges: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("divergent: {0}")]
    Divergent(String),

    #[error("distribution has zero mean degree")]
    ZeroMean,

    #[error("no giant component possible: <k^2> = {second} <= <k> = {mean}")]
    NoGiantComponent { mean: f64, second: f64 },

    #[error("fixed-point iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("reliability curve does not cross p_c = {p_c} before horizon t = {horizon}")]
    NoCrossing { p_c: f64, horizon: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
