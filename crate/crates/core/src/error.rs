use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("jet order {requested} exceeds the supported maximum {max}")]
    Order { requested: usize, max: usize },

    #[error("multi-index ({i},{j}) lies beyond the truncation order {order}")]
    MultiIndex { i: usize, j: usize, order: usize },

    #[error("{op}: argument {value} is outside the admissible domain")]
    Domain { op: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no solution family is available for integration constant C = {0}")]
    NoSolutionFamily(f64),

    #[error("point ({x}, {y}) lies on the singular set")]
    Singular { x: f64, y: f64 },

    #[error("non-finite sample encountered at ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("quadrature path from ({from_x}, {from_y}) to ({to_x}, {to_y}) meets the singular set")]
    Path {
        from_x: f64,
        from_y: f64,
        to_x: f64,
        to_y: f64,
    },

    #[error("quadrature did not converge: estimated error {estimate:e} after {intervals} intervals")]
    Quadrature { estimate: f64, intervals: usize },

    #[error("model construction failed: {0}")]
    Construction(String),

    #[error("unknown catalog model `{0}`")]
    UnknownModel(String),

    #[error("no real zero-energy motion at ({x}, {y}): U = {potential}")]
    NoZeroEnergyMotion { x: f64, y: f64, potential: f64 },

    #[error("every sample point was singular")]
    AllSingular,

    #[error("expression parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
