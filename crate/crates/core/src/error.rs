use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown {kind} `{name}`; valid names: {valid}")]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: &'static str,
    },

    #[error("malformed {kind} spec `{spec}`: {reason}")]
    Malformed {
        kind: &'static str,
        spec: String,
        reason: String,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("data `{data}` cannot be used on domain `{domain}`")]
    DomainMismatch { data: String, domain: String },

    #[error("exhaustion level {level} is empty: no level-{level} cell fits inside `{domain}`")]
    EmptyExhaustion { level: u32, domain: String },

    #[error("ill-posed node mask: free node {node} has an exterior neighbour")]
    IllPosedMask { node: usize },

    #[error("conjugate gradients did not converge after {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("grid mismatch between fields")]
    GridMismatch,

    #[error("extension evaluates to a non-finite value at ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("point ({x}, {y}) is not interior to the domain")]
    NotInterior { x: f64, y: f64 },

    #[error("grid cannot resolve the problem: {0}")]
    Resolution(String),

    #[error("level {level} failed: {source}")]
    Level {
        level: u32,
        #[source]
        source: Box<Error>,
    },
}
