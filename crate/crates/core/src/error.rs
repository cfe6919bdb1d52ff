use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("|sin(theta)| = {0} exceeds 1")]
    SinThetaOutOfRange(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid too coarse: sample spacing {spacing} aliases abscissa {abscissa} (limit {limit})")]
    GridTooCoarse { spacing: f64, abscissa: f64, limit: f64 },

    #[error("sampled input has not decayed at the grid edges (edge/peak = {ratio:e})")]
    NotDecayed { ratio: f64 },

    #[error("quadrature did not converge: last refinement changed the result by {change:e} (tolerance {tolerance:e})")]
    NonConvergence { change: f64, tolerance: f64 },

    #[error("delay is not identifiable at tau = {tau}: fisher information {fisher:e}")]
    NonIdentifiable { tau: f64, fisher: f64 },

    #[error("coincidence probability {probability} at tau = {tau} is outside (0, 1)")]
    DegenerateProbability { tau: f64, probability: f64 },

    #[error("degenerate regression: {0}")]
    DegenerateFit(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
