use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    ArgumentDomain(String),

    #[error("n = {n} exceeds the partition oracle limit {limit}")]
    PracticalSize { n: usize, limit: usize },

    #[error("series diverged at x = {x} after {terms} terms: {reason}")]
    Divergence { x: f64, terms: usize, reason: String },

    #[error("kernel denominator {value} is not positive at x = {x}")]
    NonPositiveDenominator { x: f64, value: f64 },

    #[error("integrand is not integrable on [0, inf): {0}")]
    NonIntegrable(String),

    #[error("tolerance not met after {subdivisions} subdivisions (estimate {estimate:e}, target {target:e})")]
    ToleranceNotMet {
        subdivisions: usize,
        estimate: f64,
        target: f64,
    },

    #[error("Bromwich integrand does not decay along the contour: {0}")]
    ContourDivergence(String),

    #[error("series has zero constant term and no reciprocal")]
    ZeroConstantTerm,

    #[error("{0}")]
    Parse(String),

    #[error("evaluation error: {0}")]
    Eval(String),
}
