use thiserror::Error;

/// Everything that can go wrong while building or evaluating discs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid boundary grid: {0}")]
    Grid(String),
    #[error("invalid atomic measure: {0}")]
    Measure(String),
    #[error("invalid Blaschke data: {0}")]
    Blaschke(String),
    #[error("invalid outer function: {0}")]
    Outer(String),
    #[error("invalid arc: {0}")]
    Arc(String),
    #[error("point {0} is not in the open unit disc")]
    OutsideDisc(num_complex::Complex64),
    #[error("invalid disc: {0}")]
    Disc(String),
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("invalid gluing spec: {0}")]
    Gluing(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no certificate: {0}")]
    NoCertificate(String),
    #[error("oracle failed: {0}")]
    Oracle(String),
    /// Malformed input, located by a field path.
    #[error("invalid input at {path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
