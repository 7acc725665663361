use thiserror::Error;

use crate::circuit::Check;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("flux bias {flux} Φ₀ is at or beyond half a flux quantum; the SQUID Josephson energy vanishes")]
    FluxAtHalfQuantum { flux: f64 },

    #[error("junction capacitance is zero; plasma frequency is undefined")]
    ZeroCapacitance,

    #[error("resonator B mode index must be >= 1")]
    IndexZero,

    #[error("position {x0} m lies outside [0, {length}] m")]
    PositionOutOfRange { x0: f64, length: f64 },

    #[error("operation requires the {expected} coupling geometry")]
    WrongGeometryVariant { expected: &'static str },

    #[error("degenerate coupling loop: need d2 > d1 (got d1 = {d1}, d2 = {d2})")]
    DegenerateLoop { d1: f64, d2: f64 },

    #[error("adiabatic validity violated: {}", failed_names(.0))]
    ValidityViolation(Vec<Check>),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not hermitian (max |H - H†| = {defect:e}, scale {scale:e})")]
    NotHermitian { defect: f64, scale: f64 },

    #[error("total Hilbert-space dimension {dim} exceeds the cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("|alpha|^2 = {norm_sqr} is too large for truncation dimension {dim}")]
    AlphaTooLargeForDim { norm_sqr: f64, dim: usize },

    #[error("zero detuning: cannot derive the displacement from eps_A / Delta_A")]
    ZeroDetuning,

    #[error("topology mismatch: {0}")]
    TopologyMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn failed_names(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| c.name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}
