use thiserror::Error;

/// Errors produced by the conversion and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("normalization 1-Σ|ψ|² = {deviation:.2e} exceeds {tolerance:.0e}")]
    NotNormalized { deviation: f64, tolerance: f64 },

    #[error("constellation for 2S = {two_s} needs {two_s} stars, found {found}")]
    StarCount { two_s: u32, found: usize },

    #[error("state vector is zero")]
    ZeroState,

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("constellation has a star at the south pole and automatic handling is disabled")]
    StarAtInfinity,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownState(String),

    #[error("king `{name}` declares anticoherence order {order}, but ρ_{k}² = {value:e} exceeds {tolerance:e}")]
    AnticoherenceViolation {
        name: String,
        order: u32,
        k: u32,
        value: f64,
        tolerance: f64,
    },

    #[error("report mixes spins 2S = {0} and 2S = {1}")]
    MixedSpins(u32, u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
