use std::path::PathBuf;

use thiserror::Error;

use crate::config::ConfigError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operation requires a parabolic channel, got {shape}")]
    UnsupportedShape { shape: &'static str },

    #[error("well supports no excited bound level (n_max = {n_max})")]
    DegenerateWell { n_max: i64 },

    #[error("level index {n} out of range 0..={n_max}")]
    LevelIndex { n: usize, n_max: usize },

    #[error("harmonic order {j} invalid (allowed 1..={max})")]
    InvalidHarmonic { j: usize, max: usize },

    #[error("need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("dimension mismatch: entry state has n_max = {entry}, matrix elements have n_max = {matrix}")]
    DimensionMismatch { entry: usize, matrix: usize },

    #[error("no populated level with n >= {j}")]
    EmptyPopulation { j: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
