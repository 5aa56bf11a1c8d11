//! Error type shared by the library.

use thiserror::Error;

/// Why a gnomon transformation is impossible for the requested parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformObstacle {
    /// The requested thickness does not divide the area.
    NonDivisor,
    /// area/thickness − thickness is odd, so the base side would not be an integer.
    Parity,
    /// area/thickness < thickness, so the base side would be negative.
    NegativeBase,
}

impl std::fmt::Display for TransformObstacle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformObstacle::NonDivisor => write!(f, "thickness does not divide area"),
            TransformObstacle::Parity => write!(f, "area/thickness - thickness is odd"),
            TransformObstacle::NegativeBase => write!(f, "area/thickness is smaller than thickness"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates the operation's preconditions.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// No gnomon with the requested (area, thickness) exists.
    #[error("no gnomon of area {area} with thickness {thickness}: {obstacle}")]
    NotRepresentable {
        area: u64,
        thickness: u64,
        obstacle: TransformObstacle,
    },

    /// A checkpoint file failed validation; the scan refuses to resume from it.
    #[error("corrupted checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
