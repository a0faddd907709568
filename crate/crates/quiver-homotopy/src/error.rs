use thiserror::Error;

use crate::quiver::{ArrowId, VertexId};

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("quiver has a loop (arrow {0})")]
    LoopPresent(ArrowId),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(VertexId),
    #[error("arrow {0} does not exist")]
    UnknownArrow(ArrowId),
    #[error("walks are not composable: {0}")]
    NotComposable(String),
    #[error("walk is not closed")]
    NotClosed,
    #[error("2-cycle ({0}, {1}) lies in the homotopy, so the homotopy is not reduced")]
    NotReduced(ArrowId, ArrowId),
    #[error("membership could not be decided: {0}")]
    DecisionUnknown(String),
    #[error("invalid covering: {0}")]
    InvalidCovering(String),
    #[error("covering is not weakly admissible: {0}")]
    NotWeaklyAdmissible(String),
    #[error("covering is not regular")]
    NotRegular,
    #[error("permutation action is not transitive: {0}")]
    NonTransitive(String),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("no flip rule applies: {0}")]
    UnknownConfiguration(String),
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("cluster variable is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("cannot evaluate in a semifield: {0}")]
    NotSubtractionFree(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl Error {
    /// `true` for the errors that stem from an undecided membership query.
    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::DecisionUnknown(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
