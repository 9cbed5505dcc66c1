use thiserror::Error;

use crate::graph::ValidationReport;
use crate::label::{EdgeKey, VertexLabel};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid fuzzy graph: {0}")]
    Invalid(ValidationReport),

    #[error("invalid membership value {0:?}")]
    BadMembership(String),

    #[error("membership {0} outside [0, 1]")]
    MembershipOutOfRange(String),

    #[error("membership level must lie in (0, 1], got {0}")]
    BadLevel(String),

    #[error("invalid vertex label {0:?}")]
    BadLabel(String),

    #[error("self-loop at {0}")]
    SelfLoop(VertexLabel),

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexLabel),

    #[error("edge {0} is not present")]
    EdgeNotPresent(EdgeKey),

    #[error("edge {0} has both endpoints merged into one vertex")]
    CollapsedEdge(EdgeKey),

    #[error("merged label {0} collides with an existing vertex")]
    LabelCollision(VertexLabel),

    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexLabel),

    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeKey),

    #[error("{what}: size {actual} exceeds bound {limit}")]
    SizeBound {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Resource-bound refusals, as opposed to malformed input.
    pub fn is_bound_refusal(&self) -> bool {
        matches!(self, Error::SizeBound { .. })
    }
}
