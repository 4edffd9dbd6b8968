use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("vertices `{0}` and `{1}` share a position")]
    DuplicatePoint(String, String),
    #[error("{vertices} vertices but {coords} coordinates")]
    CoordinateCount { vertices: usize, coords: usize },
    #[error("drawing is not in general position: {}", .0.join("; "))]
    GeneralPosition(Vec<String>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("isolated vertices are not allowed here: {}", .0.join(", "))]
    IsolatedVertices(Vec<String>),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("invalid thickness coloring: {0}")]
    InvalidColoring(String),
    #[error("certificate construction failed: {0}")]
    Certificate(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("none of {0} random placements was in general position")]
    NoValidPlacement(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
