use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` names undeclared vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("invalid rotation at vertex `{vertex}`: {reason}")]
    InvalidRotation { vertex: String, reason: String },
    #[error("graph is not a bunch of grapes (topological circumference {0})")]
    NotAGrape(usize),
    #[error("graph has no essential vertex")]
    NoEssentialVertex,
    #[error("graph has a bivalent vertex `{0}`; smooth it first")]
    BivalentVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid root ({vertex}, {edge}): {reason}")]
    InvalidRoot {
        vertex: String,
        edge: String,
        reason: String,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degenerate elementary graph ({0}, {1}) has no essential vertex")]
    DegenerateGraph(usize, usize),
    #[error("homology has torsion {torsion:?} in degree {degree}, weight {weight}")]
    TorsionPresent {
        degree: usize,
        weight: usize,
        torsion: Vec<String>,
    },
    #[error("graph parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
