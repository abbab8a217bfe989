use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("coloring covers {got} vertices, graph has {expected}")]
    PartialColoring { expected: usize, got: usize },
    #[error("color ids must be positive (vertex {0} has color 0)")]
    ZeroColor(usize),
    #[error("coloring is not proper: edge {0}-{1} is monochromatic")]
    ImproperColoring(usize, usize),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("target set unreachable from vertex {0}")]
    Unreachable(usize),
    #[error("graph on {vertex_count} vertices exceeds the exact-solve cap of {cap}")]
    TooLargeForExact { vertex_count: usize, cap: usize },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("graph contains a triangle {0}-{1}-{2}")]
    NotTriangleFree(usize, usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("io: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
