use thiserror::Error;

/// Errors produced by parsing, validation, solvers and reductions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),

    #[error("vertex {0} has no color")]
    MissingColor(usize),

    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("color {color} out of range (color count {count})")]
    ColorOutOfRange { color: usize, count: usize },

    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("component {} is not colorful", fmt_block(.0))]
    Infeasible(Vec<usize>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid formula: {0}")]
    Formula(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn fmt_block(block: &[usize]) -> String {
    let inner: Vec<String> = block.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
