use thiserror::Error;

/// Errors produced by the nzflow library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The graph has cut-edges, so no nowhere-zero flow exists.
    #[error("graph has bridges {0:?}; no nowhere-zero flow exists")]
    Bridge(Vec<usize>),

    #[error("graph is disconnected")]
    Disconnected,

    /// Invalid optimizer or search configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("invalid flow: {0}")]
    InvalidFlow(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("search budget of {budget} node expansions exhausted")]
    Timeout { budget: u64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short stable tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Schema(_) => "schema",
            Error::Domain(_) => "domain",
            Error::Bridge(_) => "bridge",
            Error::Disconnected => "disconnected",
            Error::Config(_) => "config",
            Error::Shape(_) => "shape",
            Error::Data(_) => "data",
            Error::InvalidFlow(_) => "invalid-flow",
            Error::InvalidTriangulation(_) => "invalid-triangulation",
            Error::Timeout { .. } => "timeout",
            Error::Internal(_) => "internal",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
