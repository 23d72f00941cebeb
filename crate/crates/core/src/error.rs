use std::io;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty graph")]
    EmptyGraph,

    #[error("token {token} out of range for {bound} vertices")]
    TokenOutOfRange { token: u64, bound: usize },

    #[error("vertex {vertex} out of range for {bound} vertices")]
    VertexOutOfRange { vertex: u64, bound: usize },

    #[error("betweenness guard exceeded: {vertices} vertices > {limit}")]
    BetweennessGuard { vertices: usize, limit: usize },

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("empty context window")]
    EmptyContext,

    #[error("divergence: non-finite loss at epoch {epoch}, batch {batch}")]
    Divergence { epoch: usize, batch: usize },

    #[error("format unsupported: {0}")]
    UnsupportedFormat(String),

    #[error("invalid config field `{field}`: {message}")]
    Config { field: &'static str, message: String },

    #[error("unknown walk vertex `{0}`")]
    UnknownVertex(String),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed {what}: {message}")]
    Format { what: &'static str, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn config(field: &'static str, message: impl Into<String>) -> Self {
        Error::Config { field, message: message.into() }
    }

    /// Tag an error with the pipeline stage it came from, unless already tagged.
    pub fn in_stage(self, stage: &'static str) -> Self {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage { stage, source: Box::new(e) },
        }
    }

    /// Innermost error, looking through stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// Process exit code: 2 for data errors, 3 for resource errors.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Io { .. } | Error::BetweennessGuard { .. } => 3,
            Error::Config { .. } => 1,
            _ => 2,
        }
    }
}
