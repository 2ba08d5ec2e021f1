use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has {0} vertices; at most 2^31 - 1 are addressable")]
    TooManyVertices(usize),

    #[error("edge ({0}, {1}) references a vertex outside [0, n)")]
    VertexOutOfRange(u64, u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error(
        "budget of {budget} bytes is infeasible: edge ({u}, {v}) alone needs {required} bytes \
         including per-vertex state"
    )]
    InfeasibleBudget {
        u: u32,
        v: u32,
        required: u64,
        budget: u64,
    },

    #[error("partition {partition}: {source}")]
    Spill {
        partition: usize,
        #[source]
        source: io::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("bad binary format: {0}")]
    Format(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
