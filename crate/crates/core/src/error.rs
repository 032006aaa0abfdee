use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid word {text:?}: {reason}")]
    InvalidWord { text: String, reason: String },

    #[error("rank {rank} out of range (there are {total} subsets)")]
    RankOutOfRange { rank: String, total: String },

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("not universal: {0}")]
    NotUniversal(String),

    #[error("{formula} does not apply to n={n}, k={k}, s={s}: {reason}")]
    NotApplicable {
        formula: &'static str,
        n: u32,
        k: u32,
        s: u64,
        reason: &'static str,
    },

    #[error("{tail} -> {head} is not an edge of the de Bruijn graph")]
    NotAnEdge { tail: String, head: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
