use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group mismatch: {0:?} vs {1:?}")]
    GroupMismatch(Vec<usize>, Vec<usize>),

    #[error("unknown variable `{var}` for a group with {factors} cyclic factor(s)")]
    UnknownVariable { var: String, factors: usize },

    #[error("malformed polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("span containment violated: {0}")]
    Containment(String),

    #[error("code has no logical qubits (k = 0)")]
    NoLogicalQubits,

    #[error("row index q = {q} out of range 1..={max}")]
    RowOutOfRange { q: usize, max: usize },

    #[error("unknown code `{0}`")]
    UnknownCode(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("broken chain map: {0}")]
    BrokenChainMap(String),

    #[error("logical map is not injective (rank {rank} < {k_source})")]
    NotInjective { rank: usize, k_source: usize },

    #[error("CCZ tensor is not valid on cohomology: {0}")]
    InvalidCcz(String),

    #[error("nondeterministic detector {0}")]
    NondeterministicDetector(usize),

    #[error("nondeterministic observable {0}")]
    NondeterministicObservable(usize),

    #[error("meta-decoding failed: repaired syndrome is not in the image of Hz")]
    MetaDecodingFailed,

    #[error("circuit error: {0}")]
    Circuit(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("format error: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
