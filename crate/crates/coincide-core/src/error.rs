use thiserror::Error;

/// Crate-wide error type. Parse errors carry positions for CLI reporting;
/// the remaining variants are computational diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("complex is not pure of a single top dimension")]
    NotPure,

    #[error("not a manifold-like complex: a codimension-1 face lies in {0} top simplices")]
    NotManifoldLike(usize),

    #[error("top-dimensional adjacency graph is not connected")]
    NotConnected,

    #[error(
        "non-orientable complex: no coherent orientation exists, so rational-coefficient \
         duality and fundamental classes are unavailable"
    )]
    NonOrientable,

    #[error("map does not respect the pairs: {0}")]
    PairViolation(String),

    #[error("chain is not a (relative) cycle")]
    NotACycle,

    #[error(
        "duality failure in degree {degree}: cap with the fundamental class is not invertible \
         ({detail}); input is not a rational homology manifold pair"
    )]
    DualityFailure { degree: usize, detail: String },

    #[error(
        "disjointness of f and g over the subcomplex could not be certified; \
         rerun with an explicit waiver to compute the index anyway"
    )]
    DisjointnessUnverified,

    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// CLI exit code class: 2 for parse errors, 3 for computational diagnostics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            _ => 3,
        }
    }
}
