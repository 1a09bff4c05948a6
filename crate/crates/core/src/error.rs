use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("layout mismatch: expected {expected} amplitudes, got {actual}")]
    Layout { expected: usize, actual: usize },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("unsupported density matrix dimension {0} (expected 2 or 4)")]
    Dimension(usize),

    #[error("trace deviates from 1 by {0:e}")]
    Trace(f64),

    #[error("eigenvalue {0:e} below the round-off tolerance; the state is corrupted")]
    NegativeEigenvalue(f64),

    #[error("photon cutoff {required} exceeds the hard cap {cap}")]
    CutoffCap { required: usize, cap: usize },

    #[error(
        "initial state has weight {weight:e} on the top two Fock levels of cutoff {n_max}; \
         use a larger cutoff"
    )]
    CutoffOverflow { n_max: usize, weight: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
