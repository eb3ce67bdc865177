use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("number of qubits {0} is outside 1..={max}", max = crate::state::MAX_QUBITS)]
    QubitCount(usize),

    #[error("amplitude count {0} is not a power of two")]
    AmplitudeCount(usize),

    #[error("basis index {index} out of range for {num_qubits} qubits")]
    BasisIndex { index: usize, num_qubits: usize },

    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    QubitIndex { qubit: usize, num_qubits: usize },

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("direction ({0}, {1}, {2}) is not a unit vector")]
    NotUnit(f64, f64, f64),

    #[error("matrix is not unitary: deviation {0:e}")]
    NotUnitary(f64),

    #[error("pair correlation needs two distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("expected {expected} directions, got {got}")]
    DirectionCount { expected: usize, got: usize },

    #[error("matrix is not symmetric: deviation {0:e}")]
    Asymmetric(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed state file: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that describe an invalid quantum state rather than
    /// malformed input.
    pub fn is_invalid_state(&self) -> bool {
        matches!(self, Error::NotNormalized(_))
    }
}
