use thiserror::Error;

/// Errors produced anywhere in the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QeccError {
    #[error("amplitude pair is not normalized: |a|^2 + |b|^2 = {norm_sq}")]
    Normalization { norm_sq: f64 },

    #[error("register of {requested} qubits exceeds the supported maximum of {max}")]
    Size { requested: usize, max: usize },

    #[error("qubit index {index} is out of range for a {n}-qubit register")]
    Index { index: usize, n: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("{0:?} is not a permutation of 1..={1}")]
    InvalidPermutation(Vec<usize>, usize),

    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cannot parse Pauli label {label:?}: {reason}")]
    PauliParse { label: String, reason: String },

    #[error("cannot parse error spec {spec:?}: {reason}")]
    ErrorSpecParse { spec: String, reason: String },

    #[error("unknown code {0:?} (expected bitflip3, phaseflip3, shor9, steane7 or five5)")]
    UnknownCode(String),

    #[error(
        "state is not an eigenstate of generator {generator}; use projective syndrome measurement"
    )]
    NotPauliDiagnosable { generator: usize },

    #[error("decoded qubit 1 is entangled with the ancillas (purity {purity})")]
    EntangledResidual { purity: f64 },

    #[error("no logical Pauli matches the decoded qubit (best overlap {best_overlap})")]
    Unclassifiable { best_overlap: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("all error coefficients are zero")]
    ZeroCoefficients,

    #[error("coefficients are not normalized: sum |c|^2 = {norm_sq}")]
    CoefficientNormalization { norm_sq: f64 },

    #[error("double-error universe is defined for 5, 7 or 9 qubits, got {0}")]
    UnsupportedQubitCount(usize),

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("invalid syndrome {syndrome:?}: {reason}")]
    InvalidSyndrome { syndrome: String, reason: String },

    #[error("operator too large for a dense matrix: {0} qubits")]
    TooLargeForDense(usize),

    #[error("invalid Bloch angle: {0}")]
    InvalidAngle(String),

    #[error("quadrature grid {0}x{1} is below the 32x64 minimum")]
    GridTooSmall(usize, usize),

    #[error("empty error universe")]
    EmptyUniverse,

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, QeccError>;
