//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..=6")]
    QubitCount(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("gate target {target} out of range for {qubits} qubits")]
    TargetOutOfRange { target: usize, qubits: usize },

    #[error("cnot control and target must be distinct (both {0})")]
    CnotSameQubit(usize),

    #[error("pauli string needs at least one non-identity letter")]
    TrivialPauliString,

    #[error("invalid pauli string: {0}")]
    PauliParse(String),

    #[error("survival probability {0} outside [0, 1]")]
    SurvivalOutOfRange(f64),

    #[error("expectation has non-negligible imaginary part {0:e}")]
    NonRealExpectation(f64),

    #[error("chebyshev argument {0} outside [-1, 1] beyond the guard band")]
    ChebyshevDomain(f64),

    #[error("target expectation {0} must lie strictly inside (-1, 1)")]
    DegeneratePi(f64),

    #[error("invalid likelihood parameters: {0}")]
    LikelihoodParams(String),

    #[error("outcome value {0} is not +1 or -1")]
    InvalidOutcome(i8),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("resample size {m} exceeds dataset size {n}")]
    ResampleTooLarge { m: usize, n: usize },

    #[error("need at least two trials, got {0}")]
    TooFewTrials(usize),

    #[error("empty outcome list")]
    EmptyOutcomes,

    #[error("invalid layer selection: {0}")]
    LayerSelection(String),

    #[error("budget of {baseline} baseline shots too small for one shot per layer")]
    BudgetTooSmall { baseline: u64 },

    #[error("circuit does not match its enhanced-sampling spec: {0}")]
    CircuitSpecMismatch(String),

    #[error("coherent over-rotation is not expressible analytically (epsilon = {0})")]
    CoherentNotAnalytic(f64),

    #[error("config: {0}")]
    Config(String),

    #[error("dataset file: {0}")]
    DatasetFormat(String),

    #[error("circuit file: {0}")]
    CircuitFormat(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
