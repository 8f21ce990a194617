use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register size {n} is invalid: {reason}")]
    Size { n: usize, reason: &'static str },

    #[error("basis map is not a bijection: flat index {0} is hit more than once")]
    NotBijective(usize),

    #[error("layout mismatch: expected n={expected}, found n={found}")]
    LayoutMismatch { expected: usize, found: usize },

    #[error("basis index {0} does not fit the register layout")]
    BasisOutOfRange(String),

    #[error("invalid subsystem: {0}")]
    Subsystem(String),

    #[error("measurement sets overlap on qubit {0}")]
    OverlappingSubsets(usize),

    #[error("outcome {outcome} has probability {probability:e}, cannot be forced")]
    ImpossibleOutcome { outcome: u64, probability: f64 },

    #[error("amplitude vector has norm {0}, expected 1")]
    NotNormalized(f64),

    #[error("amplitude vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },

    #[error("superposition sums to the zero vector")]
    DegenerateSum,

    #[error("history input {0} appears more than once")]
    DuplicateHistory(String),

    #[error("no phase assigned to history input {0}")]
    MissingPhase(String),

    #[error("advanced information is malformed: {0}")]
    AdvancedInfo(String),

    #[error("{what} {value} is not in the candidate set {candidates:?}")]
    NotACandidate {
        what: &'static str,
        value: String,
        candidates: Vec<String>,
    },

    #[error("query order is not a permutation of all {0} drawer numbers")]
    NotAPermutation(usize),

    #[error("malformed bitstring {text:?}: {reason}")]
    Bitstring { text: String, reason: &'static str },

    #[error("iteration count must be at least 1")]
    ZeroIterations,

    #[error("two-photon state is already at t=T")]
    AlreadyEvolved,
}
