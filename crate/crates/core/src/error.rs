use thiserror::Error;

use crate::design::Block;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operand length mismatch: {left} qubit(s) vs {right} qubit(s)")]
    LengthMismatch { left: u8, right: u8 },

    #[error("invalid Pauli label: {0}")]
    InvalidLabel(String),

    #[error("{qubits} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { qubits: u8, max: u8 },

    #[error("operation `{0}` is undefined for the identity operator")]
    IdentityOperator(&'static str),

    #[error("operator table lookups need two-qubit labels, got {0} qubit(s)")]
    NotTwoQubit(u8),

    #[error("O index {0} is out of range (O_1..=O_16; commutators take O_2..=O_16)")]
    OIndexOutOfRange(u32),

    #[error("Q index {0} is out of range")]
    QIndexOutOfRange(u32),

    #[error("unknown dictionary key `{0}`")]
    UnknownKey(String),

    #[error("seed count {0} is unsupported (expected 1..=4)")]
    UnsupportedSeedCount(usize),

    #[error("seed at position {position} is the identity")]
    IdentitySeed { position: usize },

    #[error("seeds are linearly dependent: {labels} multiply to the identity")]
    DependentSeeds { positions: Vec<usize>, labels: String },

    #[error("{seeds} seeds cannot be independent in a {dimension}-dimensional operator space")]
    ExceedsOperatorSpace { seeds: usize, dimension: usize },

    #[error("v = {0} is not of the form 2^m - 1; no seed expansion produces it")]
    UnsupportedOrder(usize),

    #[error("{operation} needs {expected}, got m = {m}")]
    WrongSeedCount { operation: &'static str, expected: &'static str, m: usize },

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("block {0} is not part of the design")]
    ForeignBlock(Block),

    #[error("not a Kirkman-resolvable size: m = {0} (need m = 4, v = 15)")]
    NotResolvable(usize),

    #[error("invalid day matching: {0}")]
    InvalidMatching(String),

    #[error("the day matching admits no resolution")]
    InfeasibleMatching,

    #[error("layout `{layout}` is incompatible with m = {m}")]
    IncompatibleLayout { layout: &'static str, m: usize },

    #[error("a resolution is required for this output")]
    MissingResolution,

    #[error("invalid prime set: {0}")]
    InvalidPrimes(String),

    #[error("octave-reduced ratios collide at {0}")]
    ScaleCollision(String),

    #[error("invalid tonic {0} Hz")]
    InvalidTonic(f64),

    #[error("invalid window parameters: {0}")]
    InvalidWindow(String),

    #[error("invalid synthesis configuration: {0}")]
    InvalidSynthConfig(String),

    #[error("chord sequence is empty")]
    EmptyChordSequence,

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("invalid document: {0}")]
    Document(String),

    #[error("malformed fixture: {0}")]
    Fixture(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Wav(#[from] hound::Error),
}
