use std::path::PathBuf;

/// Errors raised by code construction, encoding, decoding and the simulation harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("index {0} is not a frozen position")]
    NotFrozen(usize),
    #[error("index {0} is not an information position")]
    NotInformation(usize),
    #[error("frozen row of u_{index} references undecided u_{reference}")]
    Undecided { index: usize, reference: usize },
    #[error("phase {phase} is out of range 1..={len}")]
    PhaseOutOfRange { phase: usize, len: usize },
    #[error("decoder requires an outer CRC but the code has none")]
    MissingCrc,
    #[error("brute-force enumeration over 2^{0} messages exceeds the guard")]
    TooManyMessages(usize),
    #[error("V-set enumeration was truncated at {0} prefixes")]
    Truncated(u64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("CSV schema mismatch in {path}: {detail}")]
    Schema { path: PathBuf, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
