use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`: no relation behaviour declared for it")]
    UnknownGenerator(String),

    #[error("relation set is not confluent: `{word}` reduces to `{left}` and to `{right}`")]
    NonConfluent { word: String, left: String, right: String },

    #[error("inconsistent relation: {0}")]
    InconsistentRelation(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    #[error("structure constants are not cyclic: f[{i}][{j}][{k}] != f[{k}][{i}][{j}]")]
    NonCyclicTensor { i: usize, j: usize, k: usize },

    #[error("Hamiltonian is not a polynomial in X and P: contains `{0}`")]
    NonPolynomialHamiltonian(String),

    #[error("window too short: need {needed} samples, have {available}")]
    WindowTooShort { needed: usize, available: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
