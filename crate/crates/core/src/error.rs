use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("basis monomial p^{k} xi^{} out of range (degree {d})", .d.saturating_sub(*.k))]
    OutOfBasis { d: u32, k: u32 },

    #[error("pairing matrix is singular")]
    SingularPairing,

    #[error("unsupported geometry: {0}")]
    Unsupported(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("seed table line {line}: {message}")]
    SeedFile { line: usize, message: String },

    #[error("missing seed invariant <{alpha}, {beta}> in class {a}A1 + {b}A2")]
    MissingSeed {
        alpha: String,
        beta: String,
        a: u32,
        b: u32,
    },

    #[error("column {column} read before it was filled")]
    Dependency { column: String },

    #[error("quantum differential system is not flat at q1^{a} q2^{b}")]
    Flatness { a: u32, b: u32 },

    #[error("J coefficient at q1^{a} q2^{b} violates homogeneity in component {component}")]
    Homogeneity { a: u32, b: u32, component: usize },

    #[error("non-integer normalized coefficient at ({row}, {col})")]
    NonInteger { row: usize, col: usize },

    #[error("non-trivial dilaton shift: unsupported")]
    DilatonShift,

    #[error("insufficient truncation: {needed} requested, {achievable} achievable")]
    Truncation { needed: usize, achievable: usize },

    #[error("underdetermined annihilator search: need more than {required} terms, got {got}")]
    Underdetermined { required: usize, got: usize },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
