use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid conductor {0}: must be positive")]
    InvalidConductor(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse cyclotomic number {0:?}")]
    BadNumber(String),

    #[error("index out of range: {what} = {index}, bound {bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("invalid group specification {0:?}")]
    InvalidGroup(String),

    #[error("invalid action: {axiom} fails at {witness}")]
    InvalidAction { axiom: String, witness: String },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("bundle has no projective representation")]
    MissingProjectiveRep,

    #[error("structural bug: {0}")]
    Structural(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch in output block {block}: multiplicities give {computed}, declared {declared}")]
    DimensionMismatch {
        block: usize,
        computed: usize,
        declared: usize,
    },

    #[error("unsupported level: {0}")]
    UnsupportedLevel(String),

    #[error("size limit exceeded by {piece}: target dimension {dim} > {max}")]
    SizeLimit { piece: String, dim: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed record: {0}")]
    Malformed(String),
}
