use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("not a pre-Lie algebra: associator symmetry fails at {0:?}")]
    NotPreLie(Vec<usize>),

    #[error("not a bimodule: {0}")]
    InvalidBimodule(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("block shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a Nijenhuis operator")]
    NotNijenhuis,

    #[error("not an O-operator")]
    NotOOperator,

    #[error("not a Rota-Baxter operator")]
    NotRotaBaxter,

    #[error("not a Nijenhuis structure")]
    NotNijenhuisStructure,

    #[error("(N, S) does not satisfy the deformation-pair conditions")]
    NotDeformationPair,

    #[error("O-operators are not compatible")]
    NotCompatible,

    #[error("not an ON-structure")]
    NotOnStructure,

    #[error("not a solution of the strong Maurer-Cartan equation")]
    NotStrongMc,

    #[error("component check failed: {0}")]
    ComponentCheckFailed(String),

    #[error("block {block} is not a subalgebra: e{}·e{} leaves the block", .pair.0, .pair.1)]
    NotSubalgebra { block: usize, pair: (usize, usize) },

    #[error("tensor is not symmetric at ({}, {})", .0.0, .0.1)]
    NotSymmetric((usize, usize)),

    #[error("search space too large: {size} candidates exceeds the limit {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("parameter constraints cannot be satisfied: {0}")]
    ConstraintUnsatisfiable(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("check mismatch: {0}")]
    CheckMismatch(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
