use thiserror::Error;

use crate::algebra::RatPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("operation requires a polynomial of degree at least 1")]
    ConstantPolynomial,

    #[error("modulus {0} is not squarefree")]
    NotSquarefree(String),

    /// The element shares the factor `common_factor` with the field modulus.
    /// Callers holding a reducible modulus can split it along this factor.
    #[error("element is not invertible modulo the field modulus")]
    NotInvertible { common_factor: Option<RatPoly> },

    #[error("elements belong to different number fields")]
    FieldMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimensions must be positive")]
    EmptyMatrix,

    #[error("factorization of a degree-{degree} polynomial needs {modular_factors} modular factors, above the supported limit of {limit}")]
    FactorizationIncomplete {
        degree: usize,
        modular_factors: usize,
        limit: usize,
    },

    #[error("invalid decimal literal {0:?}")]
    InvalidDecimal(String),

    #[error("invalid branch list: {0}")]
    InvalidGraph(String),

    #[error("graph {graph} is {class}, expected a {expected} graph")]
    WrongGraphClass {
        graph: String,
        class: String,
        expected: String,
    },

    #[error("character shape does not match the branch lengths of {0}")]
    ShapeMismatch(String),

    #[error("value is not a solution of the graph equation (residual {residual})")]
    NotASolution { residual: String },

    #[error("vertex {0} does not exist in the graph")]
    InvalidVertex(String),

    #[error("degenerate value: {0}")]
    Degenerate(&'static str),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
