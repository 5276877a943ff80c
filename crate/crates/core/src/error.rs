use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("term is not polylinear: {0}")]
    NotPolylinear(String),

    #[error("variable index {index} out of range 1..={arity}")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("algebra is not a left Leibniz algebra; witness {0:?}")]
    NotLeibniz(Vec<usize>),

    #[error("dialgebra is not an associative dialgebra; witness {0:?}")]
    NotAssociativeDialgebra(Vec<usize>),

    #[error("module law fails on basis pair ({0}, {1})")]
    ModuleLaw(usize, usize),

    #[error("module is defined over a different Lie algebra than the quotient of L")]
    QuotientMismatch,

    #[error("module must have positive dimension")]
    EmptyModule,

    #[error("product would have degree {needed}, above the truncation bound {bound}")]
    DegreeOverflow { needed: usize, bound: usize },

    #[error("letter {0} is not a basis index")]
    UnknownLetter(usize),

    #[error("conformal map does not have the shape 1*a0 - T*a1: {0}")]
    NotCurrentShape(String),

    #[error("parse error: {0}")]
    Parse(String),
}
