use alloc::string::String;

use thiserror::Error;

use crate::grassmann::Parity;

/// Errors raised by the algebraic routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(u32, u32),

    #[error("generator index {index} out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: u32 },

    #[error("at most 64 generators are supported, got {0}")]
    TooManyGenerators(u32),

    #[error("{what}: expected {expected} element, found {found}")]
    Parity {
        what: &'static str,
        expected: Parity,
        found: Parity,
    },

    #[error("not invertible: {0}")]
    NotInvertible(&'static str),

    #[error("non-diagonalizable: supertrace not invertible")]
    NonDiagonalizable,

    #[error("invalid nerve: {0}")]
    InvalidNerve(String),

    #[error("obstruction class nonzero on this nerve (residual {residual:.3e})")]
    Obstruction { residual: f64 },

    #[error("cochain degree {0} out of range for this operation")]
    DegreeOverflow(usize),

    #[error("polynomial degree overflow: {0}")]
    PolynomialOverflow(String),

    #[error("invalid fatgraph: {0}")]
    InvalidFatGraph(String),

    #[error("singular gauge system (residual {residual:.3e})")]
    SingularGauge { residual: f64 },

    #[error("edge path is not contiguous at step {0}")]
    NonContiguous(usize),

    #[error("evaluation at the pole z_{0}")]
    Pole(usize),

    #[error("site index {index} out of range for {sites} sites")]
    SiteOutOfRange { index: usize, sites: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
