use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix has a negative eigenvalue {value:e}")]
    NegativeEigenvalue { value: f64 },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("negative radicand in {context}: {value:e}")]
    NegativeRadicand { context: &'static str, value: f64 },

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(&'static str),

    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NotConverged { sweeps: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
