use thiserror::Error;

/// Errors raised by the decomposition routines.
///
/// Every variant has a stable string code (see [`NashError::code`]) used by the
/// CLI's JSON error payload and by the C ABI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NashError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the zero polynomial has no squarefree part")]
    ZeroPolynomial,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("element has a nontrivial elliptic part")]
    NotExponentialElement,
    #[error("matrices do not pairwise commute")]
    NotAbelian,
    #[error("element does not lie in the algebra")]
    NotInAlgebra,
    #[error("algebra does not act nilpotently")]
    NotNilpotentAlgebra,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is not split: {0}")]
    NotSplit(String),
    #[error("algebra is not stable under x -> -x^T")]
    NotThetaStable,
    #[error("operators are not simultaneously diagonalizable over the reals")]
    NotSimultaneouslyDiagonalizable,
    #[error("value is not a positive rational: {0}")]
    NotPositiveRational(String),
    #[error("spectrum is not rational")]
    IrrationalSpectrum,
    #[error("operation requires exact rational input")]
    ExactRequired,
    #[error("Levi correction system is inconsistent at stage {0}")]
    LiftFailed(usize),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("eigenvalue clusters too close to separate reliably (gap {gap:.3e}, merge radius {radius:.3e})")]
    ClusterAmbiguity { gap: f64, radius: f64 },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

/// Coarse grouping of errors, mapped to CLI exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Input,
    Precondition,
    Numerical,
}

impl NashError {
    pub fn code(&self) -> &'static str {
        match self {
            NashError::MalformedInput(_) => "MalformedInput",
            NashError::DimensionMismatch(_) => "DimensionMismatch",
            NashError::ZeroPolynomial => "ZeroPolynomial",
            NashError::NotInvertible => "NotInvertible",
            NashError::NotNilpotent => "NotNilpotent",
            NashError::NotUnipotent => "NotUnipotent",
            NashError::NotHyperbolic(_) => "NotHyperbolic",
            NashError::NotExponentialElement => "NotExponentialElement",
            NashError::NotAbelian => "NotAbelian",
            NashError::NotInAlgebra => "NotInAlgebra",
            NashError::NotNilpotentAlgebra => "NotNilpotentAlgebra",
            NashError::NotSolvable => "NotSolvable",
            NashError::NotSplit(_) => "NotSplit",
            NashError::NotThetaStable => "NotThetaStable",
            NashError::NotSimultaneouslyDiagonalizable => "NotSimultaneouslyDiagonalizable",
            NashError::NotPositiveRational(_) => "NotPositiveRational",
            NashError::IrrationalSpectrum => "IrrationalSpectrum",
            NashError::ExactRequired => "ExactRequired",
            NashError::LiftFailed(_) => "LiftFailed",
            NashError::PostconditionFailed(_) => "PostconditionFailed",
            NashError::ClusterAmbiguity { .. } => "ClusterAmbiguity",
            NashError::NumericalFailure(_) => "NumericalFailure",
        }
    }

    pub fn category(&self) -> ErrorCategory {
        match self {
            NashError::MalformedInput(_) | NashError::DimensionMismatch(_) => ErrorCategory::Input,
            NashError::ClusterAmbiguity { .. } | NashError::NumericalFailure(_) => {
                ErrorCategory::Numerical
            }
            _ => ErrorCategory::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, NashError>;
