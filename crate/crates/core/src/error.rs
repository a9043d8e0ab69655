use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which structural check rejected a model or structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationCode {
    /// The model differential does not square to zero (Jacobi failure).
    DSquaredNonzero,
    /// The Lee form is not closed.
    AlphaNotClosed,
    /// dF ≠ 2α∧F.
    StructureEquation,
    /// The calibration form fails its non-degeneracy profile.
    DegenerateCalibration,
    /// Shapes of the pieces do not fit together.
    DimensionMismatch,
}

impl ValidationCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ValidationCode::DSquaredNonzero => "d_squared_nonzero",
            ValidationCode::AlphaNotClosed => "alpha_not_closed",
            ValidationCode::StructureEquation => "structure_equation",
            ValidationCode::DegenerateCalibration => "degenerate_calibration",
            ValidationCode::DimensionMismatch => "dimension_mismatch",
        }
    }
}

/// A failed check with the offending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationFailure {
    pub code: ValidationCode,
    pub message: String,
    /// `(blade indices, coefficient)` of the nonzero residual, when there is one.
    pub offending: Vec<(Vec<usize>, Rational)>,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("form is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("degenerate calibration: {0}")]
    Degenerate(String),
    #[error("{}: {}", .0.code.as_str(), .0.message)]
    Validation(ValidationFailure),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown model: {0}")]
    UnknownModel(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Inhomogeneous(_) => "inhomogeneous",
            Error::Degree(_) => "degree",
            Error::Degenerate(_) => "degenerate_calibration",
            Error::Validation(v) => v.code.as_str(),
            Error::Schema(_) => "schema",
            Error::UnknownModel(_) => "unknown_model",
            Error::BadParameter(_) => "bad_parameter",
            Error::Inconsistent(_) => "inconsistent",
            Error::NoSolution(_) => "no_solution",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }

    /// Validation failures describe the input mathematics; everything else is
    /// a malformed request.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Validation(_))
    }
}
