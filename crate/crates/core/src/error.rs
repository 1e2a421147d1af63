use thiserror::Error;

/// Errors raised by algebra constructors and operations.
///
/// Failed mathematical checks are not errors: they come back as a failing
/// [`Report`](crate::Report) carrying a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("grading violated: product of basis {i} and {j} has a component on basis {k} of the wrong parity")]
    GradingViolated { i: usize, j: usize, k: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("{form} expects {expected} arguments, got {found}")]
    WrongArity { form: &'static str, expected: usize, found: usize },
    #[error("coordinate algebra rejected: {0}")]
    CoordinateAlgebra(String),
    #[error("parameter gamma must be nonzero")]
    ZeroGamma,
    #[error("element {0} is not central: it does not annihilate basis element {1}")]
    NotCentral(String, usize),
    #[error("cannot quotient by the zero element")]
    ZeroQuotient,
    #[error("unknown coordinate algebra kind `{0}`")]
    UnknownKind(String),
    #[error("bilinear form is singular")]
    SingularForm,
    #[error("operator subspace is not closed under the adjoint: generator {0}")]
    NotStarInvariant(usize),
    #[error("module hypothesis failed: {0}")]
    ModuleHypothesis(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
