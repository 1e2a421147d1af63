//! Exact arithmetic for Malcev algebras and superalgebras.
//!
//! The central objects are finite-dimensional (super)algebras given by
//! structure constants ([`Algebra`]), the seven-dimensional simple
//! non-Lie Malcev algebras built from split and division octonions, their
//! tensor products with (super)commutative coordinate algebras, and
//! bimodules over them. Everything is generic over a [`Scalar`] field;
//! the aliases below fix it to exact big rationals.

pub mod algebra;
pub mod bundle;
pub mod cayley_dickson;
pub mod error;
pub mod factorization;
pub mod identities;
pub mod involution;
pub mod linalg;
pub mod module_theory;
pub mod report;
pub mod scalar;
pub mod structure;

pub use algebra::{koszul_exponent, Algebra, Element, OperatorMatrix};
pub use error::{AlgebraError, Result};
pub use identities::{
    alpha_operator, jacobian, malcev_defect, special_form, super_jacobian, verify_h_variety, verify_malcev, FormKind,
};
pub use linalg::{Matrix, SparseVec, Subspace};
pub use report::{Report, Status, Witness};
pub use scalar::{format_rational, parse_rational, Scalar};

/// Exact rational scalars.
pub type Q = num_rational::BigRational;
pub type QAlgebra = Algebra<Q>;
pub type QElement = Element<Q>;
pub type QOperator = OperatorMatrix<Q>;
pub type QMatrix = Matrix<Q>;
pub type QReport = Report<Q>;
