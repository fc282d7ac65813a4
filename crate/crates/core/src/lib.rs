//! Change of ordering for zero-dimensional ideals over discretely valued
//! fields, driven by tropical Gröbner bases.
//!
//! The algorithms are generic over [`Scalar`]; the aliases below fix the
//! common backends.

pub mod error;
pub mod fglm;
pub mod gb_oracle;
pub mod polyring;
pub mod quotient;
pub mod trop_linalg;
pub mod valued_field;

pub use error::{Error, Result};
pub use fglm::{change_ordering, fglm_classical, fglm_shape_position, fglm_tropical, ChangeOutcome, Diagnostics, Engine, Strategy};
pub use gb_oracle::{macaulay_gb, macaulay_normal_form, random_system, verify_reduced_gb, MacaulayOracle, Verification};
pub use polyring::{Monomial, MonomialOrder, Polynomial, Staircase, TermOrder};
pub use quotient::{multiplication_matrices, GroebnerBasis, Matrix, QuotientData};
pub use trop_linalg::{tropical_row_echelon, Echelon, MacaulayMatrix, PrecisionReport};
pub use valued_field::{
    ExactRational, FieldConfig, FieldKind, PAdic, PAdicField, RationalField, Scalar, ScalarField,
    TAdic, TAdicField, Valuation,
};

/// Polynomials over `Q_p`.
pub type QpPolynomial = Polynomial<PAdic>;
/// Polynomials over `Q` with exact coefficients.
pub type QPolynomial = Polynomial<ExactRational>;
/// Polynomials over `Q((t))`.
pub type QtPolynomial = Polynomial<TAdic>;

/// Gröbner bases over `Q_p`.
pub type QpBasis = GroebnerBasis<PAdic>;
/// Gröbner bases over `Q` with exact coefficients.
pub type QBasis = GroebnerBasis<ExactRational>;
/// Gröbner bases over `Q((t))`.
pub type QtBasis = GroebnerBasis<TAdic>;
/// Macaulay matrices over `Q_p`.
pub type QpMatrix = MacaulayMatrix<PAdic>;
