//! Exact arithmetic: rationals, Q(ζ_p), sparse polynomials, rational
//! functions, substitutions and dense matrices over them.

mod cyclotomic;
mod gcd;
mod linalg;
mod matrix;
mod monomial;
mod poly;
mod ratfunc;
mod rational;
mod scalar;
mod subst;
mod var;

pub use cyclotomic::{is_prime, Cyclotomic};
pub use gcd::poly_gcd;
pub use linalg::{char_poly, coefficients_in, det_fraction_free, det_gauss, mat_inverse};
pub use matrix::{mat_arith, MatOp, Matrix, SymMatrix};
pub use monomial::Monomial;
pub use poly::{poly_arith, Poly, PolyOp};
pub use ratfunc::{ratfunc_normalize, RatFunc};
pub use rational::Rational;
pub use scalar::{scalar_arith, Field, Scalar, ScalarOp};
pub use subst::{substitute, Substitution};
pub use var::{is_valid_name, natural_cmp, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zeta({0}): order must be prime")]
    NotPrime(u32),
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("substitution has no image for variable {0}")]
    UnmappedVariable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("variable {0} already occurs in the matrix")]
    VarCollision(String),
}
