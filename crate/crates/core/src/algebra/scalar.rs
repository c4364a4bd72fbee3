//! Coefficient field elements: Q or Q(ζ_p).
//!
//! Fields never mix implicitly. The checked `try_*` methods report a
//! [`AlgebraError::FieldMismatch`]; the operator-style methods used on hot
//! paths assume the caller already agreed on a field and panic otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cyclotomic::{is_prime, Cyclotomic};
use super::rational::Rational;
use super::AlgebraError;

/// Which coefficient field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Cyclotomic(u32),
}

impl Field {
    pub fn cyclotomic(p: u32) -> Result<Self, AlgebraError> {
        if is_prime(p) {
            Ok(Field::Cyclotomic(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_rational(Rational::zero())
    }

    pub fn one(self) -> Scalar {
        self.from_rational(Rational::one())
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.from_rational(Rational::from_int(n))
    }

    pub fn from_rational(self, r: Rational) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(r),
            Field::Cyclotomic(p) => Scalar::Cyclotomic(Cyclotomic::from_rational(p, r)),
        }
    }

    /// The least upper bound of two fields, used only by explicit promotion.
    pub fn join(self, other: Field) -> Result<Field, AlgebraError> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (a, b) => Err(AlgebraError::FieldMismatch(a, b)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(p) => write!(f, "Q(zeta({p}))"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic(Cyclotomic),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact scalar arithmetic with field and zero-division checks.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar, AlgebraError> {
    match op {
        ScalarOp::Add => a.try_add(b),
        ScalarOp::Sub => a.try_add(&b.neg()),
        ScalarOp::Mul => a.try_mul(b),
        ScalarOp::Div => a.try_div(b),
    }
}

impl Scalar {
    pub fn rational(r: Rational) -> Self {
        Scalar::Rational(r)
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(Rational::from_int(n))
    }

    pub fn zeta_pow(p: u32, k: i64) -> Result<Self, AlgebraError> {
        Field::cyclotomic(p)?;
        Ok(Scalar::Cyclotomic(Cyclotomic::zeta_pow(p, k)))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Cyclotomic(c) => Field::Cyclotomic(c.order()),
        }
    }

    /// Explicit embedding Q → Q(ζ_p); identity on values already in Q(ζ_p).
    pub fn promote(&self, p: u32) -> Result<Self, AlgebraError> {
        match self {
            Scalar::Rational(r) => {
                Field::cyclotomic(p)?;
                Ok(Scalar::Cyclotomic(Cyclotomic::from_rational(p, r.clone())))
            }
            Scalar::Cyclotomic(c) if c.order() == p => Ok(self.clone()),
            Scalar::Cyclotomic(c) => Err(AlgebraError::FieldMismatch(
                Field::Cyclotomic(c.order()),
                Field::Cyclotomic(p),
            )),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(c) => c.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(c) => c.as_rational(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a.add(b))),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => {
                Ok(Scalar::Cyclotomic(a.add(b)))
            }
            _ => Err(AlgebraError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a.mul(b))),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => {
                Ok(Scalar::Cyclotomic(a.mul(b)))
            }
            _ => Err(AlgebraError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn try_inv(&self) -> Result<Self, AlgebraError> {
        match self {
            Scalar::Rational(r) => r.inv().map(Scalar::Rational),
            Scalar::Cyclotomic(c) => c.inv().map(Scalar::Cyclotomic),
        }
        .ok_or(AlgebraError::DivisionByZero)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.field() != other.field() {
            return Err(AlgebraError::FieldMismatch(self.field(), other.field()));
        }
        self.try_mul(&other.try_inv()?)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("scalar field mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("scalar field mismatch")
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.neg()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }

    /// Inverse of a nonzero scalar; panics on zero.
    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn pow(&self, e: u32) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.pow(e)),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.pow(e)),
        }
    }

    /// Whether the printed form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Rational(_) => false,
            Scalar::Cyclotomic(c) => c.term_count() > 1,
        }
    }

    /// Sign used when printing a term: negative rationals and cyclotomic
    /// values whose only coordinate is negative print with a leading minus.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.signum() < 0,
            Scalar::Cyclotomic(c) => {
                c.term_count() == 1 && c.coeffs().iter().any(|r| r.signum() < 0)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(Rational::new(n, d).unwrap())
    }

    #[test]
    fn rational_sum() {
        assert_eq!(
            scalar_arith(&q(1, 2), &q(1, 3), ScalarOp::Add).unwrap(),
            q(5, 6)
        );
    }

    #[test]
    fn zeta_cubed_product() {
        let z = Scalar::zeta_pow(3, 1).unwrap();
        let z2 = Scalar::zeta_pow(3, 2).unwrap();
        assert!(scalar_arith(&z, &z2, ScalarOp::Mul).unwrap().is_one());
    }

    #[test]
    fn cyclotomic_relation_p5() {
        let mut s = Field::Cyclotomic(5).zero();
        for k in 0..5 {
            s = s.add(&Scalar::zeta_pow(5, k).unwrap());
        }
        assert!(s.is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(
            scalar_arith(&q(1, 1), &q(0, 1), ScalarOp::Div),
            Err(AlgebraError::DivisionByZero)
        );
        let z = Scalar::zeta_pow(3, 1).unwrap();
        assert!(matches!(
            scalar_arith(&q(1, 1), &z, ScalarOp::Add),
            Err(AlgebraError::FieldMismatch(..))
        ));
        let promoted = q(1, 1).promote(3).unwrap();
        assert!(scalar_arith(&promoted, &z, ScalarOp::Add).is_ok());
        assert_eq!(Scalar::zeta_pow(4, 1), Err(AlgebraError::NotPrime(4)));
    }
}
