//! Normalized quotients of polynomials.

use std::collections::BTreeMap;

use super::gcd::poly_gcd;
use super::poly::Poly;
use super::scalar::{Field, Scalar};
use super::var::Var;
use super::AlgebraError;

/// `num / den` with `gcd(num, den) = 1` and the denominator's canonical
/// leading coefficient equal to 1. Zero is `0 / 1`. Canonical form makes
/// structural equality coincide with equality in the function field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Builds the canonical representative of `num / den`.
pub fn ratfunc_normalize(num: Poly, den: Poly) -> Result<RatFunc, AlgebraError> {
    RatFunc::new(num, den)
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.field() != den.field() {
            return Err(AlgebraError::FieldMismatch(num.field(), den.field()));
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field()));
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Scales a coprime pair so the denominator is monic.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Self {
        let lc = den.canonical_lead().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero(field: Field) -> Self {
        RatFunc {
            num: Poly::zero(field),
            den: Poly::one(field),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(Poly::int(n))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// Variable by name; panics on an invalid name.
    pub fn named(name: &str) -> Self {
        Self::var(Var::named(name))
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        RatFunc {
            num: p,
            den: Poly::one(field),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_poly() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn promote(&self, p: u32) -> Result<Self, AlgebraError> {
        Ok(RatFunc {
            num: self.num.promote(p)?,
            den: self.den.promote(p)?,
        })
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Sum by Henrici's method: only the gcd of the denominators and a
    /// final gcd against it are needed.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.field(),
            other.field(),
            "rational function field mismatch"
        );
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            let num = self.num.mul(&other.den).add(&other.num);
            return Self::from_coprime_checked(num, other.den.clone());
        }
        if other.den.is_one() {
            let num = other.num.mul(&self.den).add(&self.num);
            return Self::from_coprime_checked(num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::from_coprime_checked(num, self.den.mul(&other.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&other.num.mul(&b1));
        if t.is_zero() {
            return Self::zero(self.field());
        }
        let den = b1.mul(&other.den);
        let h = poly_gcd(&t, &g);
        if h.is_one() {
            Self::from_coprime(t, den)
        } else {
            Self::from_coprime(
                t.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }

    /// [`RatFunc::from_coprime`] that also maps a zero numerator to `0 / 1`.
    fn from_coprime_checked(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(den.field());
        }
        Self::from_coprime(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.field(),
            other.field(),
            "rational function field mismatch"
        );
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field());
        }
        if self.is_poly() && other.is_poly() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // cross cancellation keeps both products coprime
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let cut = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = cut(&self.num, &g1).mul(&cut(&other.num, &g2));
        let den = cut(&self.den, &g2).mul(&cut(&other.den, &g1));
        Self::from_coprime(num, den)
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i32) -> Result<Self, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Sums many terms, combining those with equal denominators first.
    pub fn sum<'a>(field: Field, items: impl IntoIterator<Item = &'a RatFunc>) -> Self {
        let mut groups: BTreeMap<usize, Vec<(Poly, Poly)>> = BTreeMap::new();
        let mut order: Vec<Poly> = Vec::new();
        for it in items {
            if it.is_zero() {
                continue;
            }
            let idx = match order.iter().position(|d| *d == it.den) {
                Some(i) => i,
                None => {
                    order.push(it.den.clone());
                    order.len() - 1
                }
            };
            groups
                .entry(idx)
                .or_default()
                .push((it.num.clone(), it.den.clone()));
        }
        let mut acc = Self::zero(field);
        for (idx, parts) in groups {
            let num = parts.iter().fold(Poly::zero(field), |a, (n, _)| a.add(n));
            let den = order[idx].clone();
            let term = if den.is_one() {
                Self::from_poly(num)
            } else {
                Self::new(num, den).expect("nonzero denominator")
            };
            acc = acc.add(&term);
        }
        acc
    }

    /// Multiplier-free equality test by cross multiplication.
    pub fn cross_eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Exact quotient of the numerator by a polynomial, when it divides.
    pub fn div_poly_exact(&self, p: &Poly) -> Option<Self> {
        let num = self.num.div_exact(p)?;
        Some(RatFunc {
            num,
            den: self.den.clone(),
        })
    }

    /// Evaluates at a point assigning scalars to some variables.
    pub fn eval_partial(&self, point: &[(Var, Scalar)]) -> Result<Self, AlgebraError> {
        Self::new(self.num.eval_partial(point), self.den.eval_partial(point))
    }

    pub fn rename(&self, map: &dyn Fn(Var) -> Var) -> Self {
        RatFunc {
            num: self.num.rename(map),
            den: self.den.rename(map),
        }
        .renormalized()
    }

    /// Renaming can change which monomial leads the denominator.
    fn renormalized(self) -> Self {
        Self::from_coprime(self.num, self.den)
    }
}

impl std::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::expr::print_canonical(self))
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::expr::print_canonical(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> RatFunc {
        RatFunc::named(n)
    }

    #[test]
    fn cancels_common_factor() {
        let (x, y) = (v("x"), v("y"));
        let num = x.mul(&x).sub(&y.mul(&y));
        let r = num.div(&x.add(&y)).unwrap();
        assert_eq!(r, x.sub(&y));
        assert!(r.is_poly());
    }

    #[test]
    fn zero_is_canonical() {
        let x = v("x");
        let z = RatFunc::new(Poly::zero(Field::Rational), x.numer().clone()).unwrap();
        assert_eq!(z, RatFunc::zero(Field::Rational));
        assert!(RatFunc::new(Poly::int(1), Poly::zero(Field::Rational)).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let (x, y) = (v("x"), v("y"));
        let a = x.div(&y).unwrap();
        let b = y.div(&x.add(&RatFunc::int(1))).unwrap();
        let s = a.add(&b);
        assert_eq!(s.sub(&b), a);
        assert_eq!(s.mul(&a.inv().unwrap()).mul(&a), s);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one(Field::Rational));
    }

    #[test]
    fn denominator_is_monic() {
        let x = v("x");
        let r = RatFunc::new(Poly::int(3), x.numer().scale(&Scalar::int(-6))).unwrap();
        assert_eq!(r.denom().canonical_lead().unwrap().1, Scalar::int(1));
        assert_eq!(
            r.numer().as_constant(),
            Some(Scalar::rational("-1/2".parse().unwrap()))
        );
    }

    #[test]
    fn grouped_sum_matches_pairwise() {
        let (x, y) = (v("x"), v("y"));
        let t = x.sub(&y);
        let items = [
            x.div(&t).unwrap(),
            y.div(&t).unwrap().neg(),
            RatFunc::int(2),
        ];
        let s = RatFunc::sum(Field::Rational, items.iter());
        assert_eq!(s, RatFunc::int(3));
    }
}
