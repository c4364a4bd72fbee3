//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::scalar::{Field, Scalar};
use super::var::Var;
use super::AlgebraError;

/// Terms are kept sorted by decreasing internal monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    terms: Vec<(Monomial, Scalar)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked polynomial arithmetic: rejects operands over different fields.
pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<Poly, AlgebraError> {
    if f.field != g.field {
        return Err(AlgebraError::FieldMismatch(f.field, g.field));
    }
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Sub => f.sub(g),
        PolyOp::Mul => f.mul(g),
    })
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            terms: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        if c.is_zero() {
            return Self::zero(field);
        }
        Poly {
            field,
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::var_in(Field::Rational, v)
    }

    pub fn var_in(field: Field, v: Var) -> Self {
        Self::term(Monomial::var(v), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let field = c.field();
        if c.is_zero() {
            return Self::zero(field);
        }
        Poly {
            field,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(c.field(), field);
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(field, acc)
    }

    fn from_map(field: Field, acc: FxHashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { field, terms }
    }

    fn from_sorted(field: Field, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(v))
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.vars()).collect()
    }

    /// Leading term in the internal order.
    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// Leading term under the canonical (name-based) graded-lex order.
    pub fn canonical_lead(&self) -> Option<&(Monomial, Scalar)> {
        let top = self.terms.first()?.0.degree();
        self.terms
            .iter()
            .take_while(|(m, _)| m.degree() == top)
            .max_by(|a, b| a.0.canonical_cmp(&b.0))
    }

    pub fn promote(&self, p: u32) -> Result<Self, AlgebraError> {
        let field = Field::Rational.join(Field::cyclotomic(p)?)?;
        if self.field == field {
            return Ok(self.clone());
        }
        if self.field != Field::Rational {
            return Err(AlgebraError::FieldMismatch(self.field, field));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.promote(p)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Poly { field, terms })
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomial field mismatch");
    }

    pub fn neg(&self) -> Self {
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self::from_sorted(self.field, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Multiplies by a single term; order is preserved because the monomial
    /// order is multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut acc: FxHashMap<Monomial, Scalar> =
            FxHashMap::with_capacity_and_hasher(self.len() * other.len(), Default::default());
        for (m1, c1) in &large.terms {
            for (m2, c2) in &small.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.field, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multivariate division by `g` in the internal term order.
    ///
    /// Returns `(quotient, remainder)` where no remainder term is divisible
    /// by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self), AlgebraError> {
        self.divide(g, false)
            .map(|o| o.expect("full division always completes"))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.field));
        }
        if g.len() == 1 {
            let (gm, gc) = &g.terms[0];
            let inv = gc.inv();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                terms.push((m.div(gm)?, c.mul(&inv)));
            }
            return Some(Self::from_sorted(self.field, terms));
        }
        if g.total_degree() > self.total_degree() {
            return None;
        }
        match self.divide(g, true) {
            Ok(Some((q, r))) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.div_exact(self).is_some()
    }

    fn divide(&self, g: &Self, exact: bool) -> Result<Option<(Self, Self)>, AlgebraError> {
        self.check_field(g);
        let (glm, glc) = g.lead().ok_or(AlgebraError::DivisionByZero)?.clone();
        let ginv = glc.inv();
        let mut rest: BTreeMap<std::cmp::Reverse<Monomial>, Scalar> = self
            .terms
            .iter()
            .map(|(m, c)| (std::cmp::Reverse(m.clone()), c.clone()))
            .collect();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((std::cmp::Reverse(m), c)) = rest.pop_first() {
            match m.div(&glm) {
                Some(qm) => {
                    let qc = c.mul(&ginv);
                    for (gm, gc) in &g.terms[1..] {
                        let key = std::cmp::Reverse(gm.mul(&qm));
                        let delta = gc.mul(&qc).neg();
                        match rest.get_mut(&key) {
                            Some(e) => {
                                *e = e.add(&delta);
                                if e.is_zero() {
                                    rest.remove(&key);
                                }
                            }
                            None => {
                                rest.insert(key, delta);
                            }
                        }
                    }
                    quot.push((qm, qc));
                }
                None => {
                    if exact {
                        return Ok(None);
                    }
                    rem.push((m, c));
                }
            }
        }
        Ok(Some((
            Self::from_sorted(self.field, quot),
            Self::from_sorted(self.field, rem),
        )))
    }

    /// Coefficients with respect to `v`: `result[k]` multiplies `v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            parts[e as usize].push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|t| {
                // removing one variable can reorder terms within a coefficient
                let mut t = t;
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Self::from_sorted(self.field, t)
            })
            .collect()
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients(field: Field, v: Var, coeffs: &[Poly]) -> Self {
        let mut acc = Self::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_term(&Monomial::var_pow(v, k as u32), &field.one()));
            }
        }
        acc
    }

    /// Greatest common divisor of all monomials (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Scales so the canonical leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.canonical_lead() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Substitutes scalars for some variables.
    pub fn eval_partial(&self, point: &[(Var, Scalar)]) -> Self {
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Monomial::one();
            for &(v, e) in m.pairs() {
                match point.iter().find(|(w, _)| *w == v) {
                    Some((_, val)) => coeff = coeff.mul(&val.pow(e)),
                    None => rest = rest.mul(&Monomial::var_pow(v, e)),
                }
            }
            if coeff.is_zero() {
                continue;
            }
            match acc.get_mut(&rest) {
                Some(e) => *e = e.add(&coeff),
                None => {
                    acc.insert(rest, coeff);
                }
            }
        }
        Self::from_map(self.field, acc)
    }

    /// Renames variables via a one-to-one map; unmapped variables are kept.
    pub fn rename(&self, map: &dyn Fn(Var) -> Var) -> Self {
        Self::from_terms(
            self.field,
            self.terms.iter().map(|(m, c)| {
                (
                    Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (map(v), e))),
                    c.clone(),
                )
            }),
        )
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::expr::print_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Poly {
        Poly::var(Var::named(n))
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (v("x"), v("y"));
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let f = v("x").mul(&v("y")).add(&Poly::int(3));
        assert_eq!(f.add(&Poly::zero(Field::Rational)), f);
    }

    #[test]
    fn norm_form_product_expansion() {
        let (x1, x2, y1, y2, a) = (v("x1"), v("x2"), v("y1"), v("y2"), v("a"));
        let nx = x1.pow(2).sub(&a.mul(&x2.pow(2)));
        let ny = y1.pow(2).sub(&a.mul(&y2.pow(2)));
        let expected = x1
            .pow(2)
            .mul(&y1.pow(2))
            .sub(&a.mul(&x1.pow(2)).mul(&y2.pow(2)))
            .sub(&a.mul(&x2.pow(2)).mul(&y1.pow(2)))
            .add(&a.pow(2).mul(&x2.pow(2)).mul(&y2.pow(2)));
        assert_eq!(nx.mul(&ny), expected);
    }

    #[test]
    fn exact_division() {
        let (x, y) = (v("x"), v("y"));
        let f = x.pow(2).sub(&y.pow(2));
        assert_eq!(f.div_exact(&x.add(&y)), Some(x.sub(&y)));
        assert_eq!(f.div_exact(&x.add(&Poly::int(1))), None);
        let (q, r) = f.div_rem(&x.add(&Poly::int(1))).unwrap();
        assert_eq!(q.mul(&x.add(&Poly::int(1))).add(&r), f);
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let f = x
            .pow(3)
            .mul(&y)
            .add(&x.mul(&z))
            .sub(&y.mul(&z))
            .add(&Poly::int(7));
        let cs = f.coefficients_in(Var::named("x"));
        assert_eq!(cs.len(), 4);
        assert_eq!(
            Poly::from_coefficients(Field::Rational, Var::named("x"), &cs),
            f
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let q = v("x");
        let c = q.promote(3).unwrap();
        assert!(poly_arith(&q, &c, PolyOp::Add).is_err());
        assert!(poly_arith(&c, &c, PolyOp::Mul).is_ok());
    }
}
