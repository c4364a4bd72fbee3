//! Substitution homomorphisms of rational function fields.

use std::collections::{BTreeMap, BTreeSet};

use super::gcd::poly_lcm;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::var::Var;
use super::AlgebraError;

/// Images for some variables plus a set of variables declared fixed.
/// Substituting into an expression that mentions any other variable is an error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, RatFunc>,
    fixed: BTreeSet<Var>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Identity on the given variables.
    pub fn identity(vars: impl IntoIterator<Item = Var>) -> Self {
        Substitution {
            map: BTreeMap::new(),
            fixed: vars.into_iter().collect(),
        }
    }

    pub fn with(mut self, v: Var, image: RatFunc) -> Self {
        self.insert(v, image);
        self
    }

    pub fn insert(&mut self, v: Var, image: RatFunc) {
        self.fixed.remove(&v);
        self.map.insert(v, image);
    }

    pub fn fix(mut self, vars: impl IntoIterator<Item = Var>) -> Self {
        for v in vars {
            if !self.map.contains_key(&v) {
                self.fixed.insert(v);
            }
        }
        self
    }

    pub fn mapped(&self) -> impl Iterator<Item = (Var, &RatFunc)> {
        self.map.iter().map(|(v, r)| (*v, r))
    }

    pub fn fixed(&self) -> impl Iterator<Item = Var> + '_ {
        self.fixed.iter().copied()
    }

    /// Image of `v`, if `v` is mapped or fixed.
    pub fn image(&self, v: Var) -> Option<RatFunc> {
        match self.map.get(&v) {
            Some(r) => Some(r.clone()),
            None => self.fixed.contains(&v).then(|| RatFunc::var(v)),
        }
    }

    pub fn covers(&self, v: Var) -> bool {
        self.map.contains_key(&v) || self.fixed.contains(&v)
    }
}

/// Applies `s` to `e`. Every variable of `e` must be mapped or fixed; a
/// denominator that becomes identically zero is an error.
pub fn substitute(e: &RatFunc, s: &Substitution) -> Result<RatFunc, AlgebraError> {
    for v in e.vars() {
        if !s.covers(v) {
            return Err(AlgebraError::UnmappedVariable(v.name().to_string()));
        }
    }
    let field = e.field();
    for (_, img) in s.mapped() {
        if img.field() != field {
            return Err(AlgebraError::FieldMismatch(field, img.field()));
        }
    }
    let images: BTreeMap<Var, RatFunc> = e
        .vars()
        .into_iter()
        .map(|v| (v, s.image(v).expect("covered")))
        .collect();
    // every rational image is written over one common denominator L
    let l = images
        .values()
        .filter(|i| !i.is_poly())
        .fold(Poly::one(field), |acc, i| poly_lcm(&acc, i.denom()));
    let lifted: BTreeMap<Var, Poly> = images
        .iter()
        .map(|(v, i)| {
            let n = if i.is_poly() {
                i.numer().clone()
            } else {
                i.numer().mul(&l.div_exact(i.denom()).expect("lcm"))
            };
            (*v, n)
        })
        .collect();
    let rational: BTreeSet<Var> = images
        .iter()
        .filter(|(_, i)| !i.is_poly())
        .map(|(v, _)| *v)
        .collect();
    let (nn, nd) = eval_homogenized(e.numer(), &lifted, &rational, &l);
    let (dn, dd) = eval_homogenized(e.denom(), &lifted, &rational, &l);
    if dn.is_zero() {
        return Err(AlgebraError::ZeroDenominator);
    }
    // e = (nn / L^nd) / (dn / L^dd)
    let (num, den) = if dd >= nd {
        (nn.mul(&l.pow(dd - nd)), dn)
    } else {
        (nn, dn.mul(&l.pow(nd - dd)))
    };
    RatFunc::new(num, den)
}

/// `p` at the images `lifted / L` (rational variables) or `lifted`
/// (polynomial ones), as a numerator over `L^D` together with `D`.
fn eval_homogenized(
    p: &Poly,
    lifted: &BTreeMap<Var, Poly>,
    rational: &BTreeSet<Var>,
    l: &Poly,
) -> (Poly, u32) {
    let field = p.field();
    let rdeg = |m: &super::monomial::Monomial| -> u32 {
        m.pairs()
            .iter()
            .filter(|(v, _)| rational.contains(v))
            .map(|(_, e)| *e)
            .sum()
    };
    let top = p.terms().iter().map(|(m, _)| rdeg(m)).max().unwrap_or(0);
    let mut pows: BTreeMap<Var, Vec<Poly>> = BTreeMap::new();
    for v in p.vars() {
        pows.insert(v, powers(&lifted[&v], p.degree_in(v) as usize));
    }
    let lpows = powers(l, top as usize);
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut t = Poly::constant(c.clone());
        for &(v, e) in m.pairs() {
            t = t.mul(&pows[&v][e as usize]);
        }
        t = t.mul(&lpows[(top - rdeg(m)) as usize]);
        terms.extend(t.terms().iter().cloned());
    }
    (Poly::from_terms(field, terms), top)
}

fn powers(base: &Poly, max: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Poly::one(base.field()));
    for k in 1..=max {
        let next = out[k - 1].mul(base);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> RatFunc {
        RatFunc::named(n)
    }

    #[test]
    fn reciprocal_image() {
        let x = v("x");
        let z = v("z");
        let s = Substitution::new().with(Var::named("x"), z.inv().unwrap());
        assert_eq!(substitute(&x.pow(2), &s).unwrap(), z.pow(2).inv().unwrap());
    }

    #[test]
    fn zero_image() {
        let (x1, x2, a) = (v("x1"), v("x2"), v("a"));
        let f = x1.pow(2).sub(&a.mul(&x2.pow(2)));
        let s = Substitution::identity([Var::named("x1"), Var::named("a")])
            .with(Var::named("x2"), RatFunc::int(0));
        assert_eq!(substitute(&f, &s).unwrap(), x1.pow(2));
    }

    #[test]
    fn unmapped_and_vanishing() {
        let (x, y) = (v("x"), v("y"));
        let s = Substitution::identity([Var::named("x")]);
        assert!(matches!(
            substitute(&x.add(&y), &s),
            Err(AlgebraError::UnmappedVariable(_))
        ));
        let e = x.sub(&y).inv().unwrap();
        let s = Substitution::identity([Var::named("x")]).with(Var::named("y"), x.clone());
        assert_eq!(substitute(&e, &s), Err(AlgebraError::ZeroDenominator));
    }

    #[test]
    fn rational_images_cancel() {
        let (x, y, t) = (v("x"), v("y"), v("t"));
        let e = x.div(&y).unwrap();
        let img = t.add(&RatFunc::int(1)).div(&t).unwrap();
        let s = Substitution::new()
            .with(Var::named("x"), img.clone())
            .with(Var::named("y"), img.pow(2));
        assert_eq!(
            substitute(&e, &s).unwrap(),
            t.div(&t.add(&RatFunc::int(1))).unwrap()
        );
    }
}
