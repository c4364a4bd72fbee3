//! Multivariate polynomial gcd over Q and Q(ζ_p).
//!
//! Content and primitive part with respect to a main variable, with the
//! primitive gcd computed by the subresultant remainder sequence. Cheap
//! exits come first: monomial content, variables present on only one side,
//! trial division, and an evaluation test that proves coprimality.

use super::monomial::Monomial;
use super::poly::Poly;
use super::scalar::{Field, Scalar};
use super::var::Var;

/// Greatest common divisor, normalized so its canonical leading coefficient is 1.
/// `gcd(f, 0)` is `f` made monic and `gcd(0, 0)` is 0.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Poly {
    assert_eq!(f.field(), g.field(), "gcd across fields");
    gcd_inner(f, g).monic()
}

/// Least common multiple, normalized like the gcd up to the product's lead.
pub fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = poly_gcd(a, b);
    a.div_exact(&g).expect("gcd divides").mul(b)
}

fn gcd_inner(f: &Poly, g: &Poly) -> Poly {
    let field = f.field();
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(field);
    }
    let (mf, mg) = (f.monomial_content(), g.monomial_content());
    let mono = mf.gcd(&mg);
    let one = field.one();
    let f = strip_monomial(f, &mf);
    let g = strip_monomial(g, &mg);
    let core = gcd_no_content(&f, &g);
    if mono.is_one() {
        core
    } else {
        core.mul_term(&mono, &one)
    }
}

fn strip_monomial(f: &Poly, m: &Monomial) -> Poly {
    if m.is_one() {
        f.clone()
    } else {
        f.div_exact(&Poly::term(m.clone(), f.field().one()))
            .expect("monomial content divides")
    }
}

/// Gcd of two polynomials neither of which has a monomial factor.
fn gcd_no_content(f: &Poly, g: &Poly) -> Poly {
    let field = f.field();
    if f.is_constant() || g.is_constant() {
        return Poly::one(field);
    }
    if f.is_monomial() || g.is_monomial() {
        // a monomial without monomial content is a constant
        return Poly::one(field);
    }
    let (vf, vg) = (f.vars(), g.vars());
    if let Some(&v) = vf.difference(&vg).next() {
        return gcd_with_coefficients(g, f, v);
    }
    if let Some(&v) = vg.difference(&vf).next() {
        return gcd_with_coefficients(f, g, v);
    }
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    if small.divides(large) {
        return small.clone();
    }
    if large.divides(small) {
        return large.clone();
    }
    let x = main_variable(f, g);
    let fc = f.coefficients_in(x);
    let gc = g.coefficients_in(x);
    let cf = content(&fc);
    let cg = content(&gc);
    let cont = gcd_inner(&cf, &cg);
    let pf = primitive(&fc, &cf);
    let pg = primitive(&gc, &cg);
    let prim = primitive_gcd(pf, pg, x, field);
    Poly::from_coefficients(field, x, &prim).mul(&cont)
}

/// `gcd(f, g)` where `v` occurs in `g` but not in `f`: the gcd must divide
/// every coefficient of `g` with respect to `v`.
fn gcd_with_coefficients(f: &Poly, g: &Poly, v: Var) -> Poly {
    let mut coeffs = g.coefficients_in(v);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(Poly::len);
    let mut acc = f.clone();
    for c in coeffs {
        acc = gcd_inner(&acc, &c);
        if acc.is_constant() {
            return Poly::one(f.field());
        }
    }
    acc
}

/// Variable of smallest positive degree, ties broken by name.
fn main_variable(f: &Poly, g: &Poly) -> Var {
    f.vars()
        .into_iter()
        .min_by(|&a, &b| {
            let da = f.degree_in(a).min(g.degree_in(a));
            let db = f.degree_in(b).min(g.degree_in(b));
            da.cmp(&db).then_with(|| a.canonical_cmp(b))
        })
        .expect("non-constant polynomial has a variable")
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut nz: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let field = nz[0].field();
    let mut acc = nz[0].clone();
    for c in &nz[1..] {
        if acc.is_constant() {
            break;
        }
        acc = gcd_inner(&acc, c);
    }
    if acc.is_constant() {
        Poly::one(field)
    } else {
        acc
    }
}

fn primitive(coeffs: &[Poly], cont: &Poly) -> Vec<Poly> {
    if cont.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| {
            c.div_exact(cont)
                .expect("content divides every coefficient")
        })
        .collect()
}

fn degree(u: &[Poly]) -> usize {
    u.iter()
        .rposition(|c| !c.is_zero())
        .expect("nonzero polynomial")
}

fn trim(mut u: Vec<Poly>) -> Vec<Poly> {
    while u.len() > 1 && u.last().is_some_and(Poly::is_zero) {
        u.pop();
    }
    u
}

fn is_zero_u(u: &[Poly]) -> bool {
    u.iter().all(Poly::is_zero)
}

/// Gcd of two primitive polynomials in `x` with coefficients in the other variables.
fn primitive_gcd(f: Vec<Poly>, g: Vec<Poly>, x: Var, field: Field) -> Vec<Poly> {
    let (df, dg) = (degree(&f), degree(&g));
    if df == 0 || dg == 0 {
        return vec![Poly::one(field)];
    }
    let others: Vec<Var> = f
        .iter()
        .chain(g.iter())
        .flat_map(|c| c.vars())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    if let Some(d) = evaluated_gcd_degree(&f, &g, &others, field) {
        if d == 0 {
            return vec![Poly::one(field)];
        }
        // gcd degree equal to a full degree means that side divides the other
        if d == df.min(dg) {
            let (a, b) = if df <= dg { (&f, &g) } else { (&g, &f) };
            let pa = Poly::from_coefficients(field, x, a);
            let pb = Poly::from_coefficients(field, x, b);
            if pa.divides(&pb) {
                return a.clone();
            }
        }
    }
    let (a, b) = if df >= dg { (f, g) } else { (g, f) };
    subresultant_gcd(a, b, field)
}

/// Degree in `x` of the gcd after substituting pseudo-random integers for the
/// other variables. This bounds the true degree from above whenever both
/// leading coefficients stay nonzero.
fn evaluated_gcd_degree(f: &[Poly], g: &[Poly], others: &[Var], field: Field) -> Option<usize> {
    let mut state: u64 =
        0x9E37_79B9_7F4A_7C15 ^ (others.len() as u64).wrapping_mul(0x100_0000_01B3);
    for _attempt in 0..4 {
        let point: Vec<(Var, Scalar)> = others
            .iter()
            .map(|&v| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (v, field.from_int(((state >> 33) % 97) as i64 + 3))
            })
            .collect();
        let ev = |u: &[Poly]| -> Vec<Scalar> {
            u.iter()
                .map(|c| {
                    c.eval_partial(&point)
                        .as_constant()
                        .expect("all other variables evaluated")
                })
                .collect()
        };
        let (ef, eg) = (ev(f), ev(g));
        if ef.last().is_some_and(Scalar::is_zero) || eg.last().is_some_and(Scalar::is_zero) {
            continue;
        }
        return Some(univariate_gcd_degree(ef, eg));
    }
    None
}

fn univariate_gcd_degree(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> usize {
    let trim_s = |v: &mut Vec<Scalar>| {
        while v.last().is_some_and(Scalar::is_zero) {
            v.pop();
        }
    };
    trim_s(&mut a);
    trim_s(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a mod b
        let lb_inv = b.last().expect("nonempty").inv();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = a.last().expect("nonempty").mul(&lb_inv);
            for (i, c) in b.iter().enumerate() {
                a[shift + i] = a[shift + i].sub(&q.mul(c));
            }
            a.pop();
            trim_s(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Pseudo-remainder of `a` by `b` (deg a ≥ deg b).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = degree(b);
    let lb = &b[db];
    let mut r = a.to_vec();
    let da = degree(a);
    let mut steps = 0u32;
    loop {
        if is_zero_u(&r) {
            break;
        }
        let dr = degree(&r);
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                r[shift + i] = r[shift + i].sub(&lr.mul(c));
            }
        }
        debug_assert!(r[dr].is_zero());
        r.truncate(dr.max(1));
        r = trim(r);
        steps += 1;
    }
    let missing = (da - db + 1) as u32 - steps;
    if missing > 0 {
        let k = lb.pow(missing);
        for c in r.iter_mut() {
            *c = c.mul(&k);
        }
    }
    trim(r)
}

fn subresultant_gcd(mut a: Vec<Poly>, mut b: Vec<Poly>, field: Field) -> Vec<Poly> {
    let one = Poly::one(field);
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let d = (degree(&a) - degree(&b)) as u32;
        let r = prem(&a, &b);
        if is_zero_u(&r) {
            return primitive_part(b);
        }
        if degree(&r) == 0 {
            return vec![one];
        }
        let divisor = g.mul(&h.pow(d));
        a = b;
        b = r
            .iter()
            .map(|c| {
                c.div_exact(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = a[degree(&a)].clone();
        h = if d == 0 {
            h
        } else {
            g.pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant h update is exact")
        };
    }
}

fn primitive_part(u: Vec<Poly>) -> Vec<Poly> {
    let c = content(&u);
    primitive(&u, &c)
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
        let f = x.pow(2).sub(&y.pow(2));
        assert_eq!(poly_gcd(&f, &x.add(&y)), x.add(&y));
        assert!(poly_gcd(&f, &Poly::int(1)).is_one());
        assert_eq!(poly_gcd(&f, &Poly::zero(Field::Rational)), f);
    }

    #[test]
    fn common_factor_recovered() {
        let (x, y, s, t) = (v("x"), v("y"), v("s"), v("t"));
        let f = x.pow(2).add(&y).add(&Poly::int(1));
        let g = x.mul(&y).sub(&Poly::int(2));
        let st = s.mul(&t).add(&x.mul(&s)).sub(&Poly::int(3));
        let got = poly_gcd(&st.mul(&f), &st.mul(&g));
        assert_eq!(got, st.monic());
    }

    #[test]
    fn nontrivial_multivariate() {
        let (a, x1, x2, x3) = (v("a"), v("x1"), v("x2"), v("x3"));
        let h = x1.pow(2).sub(&a.mul(&x2.pow(2))).add(&x3);
        let p = x1.add(&x3.pow(2)).sub(&a);
        let q = x2.mul(&x3).add(&a.pow(2)).add(&x1.pow(3));
        let got = poly_gcd(&h.mul(&p).mul(&p), &h.mul(&q).mul(&p));
        assert_eq!(got, h.mul(&p).monic());
    }

    #[test]
    fn cyclotomic_coefficients() {
        let z = Scalar::zeta_pow(3, 1).unwrap();
        let x = Poly::var_in(Field::Cyclotomic(3), Var::named("x"));
        let y = Poly::var_in(Field::Cyclotomic(3), Var::named("y"));
        let f = x.sub(&Poly::constant(z.clone()).mul(&y));
        let g = x.add(&y);
        let got = poly_gcd(&f.mul(&g), &f.mul(&x.sub(&y)));
        assert_eq!(got, f.monic());
    }
}
