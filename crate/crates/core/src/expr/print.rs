//! Canonical text form, parseable by [`super::parse_expr`].
//!
//! Terms appear by ascending total degree and, within a degree, by
//! descending graded-lex order over variable names: `x1^2 - a*x2^2`.

use std::cmp::Ordering;
use std::fmt::Write;

use crate::algebra::{Monomial, Poly, RatFunc, Scalar};

fn print_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.canonical_cmp(a))
}

fn print_monomial(m: &Monomial, out: &mut String) {
    for (k, (v, e)) in m.canonical_pairs().iter().enumerate() {
        if k > 0 {
            out.push('*');
        }
        out.push_str(v.name());
        if *e > 1 {
            write!(out, "^{e}").expect("write to string");
        }
    }
}

pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<&(Monomial, Scalar)> = p.terms().iter().collect();
    terms.sort_by(|a, b| print_order(&a.0, &b.0));
    let alone = terms.len() == 1;
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative_display();
        let mag = if neg { c.neg() } else { c.clone() };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let compound = mag.is_compound();
        if m.is_one() {
            if compound && !alone {
                write!(out, "({mag})").expect("write to string");
            } else {
                write!(out, "{mag}").expect("write to string");
            }
            continue;
        }
        if !mag.is_one() {
            if compound {
                write!(out, "({mag})*").expect("write to string");
            } else {
                write!(out, "{mag}*").expect("write to string");
            }
        }
        print_monomial(m, &mut out);
    }
    out
}

/// A denominator prints bare only when it is a single variable power.
fn bare_denominator(p: &Poly) -> bool {
    match p.terms() {
        [(m, c)] => c.is_one() && m.pairs().len() == 1,
        _ => false,
    }
}

pub fn print_canonical(e: &RatFunc) -> String {
    let num = print_poly(e.numer());
    if e.is_poly() {
        return num;
    }
    let num = if e.numer().len() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = print_poly(e.denom());
    if bare_denominator(e.denom()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_ratfunc;
    use super::*;

    fn rt(s: &str) -> String {
        print_canonical(&parse_ratfunc(s).unwrap())
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(rt("x1^2 - a*x2^2"), "x1^2 - a*x2^2");
        assert_eq!(rt("-a*x2^2 + x1*x1"), "x1^2 - a*x2^2");
        assert_eq!(rt("0"), "0");
        assert_eq!(rt("x - a2*b2 - a1*b1"), "x - a1*b1 - a2*b2");
        assert_eq!(rt("3/2*x"), "3/2*x");
        assert_eq!(rt("-1/(x+y)"), "-1/(x + y)");
        assert_eq!(rt("(1+x)/y^2"), "(1 + x)/y^2");
        assert_eq!(rt("x/(2*y)"), "1/2*x/y");
    }

    #[test]
    fn cyclotomic_coefficients() {
        assert_eq!(rt("(1+zeta(3))*x + 2"), "2 + (1 + zeta(3))*x");
        assert_eq!(rt("-zeta(5)^2*x"), "-zeta(5)^2*x");
        assert_eq!(rt("zeta(3) + zeta(3)^2"), "-1");
    }

    #[test]
    fn round_trip_is_fixed_point() {
        for s in [
            "x1^2 - a*x2^2",
            "(x - y)/(x + y)",
            "1/2*x/y",
            "-3/(a*b)",
            "2 + (1 + zeta(3))*x",
            "-1 - zeta(3)",
        ] {
            let once = rt(s);
            assert_eq!(rt(&once), once, "{s}");
            assert_eq!(parse_ratfunc(&once).unwrap(), parse_ratfunc(s).unwrap());
        }
    }
}
