//! Lowering syntax trees to canonical rational functions.

use crate::algebra::{AlgebraError, Field, Poly, RatFunc, Rational, Scalar, Var};

use super::parse::{parse_expr, ExprAst, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("division by an expression that is identically zero")]
    DivisionByZero,
    #[error("mixed zeta orders {0} and {1} in one document")]
    MixedZeta(u32, u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Json(String),
}

/// The single coefficient field implied by the `zeta(p)` symbols of a
/// document, or Q if there are none.
pub fn document_field<'a>(asts: impl IntoIterator<Item = &'a ExprAst>) -> Result<Field, ExprError> {
    let mut orders = Vec::new();
    for a in asts {
        a.zeta_orders(&mut orders);
    }
    let mut field = Field::Rational;
    for p in orders {
        match field {
            Field::Rational => field = Field::cyclotomic(p)?,
            Field::Cyclotomic(q) if q != p => return Err(ExprError::MixedZeta(q, p)),
            _ => {}
        }
    }
    Ok(field)
}

/// Lowers in the field implied by the tree itself.
pub fn lower(ast: &ExprAst) -> Result<RatFunc, ExprError> {
    let field = document_field([ast])?;
    lower_in(ast, field)
}

/// Lowers with coefficients in `field`, which must contain every `zeta` used.
pub fn lower_in(ast: &ExprAst, field: Field) -> Result<RatFunc, ExprError> {
    let (num, den) = lower_frac(ast, field)?;
    Ok(RatFunc::new(num, den)?)
}

/// Parses and lowers one expression on its own.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc, ExprError> {
    lower(&parse_expr(text)?)
}

/// Parses and lowers one expression into a given field.
pub fn parse_ratfunc_in(text: &str, field: Field) -> Result<RatFunc, ExprError> {
    lower_in(&parse_expr(text)?, field)
}

/// Parses several expressions as one document sharing a coefficient field.
pub fn parse_document(texts: &[&str]) -> Result<Vec<RatFunc>, ExprError> {
    let asts = texts
        .iter()
        .map(|t| parse_expr(t))
        .collect::<Result<Vec<_>, _>>()?;
    let field = document_field(asts.iter())?;
    asts.iter().map(|a| lower_in(a, field)).collect()
}

/// Unnormalized fraction; a single gcd at the end replaces one per operation.
type Frac = (Poly, Poly);

fn lower_frac(ast: &ExprAst, field: Field) -> Result<Frac, ExprError> {
    let one = || Poly::one(field);
    Ok(match ast {
        ExprAst::Int(n) => (
            Poly::constant(field.from_rational(Rational::from_bigint(n.clone()))),
            one(),
        ),
        ExprAst::Var(name) => (Poly::var_in(field, Var::new(name)?), one()),
        ExprAst::Zeta(p) => {
            if field != Field::Cyclotomic(*p) {
                return Err(match field {
                    Field::Cyclotomic(q) => ExprError::MixedZeta(q, *p),
                    Field::Rational => ExprError::Algebra(AlgebraError::FieldMismatch(
                        field,
                        Field::Cyclotomic(*p),
                    )),
                });
            }
            (Poly::constant(Scalar::zeta_pow(*p, 1)?), one())
        }
        ExprAst::Neg(a) => {
            let (n, d) = lower_frac(a, field)?;
            (n.neg(), d)
        }
        ExprAst::Add(a, b) | ExprAst::Sub(a, b) => {
            let (an, ad) = lower_frac(a, field)?;
            let (mut bn, bd) = lower_frac(b, field)?;
            if matches!(ast, ExprAst::Sub(..)) {
                bn = bn.neg();
            }
            if ad == bd {
                (an.add(&bn), ad)
            } else {
                (an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
            }
        }
        ExprAst::Mul(a, b) => {
            let (an, ad) = lower_frac(a, field)?;
            let (bn, bd) = lower_frac(b, field)?;
            (an.mul(&bn), ad.mul(&bd))
        }
        ExprAst::Div(a, b) => {
            let (an, ad) = lower_frac(a, field)?;
            let (bn, bd) = lower_frac(b, field)?;
            if bn.is_zero() {
                return Err(ExprError::DivisionByZero);
            }
            (an.mul(&bd), ad.mul(&bn))
        }
        ExprAst::Pow(a, e) => {
            let (n, d) = lower_frac(a, field)?;
            (n.pow(*e), d.pow(*e))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels() {
        let r = parse_ratfunc("(x^2-y^2)/(x+y)").unwrap();
        assert_eq!(r, parse_ratfunc("x - y").unwrap());
        assert!(r.is_poly());
    }

    #[test]
    fn zeta_relations() {
        assert!(parse_ratfunc("1+zeta(5)+zeta(5)^2+zeta(5)^3+zeta(5)^4")
            .unwrap()
            .is_zero());
        assert!(parse_ratfunc("zeta(3)^3").unwrap().is_one());
        assert_eq!(
            parse_ratfunc("zeta(3)*zeta(5)"),
            Err(ExprError::MixedZeta(3, 5))
        );
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(parse_ratfunc("x/(y-y)"), Err(ExprError::DivisionByZero));
    }

    #[test]
    fn document_shares_field() {
        let v = parse_document(&["x", "zeta(3)*x"]).unwrap();
        assert_eq!(v[0].field(), Field::Cyclotomic(3));
        assert_eq!(v[1].field(), Field::Cyclotomic(3));
    }
}
