//! The interchange and scalar lemmas as explicit substitution chains.

use std::collections::BTreeSet;

use crate::algebra::{RatFunc, Substitution, Var};
use crate::cn::{build_cn_over, CnConfig, CnRecord};
use crate::qforms::{pfister, qform_eval, QForm};

use super::{verify_step, ChainError, Hypersurface, SubstChain};

/// Coordinate names of a generic zero `(x, y, z)`: `x` and `y` have the
/// dimension of `φ`, `z` is a single coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVars {
    pub x: String,
    pub y: String,
    pub z: String,
    pub dim: usize,
}

impl ChainVars {
    pub fn new(dim: usize) -> Self {
        ChainVars {
            x: "x".into(),
            y: "y".into(),
            z: "z".into(),
            dim,
        }
    }

    pub fn xs(&self) -> Vec<Var> {
        (1..=self.dim).map(|i| Var::indexed(&self.x, i)).collect()
    }

    pub fn ys(&self) -> Vec<Var> {
        (1..=self.dim).map(|i| Var::indexed(&self.y, i)).collect()
    }

    pub fn z(&self) -> Var {
        Var::named(&self.z)
    }

    fn all(&self) -> Vec<Var> {
        let mut v = self.xs();
        v.extend(self.ys());
        v.push(self.z());
        v
    }
}

fn prime(s: &str) -> String {
    format!("{s}p")
}

fn values(vs: &[Var]) -> Vec<RatFunc> {
    vs.iter().map(|&v| RatFunc::var(v)).collect()
}

fn param_vars<'a>(items: impl IntoIterator<Item = &'a RatFunc>) -> BTreeSet<Var> {
    items.into_iter().flat_map(|p| p.vars()).collect()
}

fn eval(phi: &QForm, vs: &[Var]) -> Result<RatFunc, ChainError> {
    Ok(qform_eval(phi, &values(vs))?)
}

/// `C_n` over fresh coordinates with the given prefix.
fn cn_over(params: &[RatFunc], prefix: &str) -> Result<CnRecord, ChainError> {
    let xs: Vec<Var> = (1..=1usize << params.len())
        .map(|i| Var::indexed(prefix, i))
        .collect();
    Ok(build_cn_over(params, &xs, &CnConfig::default())?)
}

fn hyper(e: RatFunc, label: &str) -> Result<Hypersurface, ChainError> {
    Hypersurface::from_ratfunc(&e, label)
}

/// `φ(x) − b φ(y) − c z²` to `φ(x'') − c φ(y') − b z'²` for `φ = ⟨⟨params⟩⟩`,
/// starting from the default coordinate names.
pub fn build_interchange_chain(
    params: &[RatFunc],
    b: &RatFunc,
    c: &RatFunc,
) -> Result<SubstChain, ChainError> {
    let dim = 1 << params.len();
    Ok(interchange_on(params, b, c, &ChainVars::new(dim))?.0)
}

/// The interchange chain on given source coordinates; also returns the
/// target coordinates.
pub fn interchange_on(
    params: &[RatFunc],
    b: &RatFunc,
    c: &RatFunc,
    src: &ChainVars,
) -> Result<(SubstChain, ChainVars), ChainError> {
    let phi = pfister(params)?;
    let fixed = param_vars(params.iter().chain([b, c]));
    let (x, y, z) = (src.xs(), src.ys(), src.z());
    let zr = RatFunc::var(z);
    let phi_y = eval(&phi, &y)?;

    let e0 = hyper(
        eval(&phi, &x)?.sub(&b.mul(&phi_y)).sub(&c.mul(&zr.pow(2))),
        "phi(x) - b*phi(y) - c*z^2",
    )?;

    // x' = x·C(y)/φ(y), so that φ(x) = φ(y) φ(x')
    let v1 = ChainVars {
        x: prime(&src.x),
        ..src.clone()
    };
    let xp = v1.xs();
    let cy = cn_over(params, &src.y)?;
    let row = crate::algebra::Matrix::vec_mul(&values(&x), &cy.cn)?;
    let inv_phi_y = phi_y.inv()?;
    let mut s1 = Substitution::new();
    for (v, e) in xp.iter().zip(&row) {
        s1.insert(*v, e.mul(&inv_phi_y));
    }
    let s1 = s1.fix(y.iter().copied().chain([z]).chain(fixed.iter().copied()));
    let phi_xp = eval(&phi, &xp)?;
    let e1 = hyper(
        phi_y
            .mul(&phi_xp)
            .sub(&b.mul(&phi_y))
            .sub(&c.mul(&zr.pow(2))),
        "phi(y)*phi(x') - b*phi(y) - c*z^2",
    )?;
    let st1 = verify_step(&e0, &e1, &s1)?;

    // y' = y/φ(y)
    let v2 = ChainVars {
        y: prime(&src.y),
        ..v1.clone()
    };
    let yp = v2.ys();
    let mut s2 = Substitution::new();
    for (v, w) in yp.iter().zip(&y) {
        s2.insert(*v, RatFunc::var(*w).mul(&inv_phi_y));
    }
    let s2 = s2.fix(xp.iter().copied().chain([z]).chain(fixed.iter().copied()));
    let phi_yp = eval(&phi, &yp)?;
    let e2 = hyper(
        phi_xp.sub(b).sub(&c.mul(&zr.pow(2)).mul(&phi_yp)),
        "phi(x') - b - c*z^2*phi(y')",
    )?;
    let st2 = verify_step(&e1, &e2, &s2)?;

    // x'' = x'/z
    let v3 = ChainVars {
        x: prime(&v2.x),
        ..v2.clone()
    };
    let xpp = v3.xs();
    let inv_z = zr.inv()?;
    let mut s3 = Substitution::new();
    for (v, w) in xpp.iter().zip(&xp) {
        s3.insert(*v, RatFunc::var(*w).mul(&inv_z));
    }
    let s3 = s3.fix(yp.iter().copied().chain([z]).chain(fixed.iter().copied()));
    let phi_xpp = eval(&phi, &xpp)?;
    let z2 = zr.pow(2);
    let e3 = hyper(
        z2.mul(&phi_xpp).sub(b).sub(&c.mul(&z2).mul(&phi_yp)),
        "z^2*phi(x'') - b - c*z^2*phi(y')",
    )?;
    let st3 = verify_step(&e2, &e3, &s3)?;

    // z' = 1/z
    let v4 = ChainVars {
        z: prime(&v3.z),
        ..v3.clone()
    };
    let zp = v4.z();
    let s4 = Substitution::new()
        .with(zp, inv_z)
        .fix(xpp.iter().chain(&yp).copied().chain(fixed.iter().copied()));
    let e4 = hyper(
        phi_xpp
            .sub(&c.mul(&phi_yp))
            .sub(&b.mul(&RatFunc::var(zp).pow(2))),
        "phi(x'') - c*phi(y') - b*z'^2",
    )?;
    let st4 = verify_step(&e3, &e4, &s4)?;

    Ok((SubstChain::new(vec![st1, st2, st3, st4])?, v4))
}

/// Runs the interchange with `(b, c)` and then with `(c, b)`. The end
/// equation is the start equation in renamed coordinates; the flag reports
/// that this renaming check passed.
pub fn interchange_round_trip(
    params: &[RatFunc],
    b: &RatFunc,
    c: &RatFunc,
) -> Result<(SubstChain, bool), ChainError> {
    let src = ChainVars::new(1 << params.len());
    let (first, mid) = interchange_on(params, b, c, &src)?;
    let (second, end) = interchange_on(params, c, b, &mid)?;
    let chain = first.then(&second)?;
    let back: Vec<(Var, Var)> = end.all().into_iter().zip(src.all()).collect();
    let renamed = chain
        .target()
        .equation
        .rename(&|v| back.iter().find(|p| p.0 == v).map_or(v, |p| p.1));
    let same = renamed == chain.source().equation && !chain.composed_multiplier.is_zero();
    Ok((chain, same))
}

/// `φ(x) − b φ(x₀) y²` to `φ(x') − b y'²`: multiply by `φ(x₀)`, then
/// `x' = x·C_n(x₀)`, `y' = φ(x₀) y`. With `x0 = None` the point is generic
/// (`x0_1, x0_2, …`).
pub fn build_scalar_chain(
    params: &[RatFunc],
    b: &RatFunc,
    x0: Option<&[RatFunc]>,
) -> Result<SubstChain, ChainError> {
    let dim = 1usize << params.len();
    let phi = pfister(params)?;
    let generic = cn_over(params, "x0_")?;
    let (cx0, point) = match x0 {
        None => (generic.cn.clone(), values(&generic.xs)),
        Some(p) => (generic.at(p)?, p.to_vec()),
    };
    let phi_x0 = qform_eval(&phi, &point)?;
    if phi_x0.is_zero() {
        return Err(ChainError::Identity("phi(x0) vanishes".into()));
    }
    let x: Vec<Var> = (1..=dim).map(|i| Var::indexed("x", i)).collect();
    let y = Var::named("y");
    let fixed: Vec<Var> = param_vars(params.iter().chain([b]).chain(&point))
        .into_iter()
        .collect();
    let yr = RatFunc::var(y);
    let phi_x = eval(&phi, &x)?;

    let e0 = hyper(
        phi_x.sub(&b.mul(&phi_x0).mul(&yr.pow(2))),
        "phi(x) - b*phi(x0)*y^2",
    )?;
    let e1 = hyper(
        phi_x0.mul(&e0.as_ratfunc()),
        "phi(x0)*phi(x) - b*phi(x0)^2*y^2",
    )?;
    let id = Substitution::identity(x.iter().copied().chain([y]).chain(fixed.iter().copied()));
    let st1 = verify_step(&e0, &e1, &id)?;

    let xp: Vec<Var> = (1..=dim).map(|i| Var::indexed("xp", i)).collect();
    let yp = Var::named("yp");
    let row = crate::algebra::Matrix::vec_mul(&values(&x), &cx0)?;
    let mut s = Substitution::new();
    for (v, e) in xp.iter().zip(row) {
        s.insert(*v, e);
    }
    s.insert(yp, phi_x0.mul(&yr));
    let s = s.fix(fixed.iter().copied());
    let e2 = hyper(
        eval(&phi, &xp)?.sub(&b.mul(&RatFunc::var(yp).pow(2))),
        "phi(x') - b*y'^2",
    )?;
    let st2 = verify_step(&e1, &e2, &s)?;
    SubstChain::new(vec![st1, st2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_ratfunc, print_canonical};

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn interchange_dim_two() {
        let ch = build_interchange_chain(&[r("a")], &r("b"), &r("c")).unwrap();
        assert_eq!(ch.steps.len(), 4);
        let m: Vec<RatFunc> = ch.steps.iter().map(|s| s.multiplier.clone()).collect();
        assert_eq!(m, [r("1"), r("1/(y1^2 - a*y2^2)"), r("1"), r("1/z^2")]);
        assert_eq!(ch.composed_multiplier, r("1/((y1^2 - a*y2^2)*z^2)"));
        assert_eq!(
            print_canonical(&ch.composed.image(Var::named("zp")).unwrap()),
            "1/z"
        );
    }

    #[test]
    fn interchange_equal_scalars_is_a_renaming() {
        let (b, c) = (r("b"), r("b"));
        let ch = build_interchange_chain(&[r("a")], &b, &c).unwrap();
        let names = [
            ("xpp1", "x1"),
            ("xpp2", "x2"),
            ("yp1", "y1"),
            ("yp2", "y2"),
            ("zp", "z"),
        ];
        let ren = ch.target().equation.rename(&|v| {
            names
                .iter()
                .find(|p| Var::named(p.0) == v)
                .map_or(v, |p| Var::named(p.1))
        });
        assert_eq!(ren, ch.source().equation);
    }

    #[test]
    fn round_trip() {
        let (ch, same) = interchange_round_trip(&[r("a")], &r("b"), &r("c")).unwrap();
        assert!(same);
        assert_eq!(ch.steps.len(), 8);
    }

    #[test]
    fn scalar_chain_and_specializations() {
        let ch = build_scalar_chain(&[r("a")], &r("b"), None).unwrap();
        assert_eq!(ch.composed_multiplier, r("x0_1^2 - a*x0_2^2"));
        let e1 = build_scalar_chain(&[r("a")], &r("b"), Some(&[r("1"), r("0")])).unwrap();
        assert!(e1.composed_multiplier.is_one());
        // C_1(e_1) = diag(1, -1)
        assert_eq!(e1.composed.image(Var::named("xp1")), Some(r("x1")));
        assert_eq!(e1.composed.image(Var::named("xp2")), Some(r("-x2")));
        assert_eq!(e1.composed.image(Var::named("yp")), Some(r("y")));
        let norm = build_scalar_chain(&[r("a")], &r("b"), Some(&[r("u1"), r("u2")])).unwrap();
        assert_eq!(print_canonical(&norm.composed_multiplier), "u1^2 - a*u2^2");
    }
}
