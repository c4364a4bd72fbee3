//! Birational maps between affine hypersurfaces, certified step by step.
//!
//! A step carries a substitution expressing the target coordinates in terms
//! of the source ones and a multiplier `u` with `G(s) = u · F`, where `F` and
//! `G` are the source and target equations.

mod dispatch;
mod lemmas;
mod theorem;

pub use dispatch::{
    apply_moves, dispatch_pequiv_move, dispatch_with_cap, expected_final, lift_pair_witness,
    swap_witness, twist_witness, MoveCase, MoveKind, MovePayload, PfisterMove, Presentation,
    CHAIN_DIM_CAP,
};
pub use lemmas::{
    build_interchange_chain, build_scalar_chain, interchange_on, interchange_round_trip, ChainVars,
};
pub use theorem::{
    norm_identity, norm_identity_with, theta_reduce, theta_reduce_with, NormReport, ThetaReport,
};

use serde_json::{json, Value};

use crate::algebra::{substitute, AlgebraError, Poly, RatFunc, Substitution, Var};
use crate::cn::CnError;
use crate::expr::{print_canonical, print_poly, subst_to_json};
use crate::qforms::QFormError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("{label}: pulled back equation is not a multiple of the source equation")]
    NotAMultiple { label: String },
    #[error("{label}: multiplier vanishes")]
    ZeroMultiplier { label: String },
    #[error("step {0} does not start where step {1} ends")]
    Disconnected(usize, usize),
    #[error("empty chain")]
    Empty,
    #[error("composed certificate does not match")]
    Composition,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("{0}")]
    Identity(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cn(#[from] CnError),
    #[error(transparent)]
    QForm(#[from] QFormError),
}

/// The zero locus of `equation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    pub equation: Poly,
    pub label: String,
}

impl Hypersurface {
    pub fn new(equation: Poly, label: impl Into<String>) -> Result<Self, ChainError> {
        if equation.is_zero() {
            return Err(AlgebraError::DivisionByZero.into());
        }
        Ok(Hypersurface {
            equation,
            label: label.into(),
        })
    }

    /// Numerator of a rational expression, which cuts out the same locus
    /// away from the poles.
    pub fn from_ratfunc(e: &RatFunc, label: impl Into<String>) -> Result<Self, ChainError> {
        Self::new(e.numer().clone(), label)
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::from_poly(self.equation.clone())
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.equation.vars()
    }
}

#[derive(Debug, Clone)]
pub struct ChainStep {
    pub subst: Substitution,
    pub multiplier: RatFunc,
    pub from: Hypersurface,
    pub to: Hypersurface,
}

impl ChainStep {
    /// Recomputes the certificate from the stored parts.
    pub fn reverify(&self) -> Result<(), ChainError> {
        let pulled = substitute(&self.to.as_ratfunc(), &self.subst)?;
        if self.multiplier.is_zero() || pulled != self.multiplier.mul(&self.from.as_ratfunc()) {
            return Err(ChainError::NotAMultiple {
                label: self.to.label.clone(),
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "from": print_poly(&self.from.equation),
            "to": print_poly(&self.to.equation),
            "subst": subst_to_json(&self.subst),
            "multiplier": print_canonical(&self.multiplier),
        })
    }
}

/// Certifies `G(s) = u · F` with `u` a nonzero rational function whose
/// numerator and denominator are not multiples of `F`.
pub fn verify_step(
    from: &Hypersurface,
    to: &Hypersurface,
    s: &Substitution,
) -> Result<ChainStep, ChainError> {
    let pulled = substitute(&to.as_ratfunc(), s)?;
    let label = to.label.clone();
    if pulled.is_zero() {
        return Err(ChainError::ZeroMultiplier { label });
    }
    let q = pulled
        .numer()
        .div_exact(&from.equation)
        .ok_or_else(|| ChainError::NotAMultiple {
            label: label.clone(),
        })?;
    let u = RatFunc::new(q, pulled.denom().clone())?;
    if !from.equation.is_constant() && from.equation.divides(u.numer()) {
        return Err(ChainError::NotAMultiple { label });
    }
    Ok(ChainStep {
        subst: s.clone(),
        multiplier: u,
        from: from.clone(),
        to: to.clone(),
    })
}

/// `second ∘ first`: the images of `second` written in the source
/// coordinates of `first`.
pub fn compose(first: &Substitution, second: &Substitution) -> Result<Substitution, ChainError> {
    let mut out = Substitution::new();
    for (v, img) in second.mapped() {
        out.insert(v, substitute(img, first)?);
    }
    for v in second.fixed() {
        match first.image(v) {
            Some(img) if img != RatFunc::var(v) => out.insert(v, img),
            _ => out = out.fix([v]),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SubstChain {
    pub steps: Vec<ChainStep>,
    pub composed: Substitution,
    pub composed_multiplier: RatFunc,
}

impl SubstChain {
    /// Composes verified steps: `U_k = u_k(S_{k−1}) · U_{k−1}`.
    pub fn new(steps: Vec<ChainStep>) -> Result<Self, ChainError> {
        let first = steps.first().ok_or(ChainError::Empty)?;
        let mut composed = first.subst.clone();
        let mut mult = first.multiplier.clone();
        for (k, w) in steps.windows(2).enumerate() {
            if w[0].to.equation != w[1].from.equation {
                return Err(ChainError::Disconnected(k + 1, k));
            }
            mult = substitute(&w[1].multiplier, &composed)?.mul(&mult);
            composed = compose(&composed, &w[1].subst)?;
        }
        let chain = SubstChain {
            steps,
            composed,
            composed_multiplier: mult,
        };
        chain.verify()?;
        Ok(chain)
    }

    pub fn source(&self) -> &Hypersurface {
        &self.steps[0].from
    }

    pub fn target(&self) -> &Hypersurface {
        &self.steps[self.steps.len() - 1].to
    }

    /// Re-checks every step and the composed certificate.
    pub fn verify(&self) -> Result<(), ChainError> {
        for s in &self.steps {
            s.reverify()?;
        }
        let pulled = substitute(&self.target().as_ratfunc(), &self.composed)?;
        if self.composed_multiplier.is_zero()
            || pulled != self.composed_multiplier.mul(&self.source().as_ratfunc())
        {
            return Err(ChainError::Composition);
        }
        Ok(())
    }

    /// Concatenation; the first chain must end where `next` starts.
    pub fn then(&self, next: &SubstChain) -> Result<SubstChain, ChainError> {
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        SubstChain::new(steps)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "steps": self.steps.iter().map(ChainStep::to_json).collect::<Vec<_>>(),
            "composed": subst_to_json(&self.composed),
            "composed_multiplier": print_canonical(&self.composed_multiplier),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfunc;

    fn hs(s: &str) -> Hypersurface {
        Hypersurface::from_ratfunc(&parse_ratfunc(s).unwrap(), s).unwrap()
    }

    #[test]
    fn trivial_steps() {
        let f = hs("x^2 - a");
        let id = Substitution::identity([Var::named("x"), Var::named("a")]);
        assert!(verify_step(&f, &f, &id).unwrap().multiplier.is_one());
        let g = hs("y^2 - a");
        let s = Substitution::new()
            .with(Var::named("y"), parse_ratfunc("-x").unwrap())
            .fix([Var::named("a")]);
        assert!(verify_step(&f, &g, &s).unwrap().multiplier.is_one());
    }

    #[test]
    fn rejects_non_multiples() {
        let f = hs("x^2 - a");
        let g = hs("y^2 - a");
        let s = Substitution::new()
            .with(Var::named("y"), parse_ratfunc("x + 1").unwrap())
            .fix([Var::named("a")]);
        assert!(matches!(
            verify_step(&f, &g, &s),
            Err(ChainError::NotAMultiple { .. })
        ));
        let missing = Substitution::new().with(Var::named("y"), parse_ratfunc("x").unwrap());
        assert!(matches!(
            verify_step(&f, &g, &missing),
            Err(ChainError::Algebra(AlgebraError::UnmappedVariable(_)))
        ));
    }

    #[test]
    fn composition_tracks_multipliers() {
        let f = hs("x^2 - a");
        let g = hs("y^2 - a*z^2");
        let a = Var::named("a");
        // y = x/w, z = 1/w with w free is not allowed; use y = x*x2, z = x2
        let s1 = Substitution::new()
            .with(Var::named("y"), parse_ratfunc("x*x2").unwrap())
            .with(Var::named("z"), parse_ratfunc("x2").unwrap())
            .fix([a]);
        let st1 = verify_step(&f, &g, &s1).unwrap();
        assert_eq!(st1.multiplier, parse_ratfunc("x2^2").unwrap());
        let h = hs("v^2 - a");
        let s2 = Substitution::new()
            .with(Var::named("v"), parse_ratfunc("y/z").unwrap())
            .fix([a]);
        let st2 = verify_step(&g, &h, &s2).unwrap();
        let chain = SubstChain::new(vec![st1, st2]).unwrap();
        assert!(chain.composed_multiplier.is_one());
        assert_eq!(
            chain.composed.image(Var::named("v")),
            Some(parse_ratfunc("x").unwrap())
        );
    }
}
