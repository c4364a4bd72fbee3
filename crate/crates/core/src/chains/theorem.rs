//! The discriminant `θ` of the generic plane section of `ψ = φ_n ⊥ ⟨−a_{n+1}⟩`
//! and the quadratic norm identity that turns it into `φ_{n+1}`.

use serde::Serialize;

use crate::algebra::{Matrix, RatFunc, Scalar, Var};
use crate::cn::{build_cn_with, default_params, Check, CnConfig};
use crate::expr::print_canonical;
use crate::qforms::{bilinear, pfister, qform_eval, QForm};

use super::ChainError;

#[derive(Debug, Clone, Serialize)]
pub struct ThetaReport {
    pub n: usize,
    /// `ψ(u)ψ(v) − b(u, v)²`.
    pub theta: String,
    /// `−a_{n+1} φ(1, x…) + φ'(z…)`, with `z` written out.
    pub closed_form: String,
    pub z: Vec<String>,
    /// Consecutive lines of the reduction.
    pub lines: Vec<Check>,
    pub y_zero: Check,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|c| c.passed) && self.y_zero.passed
    }
}

fn vars(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<RatFunc> {
    range
        .map(|i| RatFunc::var(Var::indexed(prefix, i)))
        .collect()
}

fn with_head(head: RatFunc, tail: &[RatFunc]) -> Vec<RatFunc> {
    std::iter::once(head).chain(tail.iter().cloned()).collect()
}

/// The pieces shared by the θ reduction and the norm identity.
struct Setup {
    a_next: RatFunc,
    phi: QForm,
    phi_pure: QForm,
    x: Vec<RatFunc>,
    y: Vec<RatFunc>,
    /// `(0, y)·C_n` at `x_1 = 1`.
    z_full: Vec<RatFunc>,
    m: Matrix,
}

fn setup(n: usize, cfg: &CnConfig) -> Result<Setup, ChainError> {
    let params = default_params(n + 1);
    let rec = build_cn_with(n, &params[..n], cfg)?;
    let field = rec.field();
    let special = rec.specialize(&[(rec.xs[0], Scalar::int(1))])?;
    let dim = 1 << n;
    let phi = pfister(&rec.params)?;
    let phi_pure = QForm::diagonal(phi.diag()[1..].to_vec())?;
    let x = vars("x", 2..=dim);
    let y = vars("y", 2..=dim);
    let z_full = Matrix::vec_mul(&with_head(RatFunc::zero(field), &y), &special)?;
    Ok(Setup {
        a_next: RatFunc::var(params[n]),
        phi,
        phi_pure,
        x,
        y,
        z_full,
        m: special.minor(0, 0),
    })
}

pub fn theta_reduce(n: usize) -> Result<ThetaReport, ChainError> {
    theta_reduce_with(n, &CnConfig::default())
}

pub fn theta_reduce_with(n: usize, cfg: &CnConfig) -> Result<ThetaReport, ChainError> {
    let st = setup(n, cfg)?;
    let field =
        st.x.first()
            .map_or(crate::algebra::Field::Rational, RatFunc::field);
    let (zero, one) = (RatFunc::zero(field), RatFunc::one(field));
    let a = &st.a_next;

    // ψ ≅ ⟨1, −a_{n+1}⟩ ⊥ φ' in the coordinates of the generic plane
    let mut psi_diag = vec![one.clone(), a.neg()];
    psi_diag.extend(st.phi_pure.diag().iter().cloned());
    let psi = QForm::diagonal(psi_diag)?;
    let u: Vec<RatFunc> = [one.clone(), zero.clone()]
        .into_iter()
        .chain(st.x.iter().cloned())
        .collect();
    let v: Vec<RatFunc> = [zero.clone(), one.clone()]
        .into_iter()
        .chain(st.y.iter().cloned())
        .collect();
    let b_uv = bilinear(&psi, &u, &v)?;

    let phi_pure_x = qform_eval(&st.phi_pure, &st.x)?;
    let phi_pure_y = qform_eval(&st.phi_pure, &st.y)?;
    let phi1x = qform_eval(&st.phi, &with_head(one.clone(), &st.x))?;
    let phi0y = qform_eval(&st.phi, &with_head(zero.clone(), &st.y))?;
    let b2 = b_uv.pow(2);

    let l1 = qform_eval(&psi, &u)?.mul(&qform_eval(&psi, &v)?).sub(&b2);
    let l2 = one.add(&phi_pure_x).mul(&a.neg().add(&phi_pure_y)).sub(&b2);
    let l3 = phi1x.mul(&a.neg().add(&phi_pure_y)).sub(&b2);
    let head = a.neg().mul(&phi1x);
    let l4 = head.add(&phi1x.mul(&phi0y)).sub(&b2);
    let l5 = head.add(&qform_eval(&st.phi, &st.z_full)?).sub(&b2);
    // first coordinate written as (0, y) A_φ (1, x)ᵗ
    let gram = st.phi.gram();
    let z1 = Matrix::vec_mul(&with_head(zero.clone(), &st.y), &gram)?
        .iter()
        .zip(with_head(one.clone(), &st.x))
        .fold(zero.clone(), |acc, (p, q)| acc.add(&p.mul(&q)));
    let l6 = head
        .add(&qform_eval(&st.phi, &with_head(z1, &st.z_full[1..]))?)
        .sub(&b2);
    let z1_pure = bilinear(&st.phi_pure, &st.y, &st.x)?;
    let l7 = head
        .add(&qform_eval(&st.phi, &with_head(z1_pure, &st.z_full[1..]))?)
        .sub(&b2);
    let l8 = head.add(&qform_eval(&st.phi_pure, &st.z_full[1..])?);

    let lines = [&l1, &l2, &l3, &l4, &l5, &l6, &l7, &l8];
    let mut checks: Vec<Check> = lines
        .windows(2)
        .enumerate()
        .map(|(k, w)| Check::from_values(&format!("line {} = line {}", k + 1, k + 2), w[0], w[1]))
        .collect();
    let ym = Matrix::vec_mul(&st.y, &st.m)?;
    checks.push(Check {
        name: "(z2, ...) = (y2, ...) M".into(),
        passed: ym.as_slice() == &st.z_full[1..],
        detail: None,
    });

    let y_point: Vec<(Var, Scalar)> = (2..=1usize << n)
        .map(|i| (Var::indexed("y", i), field.zero()))
        .collect();
    let y_zero = Check::from_values("theta at y = 0", &l1.eval_partial(&y_point)?, &head);

    Ok(ThetaReport {
        n,
        theta: print_canonical(&l1),
        closed_form: print_canonical(&l8),
        z: st.z_full[1..].iter().map(print_canonical).collect(),
        lines: checks,
        y_zero,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NormReport {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
    pub checks: Vec<Check>,
}

impl NormReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn norm_identity(n: usize) -> Result<NormReport, ChainError> {
    norm_identity_with(n, &CnConfig::default())
}

/// `m² − a_{n+1} φ(1,x) w² + φ'(z) w² = φ_{n+1}(m, w z, w, w x)`, first with
/// free `z`, then with `z = (y2, …) M`, where the left side is the norm
/// `m² + θ w²` of `m + w √−θ`.
pub fn norm_identity_with(n: usize, cfg: &CnConfig) -> Result<NormReport, ChainError> {
    let st = setup(n, cfg)?;
    let dim = 1usize << n;
    let field =
        st.x.first()
            .map_or(crate::algebra::Field::Rational, RatFunc::field);
    let one = RatFunc::one(field);
    let (m, w) = (RatFunc::named("m"), RatFunc::named("w"));
    let phi_next = pfister(
        &default_params(n + 1)
            .into_iter()
            .map(RatFunc::var)
            .collect::<Vec<_>>(),
    )?;
    let phi1x = qform_eval(&st.phi, &with_head(one.clone(), &st.x))?;

    let side = |z: &[RatFunc]| -> Result<(RatFunc, RatFunc), ChainError> {
        let w2 = w.pow(2);
        let lhs = m
            .pow(2)
            .sub(&st.a_next.mul(&phi1x).mul(&w2))
            .add(&qform_eval(&st.phi_pure, z)?.mul(&w2));
        let mut t = vec![m.clone()];
        t.extend(z.iter().map(|e| w.mul(e)));
        t.push(w.clone());
        t.extend(st.x.iter().map(|e| w.mul(e)));
        Ok((lhs, qform_eval(&phi_next, &t)?))
    };

    let z_free = vars("z", 2..=dim);
    let (lhs, rhs) = side(&z_free)?;
    let mut checks = vec![Check::from_values("norm identity, free z", &lhs, &rhs)];
    let (lz, rz) = side(&st.z_full[1..])?;
    checks.push(Check::from_values("norm identity, z = y M", &lz, &rz));
    let theta = theta_reduce_with(n, cfg)?;
    let theta_rf = crate::expr::parse_ratfunc(&theta.closed_form)
        .map_err(|e| ChainError::Identity(e.to_string()))?;
    checks.push(Check::from_values(
        "m^2 + theta w^2",
        &m.pow(2).add(&theta_rf.mul(&w.pow(2))),
        &lz,
    ));
    let w0 = [(Var::named("w"), field.zero())];
    let m2 = m.pow(2);
    checks.push(Check::from_values(
        "w = 0, left",
        &lhs.eval_partial(&w0)?,
        &m2,
    ));
    checks.push(Check::from_values(
        "w = 0, right",
        &rhs.eval_partial(&w0)?,
        &m2,
    ));
    Ok(NormReport {
        n,
        lhs: print_canonical(&lhs),
        rhs: print_canonical(&rhs),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_levels_one_and_two() {
        for n in 1..=2 {
            let r = theta_reduce(n).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = theta_reduce(1).unwrap();
        assert_eq!(r.closed_form, "-a2 - a1*y2^2 + a1*a2*x2^2");
    }

    #[test]
    fn norm_levels_one_and_two() {
        for n in 1..=2 {
            let r = norm_identity(n).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
