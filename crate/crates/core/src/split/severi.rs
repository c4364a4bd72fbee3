//! The split Severi-Brauer map `f_L` and its compatibility with the cyclic
//! action, as identities in free rational function fields.
//!
//! `L` is modeled as `Q(b, x0, …, x_{p−2})` with `x_{p−1} = b/(x0⋯x_{p−2})`,
//! so `x0⋯x_{p−1} = b` holds by construction. The coordinates of the open
//! chart are `r_i = t_i/t_0` with `r_0 = 1` and `r_p = b`.

use serde::Serialize;

use super::{check_prime, SplitError};
use crate::algebra::{substitute, Matrix, RatFunc, Substitution, Var};
use crate::cn::Check;
use crate::expr::print_canonical;

pub const MAX_SB_P: u32 = 7;

#[derive(Debug, Clone)]
pub struct CyclicFunctionField {
    pub p: u32,
    pub b: Var,
    /// The free generators `x0, …, x_{p−2}`.
    pub free: Vec<Var>,
    /// `σ: x_i ↦ x_{i+1}`, fixing `b`.
    pub sigma: Substitution,
}

impl CyclicFunctionField {
    pub fn new(p: u32) -> Result<Self, SplitError> {
        check_prime(p, MAX_SB_P)?;
        let b = Var::named("b");
        let free: Vec<Var> = (0..p as usize - 1).map(|i| Var::indexed("x", i)).collect();
        let mut field = CyclicFunctionField {
            p,
            b,
            free,
            sigma: Substitution::new(),
        };
        let mut sigma = Substitution::new().fix([b]);
        for i in 0..p as usize - 1 {
            sigma.insert(field.free[i], field.gen(i + 1));
        }
        field.sigma = sigma;
        Ok(field)
    }

    /// `σ^i(x) = x_i`, indices mod `p`.
    pub fn gen(&self, i: usize) -> RatFunc {
        let i = i % self.p as usize;
        if i + 1 < self.p as usize {
            return RatFunc::var(self.free[i]);
        }
        let prod = self
            .free
            .iter()
            .fold(RatFunc::int(1), |acc, v| acc.mul(&RatFunc::var(*v)));
        RatFunc::var(self.b).div(&prod).expect("nonzero product")
    }

    /// Declares extra constants fixed by `σ`.
    pub fn fix_constants(&mut self, vars: impl IntoIterator<Item = Var>) {
        self.sigma = std::mem::take(&mut self.sigma).fix(vars);
    }

    pub fn apply_sigma(&self, e: &RatFunc) -> Result<RatFunc, SplitError> {
        Ok(substitute(e, &self.sigma)?)
    }

    /// `x0 x1 ⋯ x_{i−1}`; the empty product is 1 and `i = p` gives `b`.
    pub fn partial_norm(&self, i: usize) -> RatFunc {
        (0..i).fold(RatFunc::int(1), |acc, j| acc.mul(&self.gen(j)))
    }

    /// `∏ σ^i(u)`.
    pub fn norm(&self, u: &RatFunc) -> Result<RatFunc, SplitError> {
        let mut acc = RatFunc::int(1);
        let mut cur = u.clone();
        for _ in 0..self.p {
            acc = acc.mul(&cur);
            cur = self.apply_sigma(&cur)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SbReport {
    pub p: u32,
    /// `f_L(t_i/t_0)` for `i = 0..p`.
    pub images: Vec<String>,
    /// `f_L^{-1}(σ^i(x))`.
    pub inverse_images: Vec<String>,
    pub checks: Vec<Check>,
}

impl SbReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Equal as projective points: all cross products `u_i v_j − u_j v_i` vanish.
fn same_point(u: &[RatFunc], v: &[RatFunc]) -> bool {
    u.len() == v.len()
        && (0..u.len()).all(|i| (i + 1..u.len()).all(|j| u[i].mul(&v[j]) == u[j].mul(&v[i])))
}

pub fn sb_split_map(p: u32) -> Result<SbReport, SplitError> {
    let mut field = CyclicFunctionField::new(p)?;
    let pu = p as usize;
    let coeffs: Vec<Var> = (0..pu).map(|i| Var::indexed("c", i)).collect();
    field.fix_constants(coeffs.iter().copied());
    let b = RatFunc::var(field.b);
    let r_vars: Vec<Var> = (1..pu).map(|i| Var::indexed("r", i)).collect();
    let r = |i: usize| -> RatFunc {
        match i {
            0 => RatFunc::int(1),
            i if i == pu => b.clone(),
            i => RatFunc::var(r_vars[i - 1]),
        }
    };

    // f_L: r_i ↦ x0⋯x_{i−1}; f_L^{-1}: x_i ↦ r_{i+1}/r_i
    let mut f = Substitution::new().fix([field.b]);
    for i in 1..pu {
        f.insert(r_vars[i - 1], field.partial_norm(i));
    }
    let mut f_inv = Substitution::new().fix([field.b]);
    for i in 0..pu - 1 {
        f_inv.insert(field.free[i], r(i + 1).div(&r(i))?);
    }
    let mut checks = Vec::new();

    let relation = (0..pu).fold(RatFunc::int(1), |acc, i| acc.mul(&field.gen(i)));
    checks.push(Check::from_values("x0 x1 ... x_{p-1} = b", &relation, &b));
    for i in 0..pu {
        let mut cur = field.gen(i);
        for _ in 0..p {
            cur = field.apply_sigma(&cur)?;
        }
        checks.push(Check::from_values(
            &format!("sigma^p(x{i}) = x{i}"),
            &cur,
            &field.gen(i),
        ));
    }
    checks.push(Check::from_values(
        "f_L(t_p/t_0) = b",
        &field.partial_norm(pu),
        &b,
    ));

    // (a) f_L(σ·(t_i/t_0)) = σ·f_L(t_i/t_0), with σ·(t_i/t_0) = t_{i+1}/t_1
    for i in 0..pu {
        let moved = r(i + 1).div(&r(1))?;
        let lhs = substitute(&moved, &f)?;
        let rhs = field.apply_sigma(&field.partial_norm(i))?;
        checks.push(Check::from_values(
            &format!("equivariance at t{i}/t0"),
            &lhs,
            &rhs,
        ));
    }

    // (b) both composites are the identity
    for i in 0..pu {
        let back = substitute(&substitute(&field.gen(i), &f_inv)?, &f)?;
        checks.push(Check::from_values(
            &format!("f_L(f_L^-1(x{i})) = x{i}"),
            &back,
            &field.gen(i),
        ));
    }
    for i in 1..pu {
        let back = substitute(&field.partial_norm(i), &f_inv)?;
        checks.push(Check::from_values(
            &format!("f_L^-1(f_L(t{i}/t0)) = t{i}/t0"),
            &back,
            &r(i),
        ));
    }

    // (c) the shift-with-b matrix on (x : xσ(x) : … : b) against the σ-moved point
    let point: Vec<RatFunc> = (1..=pu).map(|i| field.partial_norm(i)).collect();
    let shift = Matrix::from_fn(pu, pu, |i, j| {
        if j == i + 1 {
            RatFunc::int(1)
        } else if i == pu - 1 && j == 0 {
            b.clone()
        } else {
            RatFunc::int(0)
        }
    });
    let shifted = shift.mul_vec(&point)?;
    let moved: Vec<RatFunc> = point
        .iter()
        .map(|c| field.apply_sigma(c))
        .collect::<Result<_, _>>()?;
    checks.push(Check {
        name: "shift matrix on f_L(x) = f_L(sigma x) projectively".into(),
        passed: same_point(&shifted, &moved),
        detail: None,
    });
    let x = field.gen(0);
    let scaled: Vec<RatFunc> = moved.iter().map(|c| c.mul(&x)).collect();
    checks.push(Check {
        name: "common scalar is x".into(),
        passed: shifted == scaled,
        detail: None,
    });

    // the norm of a generic u = Σ c_i x_i lies in the fixed field
    let u = (0..pu).fold(RatFunc::int(0), |acc, i| {
        acc.add(&RatFunc::var(coeffs[i]).mul(&field.gen(i)))
    });
    let n = field.norm(&u)?;
    checks.push(Check::from_values(
        "sigma(N(u)) = N(u)",
        &field.apply_sigma(&n)?,
        &n,
    ));

    Ok(SbReport {
        p,
        images: (0..pu)
            .map(|i| print_canonical(&field.partial_norm(i)))
            .collect(),
        inverse_images: (0..pu)
            .map(|i| substitute(&field.gen(i), &f_inv).map(|e| print_canonical(&e)))
            .collect::<Result<_, _>>()?,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfunc;

    #[test]
    fn p_two_reduces_to_b_over_x0() {
        let f = CyclicFunctionField::new(2).unwrap();
        assert_eq!(f.gen(1), parse_ratfunc("b/x0").unwrap());
        assert_eq!(
            f.apply_sigma(&f.gen(1)).unwrap(),
            parse_ratfunc("x0").unwrap()
        );
        let r = sb_split_map(2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.inverse_images, ["r1", "b/r1"]);
    }

    #[test]
    fn small_primes_pass() {
        for p in [3, 5] {
            let r = sb_split_map(p).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn norm_is_sigma_invariant() {
        let mut f = CyclicFunctionField::new(3).unwrap();
        f.fix_constants([Var::named("c")]);
        let u = RatFunc::named("c").add(&f.gen(0));
        let n = f.norm(&u).unwrap();
        assert_eq!(f.apply_sigma(&n).unwrap(), n);
        assert_ne!(f.apply_sigma(&u).unwrap(), u);
    }
}
