//! The similarity matrices `C_n` of an n-fold Pfister form, the submatrix
//! `M`, and the rank-one characteristic polynomial.
//!
//! `C_1 = [[x1, x2], [−a x2, −x1]]` and
//! `C_n = [[C, C'], [−b C', −C' C C' / t]]`, where `C` is the level `n − 1`
//! matrix on the lower half of the variables, `C'` the same matrix renamed
//! to the upper half, `s` and `t` the two half evaluations of `φ_{n−1}` and
//! `b = a_n`. Then `C_n A Cᵗ_n = c A`, `C_n² = c I` with `c = s − b t`.

use serde::Serialize;

use crate::algebra::{
    char_poly, det_gauss, substitute, AlgebraError, Field, Matrix, Poly, RatFunc, Scalar,
    Substitution, Var,
};
use crate::expr::print_canonical;
use crate::qforms::{congruence_product, pfister, qform_eval, QFormError};

mod factored;

use factored::{assemble_factored, Basis, FracMat};

/// Levels up to this one verify `C² = c I` and `C A Cᵗ = c A` by full
/// expansion; beyond it the entries are too large (hundreds of thousands of
/// terms at level 4) and the check is blockwise.
pub const DIRECT_VERIFY_MAX_LEVEL: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Direct,
    Blockwise,
}

/// Default largest level built without an explicit override.
pub const DEFAULT_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CnError {
    #[error("level {0} is outside 1..={1}")]
    Level(usize, usize),
    #[error("expected {expected} parameters, got {got}")]
    Params { expected: usize, got: usize },
    #[error("{check} fails at entry ({row}, {col})")]
    Invariant {
        check: String,
        row: usize,
        col: usize,
    },
    #[error("{0}")]
    Identity(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    QForm(#[from] QFormError),
}

/// Construction knobs: the level cap is a setting, not a hard limit.
#[derive(Debug, Clone, Copy)]
pub struct CnConfig {
    pub cap: usize,
}

impl Default for CnConfig {
    fn default() -> Self {
        CnConfig { cap: DEFAULT_CAP }
    }
}

/// Blocks of the recursion, absent at level 1.
#[derive(Debug, Clone)]
pub struct CnBlocks {
    pub c: Matrix,
    pub c_prime: Matrix,
    /// `(C C')⁻¹ = C' C / (t s)`.
    pub d: Matrix,
    pub s: RatFunc,
    pub t: RatFunc,
}

#[derive(Debug, Clone)]
pub struct CnRecord {
    pub n: usize,
    pub params: Vec<RatFunc>,
    pub xs: Vec<Var>,
    pub cn: Matrix,
    /// `φ_n(x_1, …, x_{2ⁿ})`.
    pub c: RatFunc,
    pub blocks: Option<CnBlocks>,
    /// Denominator basis from the recursion, and whether it is known to be
    /// made of coprime irreducibles.
    pub(crate) basis: Option<(Vec<Poly>, bool)>,
}

pub fn x_vars(count: usize) -> Vec<Var> {
    (1..=count).map(|i| Var::indexed("x", i)).collect()
}

/// `a1, …, an`.
pub fn default_params(n: usize) -> Vec<Var> {
    (1..=n).map(|i| Var::indexed("a", i)).collect()
}

pub(crate) fn rats(vs: &[Var]) -> Vec<RatFunc> {
    vs.iter().map(|&v| RatFunc::var(v)).collect()
}

/// Gram matrix of `⟨⟨params⟩⟩`.
pub fn pfister_gram(params: &[RatFunc]) -> Result<Matrix, CnError> {
    Ok(pfister(params)?.gram())
}

pub fn build_cn(n: usize, params: &[Var]) -> Result<CnRecord, CnError> {
    build_cn_with(n, params, &CnConfig::default())
}

/// Builds and verifies `C_n` over `x1, …, x_{2ⁿ}`.
pub fn build_cn_with(n: usize, params: &[Var], cfg: &CnConfig) -> Result<CnRecord, CnError> {
    if n == 0 || n > cfg.cap {
        return Err(CnError::Level(n, cfg.cap));
    }
    if params.len() != n {
        return Err(CnError::Params {
            expected: n,
            got: params.len(),
        });
    }
    build_cn_over(&rats(params), &x_vars(1 << n), cfg)
}

/// `C_n` for parameter values `params` over the coordinates `xs`, which must
/// not occur in the parameters.
pub fn build_cn_over(params: &[RatFunc], xs: &[Var], cfg: &CnConfig) -> Result<CnRecord, CnError> {
    let n = params.len();
    if n == 0 || n > cfg.cap {
        return Err(CnError::Level(n, cfg.cap));
    }
    if xs.len() != 1 << n {
        return Err(CnError::Params {
            expected: 1 << n,
            got: xs.len(),
        });
    }
    if params
        .iter()
        .any(|p| p.vars().iter().any(|v| xs.contains(v)))
    {
        return Err(AlgebraError::VarCollision("coordinate used in a parameter".into()).into());
    }
    let rec = assemble(n, params, xs)?;
    rec.verify()?;
    Ok(rec)
}

fn assemble(n: usize, params: &[RatFunc], xs: &[Var]) -> Result<CnRecord, CnError> {
    let polys: Option<Vec<Poly>> = params.iter().map(|p| p.as_poly().cloned()).collect();
    match polys {
        Some(polys) => Ok(assemble_fast(n, params, &polys, xs)),
        None => assemble_plain(n, params, xs),
    }
}

/// Distinct bare parameters make every basis element an anisotropic
/// Pfister value in its own variables, hence irreducible and coprime to the rest.
fn generic_params(params: &[RatFunc]) -> bool {
    let vars: Vec<Var> = params
        .iter()
        .filter_map(|p| {
            p.as_poly()
                .filter(|q| q.is_monomial() && q.total_degree() == 1 && q.terms()[0].1.is_one())
        })
        .flat_map(|q| q.vars())
        .collect();
    vars.len() == params.len()
        && vars.iter().collect::<std::collections::BTreeSet<_>>().len() == vars.len()
}

fn assemble_fast(n: usize, params: &[RatFunc], polys: &[Poly], xs: &[Var]) -> CnRecord {
    let trusted = generic_params(params);
    let asm = assemble_factored(polys, xs, trusted);
    let basis = &asm.basis;
    let blocks = asm.blocks.as_ref().map(|(c, cp, d, s, t)| CnBlocks {
        c: basis.to_matrix(c),
        c_prime: basis.to_matrix(cp),
        d: basis.to_matrix(d),
        s: RatFunc::from_poly(s.clone()),
        t: RatFunc::from_poly(t.clone()),
    });
    CnRecord {
        n,
        params: params.to_vec(),
        xs: xs.to_vec(),
        cn: basis.to_matrix(&asm.cn),
        c: RatFunc::from_poly(asm.c.clone()),
        blocks,
        basis: Some((basis.factors().to_vec(), trusted)),
    }
}

fn assemble_plain(n: usize, params: &[RatFunc], xs: &[Var]) -> Result<CnRecord, CnError> {
    let x = rats(xs);
    if n == 1 {
        let a = params[0].clone();
        let cn = Matrix::from_rows(vec![
            vec![x[0].clone(), x[1].clone()],
            vec![a.mul(&x[1]).neg(), x[0].neg()],
        ])?;
        let c = x[0].pow(2).sub(&a.mul(&x[1].pow(2)));
        return Ok(CnRecord {
            n,
            params: params.to_vec(),
            xs: xs.to_vec(),
            cn,
            c,
            blocks: None,
            basis: None,
        });
    }
    let h = xs.len() / 2;
    let lower = assemble_plain(n - 1, &params[..n - 1], &xs[..h])?;
    let rename = |v: Var| match xs[..h].iter().position(|&w| w == v) {
        Some(i) => xs[h + i],
        None => v,
    };
    let c = lower.cn.clone();
    let c_prime = c.map(|e| e.rename(&rename));
    let s = lower.c.clone();
    let t = s.rename(&rename);
    let b = params[n - 1].clone();
    let t_inv = t.inv()?;
    let cc = c_prime.mul(&c);
    let ccc = cc.mul(&c_prime);
    let br = ccc.scale(&t_inv).neg();
    let bl = c_prime.scale(&b.neg());
    let cn = Matrix::block(&[vec![&c, &c_prime], vec![&bl, &br]])?;
    let d = cc.scale(&t.mul(&s).inv()?);
    let cval = s.sub(&b.mul(&t));
    Ok(CnRecord {
        n,
        params: params.to_vec(),
        xs: xs.to_vec(),
        cn,
        c: cval,
        blocks: Some(CnBlocks {
            c,
            c_prime,
            d,
            s,
            t,
        }),
        basis: None,
    })
}

fn compare(check: &str, lhs: &Matrix, rhs: &Matrix) -> Result<(), CnError> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((row, col)) => Err(CnError::Invariant {
            check: check.to_string(),
            row,
            col,
        }),
    }
}

fn fcompare(basis: &Basis, check: &str, lhs: &FracMat, rhs: &FracMat) -> Result<(), CnError> {
    match basis.first_difference(lhs, rhs) {
        None => Ok(()),
        Some((row, col)) => Err(CnError::Invariant {
            check: check.to_string(),
            row,
            col,
        }),
    }
}

impl CnRecord {
    pub fn field(&self) -> Field {
        self.c.field()
    }

    pub fn gram(&self) -> Result<Matrix, CnError> {
        pfister_gram(&self.params)
    }

    /// The record as JSON; the matrix itself only when `with_matrix`, since
    /// from level 4 on its entries run to hundreds of thousands of terms.
    pub fn to_json(&self, with_matrix: bool) -> serde_json::Value {
        let strs = |v: &[RatFunc]| v.iter().map(print_canonical).collect::<Vec<_>>();
        let terms = self
            .cn
            .entries()
            .iter()
            .map(|e| e.numer().len())
            .max()
            .unwrap_or(0);
        serde_json::json!({
            "n": self.n,
            "params": strs(&self.params),
            "xs": self.xs.iter().map(|v| v.name()).collect::<Vec<_>>(),
            "c": print_canonical(&self.c),
            "dim": self.cn.rows(),
            "verify_mode": self.verify_mode(),
            "max_numerator_terms": terms,
            "cn": with_matrix.then(|| crate::expr::matrix_to_json(&self.cn)),
        })
    }

    /// How [`CnRecord::verify`] establishes the product identities.
    pub fn verify_mode(&self) -> VerifyMode {
        if self.n <= DIRECT_VERIFY_MAX_LEVEL {
            VerifyMode::Direct
        } else {
            VerifyMode::Blockwise
        }
    }

    /// Checks the four defining identities.
    pub fn verify(&self) -> Result<(), CnError> {
        let a = self.gram()?;
        let dim = self.xs.len();
        let diag: Vec<RatFunc> = (0..dim).map(|i| a.get(i, i).clone()).collect();
        match self.verify_mode() {
            VerifyMode::Direct => {
                if !self.verify_factored(&a)? {
                    compare(
                        "C A Cᵗ = c A",
                        &congruence_product(&self.cn, &diag)?,
                        &a.scale(&self.c),
                    )?;
                    compare(
                        "C² = c I",
                        &self.cn.mul(&self.cn),
                        &Matrix::scalar_identity(dim, &self.c),
                    )?;
                }
            }
            VerifyMode::Blockwise => self.verify_blockwise(&diag)?,
        }
        let x = rats(&self.xs);
        let row0 = Matrix::new(1, dim, self.cn.row(0))?;
        compare("row 0 = x", &row0, &Matrix::new(1, dim, x.clone())?)?;
        let col0 = Matrix::new(dim, 1, self.cn.col(0))?;
        compare(
            "column 0 = A x",
            &col0,
            &Matrix::new(dim, 1, a.mul_vec(&x)?)?,
        )?;
        let phi = qform_eval(&pfister(&self.params)?, &x)?;
        if phi != self.c {
            return Err(CnError::Identity("c is not φ_n(x)".into()));
        }
        if let Some(bl) = &self.blocks {
            let b = &self.params[self.n - 1];
            if self.c != bl.s.sub(&b.mul(&bl.t)) {
                return Err(CnError::Identity("c is not s − b t".into()));
            }
        }
        Ok(())
    }

    /// For large levels: `C² = s I` and `C'² = t I` exactly one level down,
    /// the block shape `[[C, C'], [−b C', ·]]`, and symmetry of `C_n A`.
    /// With `C_n² = c I`, which follows blockwise from the first two,
    /// `C_n A C_nᵗ = c A` is equivalent to `C_n A = (C_n A)ᵗ`. The bottom
    /// right block is taken as constructed.
    fn verify_blockwise(&self, diag: &[RatFunc]) -> Result<(), CnError> {
        let bl = self
            .blocks
            .as_ref()
            .ok_or_else(|| CnError::Identity("missing blocks".into()))?;
        let h = bl.c.rows();
        let b = &self.params[self.n - 1];
        compare("top left block = C", &self.cn.submatrix(0, 0, h, h), &bl.c)?;
        compare(
            "top right block = C'",
            &self.cn.submatrix(0, h, h, h),
            &bl.c_prime,
        )?;
        compare(
            "bottom left block = -b C'",
            &self.cn.submatrix(h, 0, h, h),
            &bl.c_prime.scale(&b.neg()),
        )?;
        let lower = self
            .basis
            .as_ref()
            .map(|(f, trusted)| Basis::new(f.clone(), *trusted));
        for (name, m, v) in [
            ("C² = s I", &bl.c, &bl.s),
            ("C'² = t I", &bl.c_prime, &bl.t),
        ] {
            let target = Matrix::scalar_identity(h, v);
            let lifted = lower.as_ref().and_then(|basis| {
                Some((basis, basis.lift_matrix(m)?, basis.lift_matrix(&target)?))
            });
            match lifted {
                Some((basis, fm, ft)) => fcompare(basis, name, &basis.matmul(&fm, &fm), &ft)?,
                None => compare(name, &m.mul(m), &target)?,
            }
        }
        let dim = self.cn.rows();
        for i in 0..dim {
            for j in i + 1..dim {
                if self.cn.get(i, j).mul(&diag[j]) != self.cn.get(j, i).mul(&diag[i]) {
                    return Err(CnError::Invariant {
                        check: "C A symmetric".into(),
                        row: i,
                        col: j,
                    });
                }
            }
        }
        Ok(())
    }

    /// The two product identities over the recursion's denominator basis.
    /// Returns `false` when the entries do not factor over it.
    fn verify_factored(&self, a: &Matrix) -> Result<bool, CnError> {
        let Some((factors, trusted)) = &self.basis else {
            return Ok(false);
        };
        let basis = Basis::new(factors.clone(), *trusted);
        let (Some(cn), Some(ad), Some(ca), Some(ci)) = (
            basis.lift_matrix(&self.cn),
            basis.lift_matrix(&Matrix::new(
                1,
                a.rows(),
                (0..a.rows()).map(|i| a.get(i, i).clone()).collect(),
            )?),
            basis.lift_matrix(&a.scale(&self.c)),
            basis.lift_matrix(&Matrix::scalar_identity(a.rows(), &self.c)),
        ) else {
            return Ok(false);
        };
        let diag: Vec<_> = (0..a.rows()).map(|j| ad.get(0, j).clone()).collect();
        let cact = basis.matmul(&cn.scale_columns(&basis, &diag), &cn.transpose());
        fcompare(&basis, "C A Cᵗ = c A", &cact, &ca)?;
        fcompare(&basis, "C² = c I", &basis.matmul(&cn, &cn), &ci)?;
        Ok(true)
    }

    /// `C_n` with the coordinates replaced by `values`, for instance `C_n(y)`.
    pub fn at(&self, values: &[RatFunc]) -> Result<Matrix, CnError> {
        if values.len() != self.xs.len() {
            return Err(CnError::Params {
                expected: self.xs.len(),
                got: values.len(),
            });
        }
        let mut sub = Substitution::new();
        for (&x, v) in self.xs.iter().zip(values) {
            sub.insert(x, v.clone());
        }
        let sub = sub.fix(self.params.iter().flat_map(|p| p.vars()));
        Ok(self.cn.try_map(|e| substitute(e, &sub))?)
    }

    /// `φ_n` evaluated at `values`.
    pub fn phi_at(&self, values: &[RatFunc]) -> Result<RatFunc, CnError> {
        Ok(qform_eval(&pfister(&self.params)?, values)?)
    }

    /// `C_n⁻¹ = C_n / c`.
    pub fn inverse(&self) -> Result<Matrix, CnError> {
        Ok(self.cn.scale(&self.c.inv()?))
    }

    /// Evaluates every entry at a point; fails if a denominator vanishes.
    pub fn specialize(&self, point: &[(Var, Scalar)]) -> Result<Matrix, CnError> {
        Ok(self.cn.try_map(|e| e.eval_partial(point))?)
    }

    /// Row 0, column 0 and `c` at `x = e_1`. The remaining entries of `C_n`
    /// for `n ≥ 2` have the upper half evaluation `t` in their denominators,
    /// which vanishes there.
    pub fn e1_border(&self) -> Result<(Vec<RatFunc>, Vec<RatFunc>, RatFunc), CnError> {
        let point = e1_point(&self.xs, self.field());
        let row = self
            .cn
            .row(0)
            .iter()
            .map(|e| e.eval_partial(&point))
            .collect::<Result<_, _>>()?;
        let col = self
            .cn
            .col(0)
            .iter()
            .map(|e| e.eval_partial(&point))
            .collect::<Result<_, _>>()?;
        Ok((row, col, self.c.eval_partial(&point)?))
    }
}

pub fn e1_point(xs: &[Var], field: Field) -> Vec<(Var, Scalar)> {
    xs.iter()
        .enumerate()
        .map(|(i, &v)| (v, field.from_int(i64::from(i == 0))))
        .collect()
}

/// One named identity of a verification report.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn from_matrices(name: &str, lhs: &Matrix, rhs: &Matrix) -> Check {
        match lhs.first_difference(rhs) {
            None => Check {
                name: name.to_string(),
                passed: true,
                detail: None,
            },
            Some((i, j)) if (lhs.rows(), lhs.cols()) == (rhs.rows(), rhs.cols()) => Check {
                name: name.to_string(),
                passed: false,
                detail: Some(format!(
                    "entry ({i}, {j}): {} vs {}",
                    print_canonical(lhs.get(i, j)),
                    print_canonical(rhs.get(i, j))
                )),
            },
            Some(_) => Check {
                name: name.to_string(),
                passed: false,
                detail: Some("shape mismatch".into()),
            },
        }
    }

    pub fn from_values(name: &str, lhs: &RatFunc, rhs: &RatFunc) -> Check {
        Check {
            name: name.to_string(),
            passed: lhs == rhs,
            detail: (lhs != rhs)
                .then(|| format!("{} vs {}", print_canonical(lhs), print_canonical(rhs))),
        }
    }

    pub fn from_result<T, E: std::fmt::Display>(name: &str, r: &Result<T, E>) -> Check {
        Check {
            name: name.to_string(),
            passed: r.is_ok(),
            detail: r.as_ref().err().map(|e| e.to_string()),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[derive(Debug, Clone, Serialize)]
pub struct CnStepsReport {
    pub n: usize,
    /// The congruences (i), (j), (k) and the final sign flip.
    pub steps: Vec<Check>,
    /// `C_n = diag(I, −I) · diag(I, D) · J · diag(C, C')`.
    pub assembly: Check,
    /// Consecutive lines of the direct block expansion of `C_n A Cᵗ_n`.
    pub expansion: Vec<Check>,
}

impl CnStepsReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.steps) && self.assembly.passed && all_passed(&self.expansion)
    }
}

fn blockdiag(a: &Matrix, b: &Matrix) -> Matrix {
    a.direct_sum(b)
}

/// `J = [[I, I], [b t I, s I]]`, the matrix of step (j).
pub fn step_j_matrix(h: usize, s: &RatFunc, t: &RatFunc, b: &RatFunc) -> Result<Matrix, CnError> {
    let field = s.field();
    let i = Matrix::identity(field, h);
    let bt = Matrix::scalar_identity(h, &b.mul(t));
    let si = Matrix::scalar_identity(h, s);
    Ok(Matrix::block(&[vec![&i, &i], vec![&bt, &si]])?)
}

/// Both sides of step (j): `J diag(sA, −btA) Jᵗ` and `diag(cA, −cbstA)`.
pub fn step_j_sides(
    a: &Matrix,
    s: &RatFunc,
    t: &RatFunc,
    b: &RatFunc,
) -> Result<(Matrix, Matrix), CnError> {
    let j = step_j_matrix(a.rows(), s, t, b)?;
    let c = s.sub(&b.mul(t));
    let bt = b.mul(t);
    let src = blockdiag(&a.scale(s), &a.scale(&bt.neg()));
    let lhs = j.mul(&src).mul(&j.transpose());
    let rhs = blockdiag(&a.scale(&c), &a.scale(&c.mul(&bt).mul(s).neg()));
    Ok((lhs, rhs))
}

/// Replays the construction of `C_n` one congruence at a time.
pub fn verify_cn_steps(n: usize) -> Result<CnStepsReport, CnError> {
    verify_cn_steps_with(n, &CnConfig::default())
}

pub fn verify_cn_steps_with(n: usize, cfg: &CnConfig) -> Result<CnStepsReport, CnError> {
    if n < 2 {
        return Err(CnError::Level(n, cfg.cap));
    }
    let params = default_params(n);
    let rec = build_cn_with(n, &params, cfg)?;
    let bl = rec.blocks.as_ref().expect("level >= 2 has blocks");
    let a = pfister_gram(&rec.params[..n - 1])?;
    let h = a.rows();
    let field = rec.field();
    let (s, t, c) = (&bl.s, &bl.t, &rec.c);
    let b = rec.params[n - 1].clone();
    let bt = b.mul(t);
    let i = Matrix::identity(field, h);
    let mut steps = Vec::new();

    // (i) diag(C, C') diag(A, −bA) diag(C, C')ᵗ = diag(sA, −btA)
    let x = blockdiag(&bl.c, &bl.c_prime);
    let lhs = x
        .mul(&blockdiag(&a, &a.scale(&b.neg())))
        .mul(&x.transpose());
    let rhs = blockdiag(&a.scale(s), &a.scale(&bt.neg()));
    steps.push(Check::from_matrices(
        "(i) diag(C,C') carries diag(A,-bA) to diag(sA,-btA)",
        &lhs,
        &rhs,
    ));

    // (j)
    let (lhs, rhs) = step_j_sides(&a, s, t, &b)?;
    steps.push(Check::from_matrices(
        "(j) J carries diag(sA,-btA) to diag(cA,-cbstA)",
        &lhs,
        &rhs,
    ));

    // (k), including the displayed intermediate diag(cA, −cbst D A)
    let k = blockdiag(&i, &bl.d);
    let cbst = c.mul(&bt).mul(s);
    let src = blockdiag(&a.scale(c), &a.scale(&cbst.neg()));
    let mid = k.mul(&src);
    let mid_expected = blockdiag(&a.scale(c), &bl.d.mul(&a).scale(&cbst.neg()));
    let lhs = mid.mul(&k.transpose());
    let rhs = blockdiag(&a.scale(c), &a.scale(&c.mul(&b).neg()));
    let inverse_ok = bl.c.mul(&bl.c_prime).mul(&bl.d) == Matrix::identity(field, h);
    let mut kc = Check::from_matrices(
        "(k) diag(I,D) carries diag(cA,-cbstA) to diag(cA,-cbA)",
        &lhs,
        &rhs,
    );
    let mc = Check::from_matrices("(k) intermediate", &mid, &mid_expected);
    if kc.passed && !(mc.passed && inverse_ok) {
        kc.passed = false;
        kc.detail = Some(if inverse_ok {
            mc.detail.unwrap_or_default()
        } else {
            "D is not (C C')^-1".into()
        });
    }
    steps.push(kc);

    // sign flip diag(I, −I) fixes c A_n
    let sflip = blockdiag(&i, &i.neg());
    let an = rec.gram()?;
    let lhs = sflip.mul(&an.scale(c)).mul(&sflip.transpose());
    steps.push(Check::from_matrices(
        "sign flip diag(I,-I) fixes cA",
        &lhs,
        &an.scale(c),
    ));

    let j = step_j_matrix(h, s, t, &b)?;
    let composite = sflip.mul(&k).mul(&j).mul(&x);
    let assembly = Check::from_matrices(
        "C_n = diag(I,-I) diag(I,D) J diag(C,C')",
        &composite,
        &rec.cn,
    );

    let expansion = expansion_lines(&rec, &a, &b)?;
    Ok(CnStepsReport {
        n,
        steps,
        assembly,
        expansion,
    })
}

/// The eight lines of the direct expansion, compared pairwise.
fn expansion_lines(rec: &CnRecord, a: &Matrix, b: &RatFunc) -> Result<Vec<Check>, CnError> {
    let bl = rec.blocks.as_ref().expect("level >= 2");
    let (c, cp, s, t) = (&bl.c, &bl.c_prime, &bl.s, &bl.t);
    let (ct, cpt) = (c.transpose(), cp.transpose());
    let ti = t.inv()?;
    let si = s.inv()?;
    let nb = b.neg();
    let b_t = b.mul(&ti);
    let blk = |m: [&Matrix; 4]| Matrix::block(&[vec![m[0], m[1]], vec![m[2], m[3]]]);

    let an = rec.gram()?;
    let l1 = rec.cn.mul(&an).mul(&rec.cn.transpose());

    let right = blk([
        &ct,
        &cpt.scale(&nb),
        &cpt,
        &cpt.mul(&ct).mul(&cpt).scale(&ti.neg()),
    ])?;
    let ca = c.mul(a);
    let cpa = cp.mul(a);
    let l2_left = blk([
        &ca,
        &cpa.scale(&nb),
        &cpa.scale(&nb),
        &cp.mul(c).mul(cp).mul(a).scale(&b_t),
    ])?;
    let l2 = l2_left.mul(&right);

    let capt = cpa.mul(&cpt);
    let l3 = blk([
        &ca.mul(&ct).sub(&capt.scale(b)),
        &ca.mul(&cpt)
            .scale(&nb)
            .add(&capt.mul(&ct).mul(&cpt).scale(&b_t)),
        &cpa.mul(&ct)
            .scale(&nb)
            .add(&cp.mul(c).mul(&capt).scale(&b_t)),
        &capt.scale(&b.pow(2)).sub(
            &cp.mul(c)
                .mul(&capt)
                .mul(&ct)
                .mul(&cpt)
                .scale(&b.mul(&ti.pow(2))),
        ),
    ])?;

    // C' A C'ᵗ = t A
    let l4 = blk([
        &a.scale(s).sub(&a.scale(&b.mul(t))),
        &ca.mul(&cpt).scale(&nb).add(&a.mul(&ct).mul(&cpt).scale(b)),
        &cpa.mul(&ct).scale(&nb).add(&cp.mul(c).mul(a).scale(b)),
        &a.scale(&b.pow(2).mul(t)).sub(&a.scale(&b.mul(s))),
    ])?;

    // A = C A Cᵗ / s
    let cval = &rec.c;
    let l5 = blk([
        &a.scale(cval),
        &ca.mul(&cpt)
            .scale(&nb)
            .add(&ca.mul(&ct).mul(&ct).mul(&cpt).scale(&b.mul(&si))),
        &cpa.mul(&ct)
            .scale(&nb)
            .add(&cp.mul(c).mul(c).mul(a).mul(&ct).scale(&b.mul(&si))),
        &a.scale(&b.mul(cval).neg()),
    ])?;

    // C C = s I
    let l6 = blk([
        &a.scale(cval),
        &ca.mul(&cpt).scale(&nb).add(&ca.mul(&cpt).scale(b)),
        &cpa.mul(&ct).scale(&nb).add(&cpa.mul(&ct).scale(b)),
        &a.scale(&b.mul(cval).neg()),
    ])?;

    let l7 = blockdiag(&a.scale(cval), &a.scale(&b.mul(cval).neg()));
    let l8 = an.scale(cval);

    let lines = [l1, l2, l3, l4, l5, l6, l7, l8];
    Ok(lines
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            Check::from_matrices(&format!("line {} = line {}", k + 1, k + 2), &w[0], &w[1])
        })
        .collect())
}

/// `C_n` at `x_1 = 1` without its first row and column.
#[derive(Debug, Clone)]
pub struct MRecord {
    pub n: usize,
    pub m: Matrix,
    /// `φ(1, x_2, …, x_{2ⁿ})`.
    pub phi1: RatFunc,
    pub det: RatFunc,
    /// `det(M) = det_sign · phi1^{2^{n−1}−1}`.
    pub det_sign: i32,
    pub checks: Vec<Check>,
}

impl MRecord {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "phi1": print_canonical(&self.phi1),
            "det": print_canonical(&self.det),
            "det_sign": self.det_sign,
            "checks": self.checks,
        })
    }
}

pub fn build_m(n: usize, params: &[Var]) -> Result<MRecord, CnError> {
    build_m_with(n, params, &CnConfig::default())
}

pub fn build_m_with(n: usize, params: &[Var], cfg: &CnConfig) -> Result<MRecord, CnError> {
    let rec = build_cn_with(n, params, cfg)?;
    let field = rec.field();
    let x1 = rec.xs[0];
    let point = [(x1, field.one())];
    let special = rec.specialize(&point)?;
    let m = special.minor(0, 0);
    let phi1 = rec.c.eval_partial(&point)?;
    let dim = m.rows();
    let a = rec.gram()?;
    let x = rats(&rec.xs[1..]);
    let r = Matrix::from_fn(dim, dim, |i, j| a.get(i + 1, i + 1).mul(&x[i]).mul(&x[j]));
    let m2 = m.mul(&m);
    let expected = Matrix::scalar_identity(dim, &phi1).sub(&r);
    let mut checks = vec![Check::from_matrices(
        "M^2 = phi1 I - (c_i x_i x_j)",
        &m2,
        &expected,
    )];

    let det = det_gauss(&m)?;
    let k = (1u32 << (n - 1)) - 1;
    let power = phi1.pow(k);
    let det_sign = if det == power {
        1
    } else if det == power.neg() {
        -1
    } else {
        0
    };
    checks.push(Check {
        name: format!("det(M) = ±phi1^{k}"),
        passed: det_sign != 0,
        detail: (det_sign == 0).then(|| print_canonical(&det)),
    });
    let det_m2 = det_gauss(&expected)?;
    checks.push(Check::from_values(
        &format!("det(M^2) = phi1^{}", (1u32 << n) - 2),
        &det_m2,
        &phi1.pow((1u32 << n) - 2),
    ));
    checks.push(Check {
        name: "det(M) != 0".into(),
        passed: !det.is_zero(),
        detail: None,
    });
    Ok(MRecord {
        n,
        m,
        phi1,
        det,
        det_sign,
        checks,
    })
}

#[derive(Debug, Clone)]
pub struct Rank1Result {
    pub n: usize,
    pub charpoly: RatFunc,
    /// `Σ a_i b_i`.
    pub trace: RatFunc,
    pub matches: bool,
}

impl Rank1Result {
    /// `x^(n−1)*(x - a1*b1 - …)`, the factored closed form.
    pub fn factored(&self, var: Var) -> String {
        let inner = print_canonical(&RatFunc::var(var).sub(&self.trace));
        match self.n - 1 {
            0 => inner,
            1 => format!("{var}*({inner})"),
            k => format!("{var}^{k}*({inner})"),
        }
    }
}

impl Rank1Result {
    pub fn to_json(&self, var: Var) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "charpoly": print_canonical(&self.charpoly),
            "factored": self.factored(var),
            "trace": print_canonical(&self.trace),
            "matches": self.matches,
        })
    }
}

/// `det(x I − (a_i b_j))`, checked against `x^(n−1) (x − Σ a_i b_i)`.
pub fn rank1_charpoly(a: &[RatFunc], b: &[RatFunc], var: Var) -> Result<Rank1Result, CnError> {
    if a.len() != b.len() || a.is_empty() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "vectors of length {} and {}",
            a.len(),
            b.len()
        ))
        .into());
    }
    let n = a.len();
    let m = Matrix::from_fn(n, n, |i, j| a[i].mul(&b[j]));
    let charpoly = char_poly(&m, var)?;
    let field = a[0].field();
    let products: Vec<RatFunc> = a.iter().zip(b).map(|(x, y)| x.mul(y)).collect();
    let trace = RatFunc::sum(field, products.iter());
    let x = RatFunc::from_poly(Poly::var_in(field, var));
    let closed = x.pow(n as u32 - 1).mul(&x.sub(&trace));
    Ok(Rank1Result {
        n,
        matches: charpoly == closed,
        charpoly,
        trace,
    })
}

/// Symbolic vectors `a1..an`, `b1..bn`.
pub fn rank1_symbolic(n: usize) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let a = (1..=n)
        .map(|i| RatFunc::var(Var::indexed("a", i)))
        .collect();
    let b = (1..=n)
        .map(|i| RatFunc::var(Var::indexed("b", i)))
        .collect();
    (a, b)
}

/// `φ(x) φ(y) = φ(y · C_n(x))`, the multiplicativity realized by `C_n`.
pub fn multiplicativity(rec: &CnRecord) -> Result<Check, CnError> {
    let ys: Vec<Var> = (1..=rec.xs.len()).map(|i| Var::indexed("y", i)).collect();
    let y = rats(&ys);
    let phi = pfister(&rec.params)?;
    let lhs = qform_eval(&phi, &rats(&rec.xs))?.mul(&qform_eval(&phi, &y)?);
    let yc = Matrix::vec_mul(&y, &rec.cn)?;
    let rhs = qform_eval(&phi, &yc)?;
    Ok(Check::from_values("phi(x) phi(y) = phi(y C_n)", &lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_ratfunc;

    #[test]
    fn level_one() {
        let rec = build_cn(1, &[Var::named("a")]).unwrap();
        assert_eq!(rec.c, parse_ratfunc("x1^2 - a*x2^2").unwrap());
        assert_eq!(print_canonical(rec.cn.get(1, 0)), "-a*x2");
        let (row, col, c) = rec.e1_border().unwrap();
        assert!(c.is_one());
        assert!(row[0].is_one() && row[1].is_zero() && col[1].is_zero());
        let e1 = rec.specialize(&e1_point(&rec.xs, Field::Rational)).unwrap();
        assert_eq!(print_canonical(e1.get(1, 1)), "-1");
    }

    #[test]
    fn blockwise_agrees_at_small_levels() {
        for n in 2..=3 {
            let rec = build_cn(n, &default_params(n)).unwrap();
            let a = rec.gram().unwrap();
            let diag: Vec<RatFunc> = (0..a.rows()).map(|i| a.get(i, i).clone()).collect();
            rec.verify_blockwise(&diag).unwrap();
            let mut bad = rec.clone();
            let e = bad.cn.get(0, 1).add(&RatFunc::int(1));
            bad.cn.set(0, 1, e);
            assert!(bad.verify_blockwise(&diag).is_err());
        }
    }

    #[test]
    fn level_two_verifies() {
        let rec = build_cn(2, &default_params(2)).unwrap();
        assert!(rec.blocks.is_some());
        assert!(multiplicativity(&rec).unwrap().passed);
        let (row, col, c) = rec.e1_border().unwrap();
        assert!(c.is_one());
        assert!(row
            .iter()
            .skip(1)
            .chain(col.iter().skip(1))
            .all(RatFunc::is_zero));
        assert!(rec.specialize(&e1_point(&rec.xs, Field::Rational)).is_err());
    }

    #[test]
    fn steps_level_two() {
        let r = verify_cn_steps(2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.steps.len(), 4);
        assert_eq!(r.expansion.len(), 7);
    }

    #[test]
    fn step_j_degenerate() {
        let a = pfister_gram(&[RatFunc::named("a")]).unwrap();
        let (one, zero) = (RatFunc::int(1), RatFunc::int(0));
        let j = step_j_matrix(2, &one, &one, &zero).unwrap();
        assert_eq!(
            j.submatrix(2, 0, 2, 2),
            Matrix::zeros(Field::Rational, 2, 2)
        );
        let (lhs, rhs) = step_j_sides(&a, &one, &one, &zero).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs.submatrix(0, 0, 2, 2), a);
    }

    #[test]
    fn m_records() {
        let m1 = build_m(1, &default_params(1)).unwrap();
        assert_eq!(m1.det, RatFunc::int(-1));
        assert!(all_passed(&m1.checks));
        let m2 = build_m(2, &default_params(2)).unwrap();
        assert!(all_passed(&m2.checks), "{:?}", m2.checks);
    }

    #[test]
    fn rank1_small() {
        let x = Var::named("x");
        let (a, b) = rank1_symbolic(3);
        let r = rank1_charpoly(&a, &b, x).unwrap();
        assert!(r.matches);
        assert_eq!(r.factored(x), "x^2*(x - a1*b1 - a2*b2 - a3*b3)");
        let num = |v: &[i64]| v.iter().map(|&k| RatFunc::int(k)).collect::<Vec<_>>();
        let r = rank1_charpoly(&num(&[1, 2]), &num(&[3, 4]), x).unwrap();
        assert_eq!(r.charpoly, parse_ratfunc("x^2 - 11*x").unwrap());
        assert!(rank1_charpoly(&num(&[1]), &num(&[1, 2]), x).is_err());
    }

    #[test]
    fn level_cap() {
        assert!(matches!(build_cn(0, &[]), Err(CnError::Level(0, _))));
        let cfg = CnConfig { cap: 1 };
        assert!(build_cn_with(2, &default_params(2), &cfg).is_err());
    }
}
