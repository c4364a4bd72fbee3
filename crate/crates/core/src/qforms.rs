//! Diagonal quadratic forms, Pfister forms and congruence witnesses.

use serde_json::{json, Value};

use crate::algebra::{mat_inverse, AlgebraError, Field, Matrix, RatFunc};
use crate::expr::{exprs_from_strs, matrix_from_json, matrix_to_json, print_canonical, ExprError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QFormError {
    #[error("zero {0}")]
    Zero(&'static str),
    #[error("length mismatch: form has dimension {expected}, vector has {got} entries")]
    LengthMismatch { expected: usize, got: usize },
    #[error("congruence fails at entry ({row}, {col}): expected {expected}, got {got}")]
    EntryMismatch {
        row: usize,
        col: usize,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// A diagonal form `⟨d_1, …, d_m⟩`, remembering its Pfister parameters when
/// it was built as `⟨⟨a_1, …, a_n⟩⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QForm {
    diag: Vec<RatFunc>,
    pfister_params: Option<Vec<RatFunc>>,
}

impl QForm {
    pub fn diagonal(diag: Vec<RatFunc>) -> Result<Self, QFormError> {
        if diag.is_empty() {
            return Err(QFormError::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        if diag.iter().any(RatFunc::is_zero) {
            return Err(QFormError::Zero("diagonal entry"));
        }
        Ok(QForm {
            diag,
            pfister_params: None,
        })
    }

    pub fn diag(&self) -> &[RatFunc] {
        &self.diag
    }

    pub fn pfister_params(&self) -> Option<&[RatFunc]> {
        self.pfister_params.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn field(&self) -> Field {
        self.diag[0].field()
    }

    pub fn gram(&self) -> Matrix {
        Matrix::diag(&self.diag)
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[RatFunc]| v.iter().map(print_canonical).collect::<Vec<_>>();
        json!({
            "diag": strs(&self.diag),
            "pfister_params": self.pfister_params.as_deref().map(strs),
        })
    }

    /// Reads `{"diag": [...], "pfister_params": [...] | null}`. When parameters
    /// are given the diagonal must match their expansion.
    pub fn from_json(v: &Value) -> Result<Self, QFormError> {
        let bad = |m: &str| QFormError::Expr(ExprError::Json(m.to_string()));
        let diag = v
            .get("diag")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("form needs a \"diag\" array"))?;
        let params = match v.get("pfister_params") {
            None | Some(Value::Null) => None,
            Some(Value::Array(a)) => Some(a),
            Some(_) => return Err(bad("\"pfister_params\" must be an array or null")),
        };
        let mut texts = Vec::new();
        for e in diag.iter().chain(params.into_iter().flatten()) {
            texts.push(
                e.as_str()
                    .ok_or_else(|| bad("form entries must be expression strings"))?,
            );
        }
        let mut all = exprs_from_strs(&texts)?;
        let ps = all.split_off(diag.len());
        let form = QForm::diagonal(all)?;
        if params.is_none() {
            return Ok(form);
        }
        let pf = pfister(&ps)?;
        if pf.diag != form.diag {
            return Err(bad("diagonal does not match the Pfister parameters"));
        }
        Ok(pf)
    }
}

/// `⟨⟨a_1, …, a_n⟩⟩`: entry `i` is the product of `-a_{j+1}` over the set bits
/// `j` of `i`, so the newest parameter is the most significant bit.
pub fn pfister(params: &[RatFunc]) -> Result<QForm, QFormError> {
    if params.is_empty() {
        return Err(QFormError::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    if params.iter().any(RatFunc::is_zero) {
        return Err(QFormError::Zero("Pfister parameter"));
    }
    let field = params[0].field();
    let mut diag = vec![RatFunc::one(field)];
    for a in params {
        let na = a.neg();
        let upper: Vec<RatFunc> = diag.iter().map(|d| d.mul(&na)).collect();
        diag.extend(upper);
    }
    Ok(QForm {
        diag,
        pfister_params: Some(params.to_vec()),
    })
}

/// `ψ_n = ⟨⟨a_1, …, a_{n−1}⟩⟩ ⊥ ⟨−a_n⟩`; for `n = 1` the empty Pfister form is `⟨1⟩`.
pub fn subform_psi(params: &[RatFunc]) -> Result<QForm, QFormError> {
    let (last, head) = params.split_last().ok_or(QFormError::LengthMismatch {
        expected: 1,
        got: 0,
    })?;
    if last.is_zero() {
        return Err(QFormError::Zero("Pfister parameter"));
    }
    let base = if head.is_empty() {
        QForm {
            diag: vec![RatFunc::one(last.field())],
            pfister_params: None,
        }
    } else {
        pfister(head)?
    };
    let mut diag = base.diag;
    diag.push(last.neg());
    Ok(QForm {
        diag,
        pfister_params: None,
    })
}

fn check_len(q: &QForm, v: &[RatFunc]) -> Result<(), QFormError> {
    if v.len() != q.dim() {
        return Err(QFormError::LengthMismatch {
            expected: q.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `Σ d_i v_i²`.
pub fn qform_eval(q: &QForm, v: &[RatFunc]) -> Result<RatFunc, QFormError> {
    check_len(q, v)?;
    let terms: Vec<RatFunc> = q
        .diag
        .iter()
        .zip(v)
        .filter(|(_, x)| !x.is_zero())
        .map(|(d, x)| d.mul(&x.pow(2)))
        .collect();
    Ok(RatFunc::sum(q.field(), terms.iter()))
}

/// `Σ d_i u_i v_i`.
pub fn bilinear(q: &QForm, u: &[RatFunc], v: &[RatFunc]) -> Result<RatFunc, QFormError> {
    check_len(q, u)?;
    check_len(q, v)?;
    let terms: Vec<RatFunc> = q
        .diag
        .iter()
        .zip(u.iter().zip(v))
        .map(|(d, (a, b))| d.mul(&a.mul(b)))
        .collect();
    Ok(RatFunc::sum(q.field(), terms.iter()))
}

/// `(q(u + v) − q(u) − q(v)) / 2`, the bilinear form recovered from `q`.
pub fn polarization(q: &QForm, u: &[RatFunc], v: &[RatFunc]) -> Result<RatFunc, QFormError> {
    check_len(q, u)?;
    let sum: Vec<RatFunc> = u.iter().zip(v).map(|(a, b)| a.add(b)).collect();
    let twice = qform_eval(q, &sum)?
        .sub(&qform_eval(q, u)?)
        .sub(&qform_eval(q, v)?);
    Ok(twice.div(&RatFunc::constant(q.field().from_int(2)))?)
}

/// Orthogonal sum. When `q2` is `−a · q1` for a Pfister form `q1`, the result
/// is recognized as the Pfister form with `a` appended.
pub fn perp(q1: &QForm, q2: &QForm) -> QForm {
    let mut diag = q1.diag.clone();
    diag.extend(q2.diag.iter().cloned());
    let pfister_params = q1.pfister_params.as_ref().and_then(|ps| {
        let c = &q2.diag[0];
        let scaled =
            q2.dim() == q1.dim() && q1.diag.iter().zip(&q2.diag).all(|(a, b)| &a.mul(c) == b);
        scaled.then(|| {
            let mut ps = ps.clone();
            ps.push(c.neg());
            ps
        })
    });
    QForm {
        diag,
        pfister_params,
    }
}

/// `c · q`; Pfister parameters survive only for `c = 1`.
pub fn scale(c: &RatFunc, q: &QForm) -> Result<QForm, QFormError> {
    if c.is_zero() {
        return Err(QFormError::Zero("scale factor"));
    }
    if c.is_one() {
        return Ok(q.clone());
    }
    Ok(QForm {
        diag: q.diag.iter().map(|d| d.mul(c)).collect(),
        pfister_params: None,
    })
}

/// A matrix `C` with `C · A_source · Cᵗ = A_target`, checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    c: Matrix,
    source: QForm,
    target: QForm,
}

impl CongruenceWitness {
    pub fn matrix(&self) -> &Matrix {
        &self.c
    }

    pub fn source(&self) -> &QForm {
        &self.source
    }

    pub fn target(&self) -> &QForm {
        &self.target
    }

    pub fn to_json(&self) -> Value {
        json!({
            "matrix": matrix_to_json(&self.c),
            "source": self.source.to_json(),
            "target": self.target.to_json(),
        })
    }

    /// Reads `{"matrix": [[...]], "source": form, "target": form}` and
    /// verifies it.
    pub fn from_json(v: &Value) -> Result<Self, QFormError> {
        let get = |k: &str| {
            v.get(k)
                .ok_or_else(|| QFormError::Expr(ExprError::Json(format!("witness needs \"{k}\""))))
        };
        let c = matrix_from_json(get("matrix")?)?;
        verify_congruence(
            &c,
            &QForm::from_json(get("source")?)?,
            &QForm::from_json(get("target")?)?,
        )
    }

    /// The witness for the reverse direction, built from `C⁻¹`.
    pub fn inverse(&self) -> Result<CongruenceWitness, QFormError> {
        verify_congruence(&mat_inverse(&self.c)?, &self.target, &self.source)
    }
}

/// Checks `C · A_src · Cᵗ = A_dst` exactly.
pub fn verify_congruence(
    c: &Matrix,
    src: &QForm,
    dst: &QForm,
) -> Result<CongruenceWitness, QFormError> {
    if !c.is_square() || c.rows() != src.dim() || src.dim() != dst.dim() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "witness {}x{} for forms of dimension {} and {}",
            c.rows(),
            c.cols(),
            src.dim(),
            dst.dim()
        ))
        .into());
    }
    let lhs = congruence_product(c, &src.diag)?;
    let rhs = dst.gram();
    if let Some((row, col)) = lhs.first_difference(&rhs) {
        return Err(QFormError::EntryMismatch {
            row,
            col,
            expected: print_canonical(rhs.get(row, col)),
            got: print_canonical(lhs.get(row, col)),
        });
    }
    Ok(CongruenceWitness {
        c: c.clone(),
        source: src.clone(),
        target: dst.clone(),
    })
}

/// `C · diag(d) · Cᵗ` without forming the dense diagonal product.
pub fn congruence_product(c: &Matrix, d: &[RatFunc]) -> Result<Matrix, AlgebraError> {
    let scaled = Matrix::from_fn(c.rows(), c.cols(), |i, j| c.get(i, j).mul(&d[j]));
    scaled.try_mul(&c.transpose())
}
