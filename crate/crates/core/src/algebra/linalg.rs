//! Fraction-free determinant, characteristic polynomial and inverse.
//!
//! Rows are first cleared of denominators, so elimination runs over the
//! polynomial ring and every division is exact.

use super::gcd::poly_lcm;
use super::matrix::Matrix;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::var::Var;
use super::AlgebraError;

/// Polynomial rows `L_i · row_i` and the multipliers `L_i`.
fn clear_rows(a: &Matrix) -> (Vec<Vec<Poly>>, Vec<Poly>) {
    let field = a.field();
    let mut rows = Vec::with_capacity(a.rows());
    let mut mults = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let row = a.row(i);
        let l = row
            .iter()
            .fold(Poly::one(field), |acc, e| poly_lcm(&acc, e.denom()));
        let cleared = row
            .iter()
            .map(|e| {
                if e.denom().is_one() {
                    e.numer().mul(&l)
                } else {
                    e.numer()
                        .mul(&l.div_exact(e.denom()).expect("lcm is a multiple"))
                }
            })
            .collect();
        rows.push(cleared);
        mults.push(l);
    }
    (rows, mults)
}

/// Picks the nonzero pivot with the fewest terms in column `k` at or below row `k`.
fn pivot_row(m: &[Vec<Poly>], k: usize) -> Option<usize> {
    (k..m.len())
        .filter(|&i| !m[i][k].is_zero())
        .min_by_key(|&i| m[i][k].len())
}

/// Bareiss elimination on a square polynomial matrix.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let field = m[0][0].field();
    let mut prev = Poly::one(field);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        let Some(p) = pivot_row(&m, k) else {
            return Poly::zero(field);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = if prev.is_one() {
                    t
                } else {
                    t.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            m[i][k] = Poly::zero(field);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Determinant by fraction-free elimination after clearing row denominators.
pub fn det_fraction_free(a: &Matrix) -> Result<RatFunc, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "determinant of {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let (rows, mults) = clear_rows(a);
    let d = bareiss_det(rows);
    let field = a.field();
    let den = mults.iter().fold(Poly::one(field), |acc, l| acc.mul(l));
    RatFunc::new(d, den)
}

/// Determinant by Gaussian elimination over the fraction field. Every
/// intermediate entry is a reduced quotient, which keeps entries small when
/// the matrix has many distinct denominators.
pub fn det_gauss(a: &Matrix) -> Result<RatFunc, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "determinant of {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let field = a.field();
    let mut m = a.to_rows();
    let mut det = RatFunc::one(field);
    for k in 0..n {
        let size = |e: &RatFunc| e.numer().len() + e.denom().len();
        let Some(p) = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| size(&m[i][k]))
        else {
            return Ok(RatFunc::zero(field));
        };
        if p != k {
            m.swap(p, k);
            det = det.neg();
        }
        let pivot = m[k][k].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv()?;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].mul(&inv);
            let (upper, lower) = m.split_at_mut(i);
            for (t, pivot) in lower[0][k + 1..].iter_mut().zip(&upper[k][k + 1..]) {
                *t = t.sub(&f.mul(pivot));
            }
            m[i][k] = RatFunc::zero(field);
        }
    }
    Ok(det)
}

/// `det(var·I − A)`. The variable must not occur in any entry.
pub fn char_poly(a: &Matrix, var: Var) -> Result<RatFunc, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "characteristic polynomial of {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    if a.entries().iter().any(|e| e.vars().contains(&var)) {
        return Err(AlgebraError::VarCollision(var.name().to_string()));
    }
    let field = a.field();
    let x = RatFunc::from_poly(Poly::var_in(field, var));
    let xa = Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i == j {
            x.sub(a.get(i, j))
        } else {
            a.get(i, j).neg()
        }
    });
    det_fraction_free(&xa)
}

/// Coefficients of `p` as a polynomial in `var`: `result[k]` multiplies `var^k`.
/// Fails if `var` occurs in the denominator.
pub fn coefficients_in(p: &RatFunc, var: Var) -> Result<Vec<RatFunc>, AlgebraError> {
    if p.denom().vars().contains(&var) {
        return Err(AlgebraError::VarCollision(var.name().to_string()));
    }
    p.numer()
        .coefficients_in(var)
        .into_iter()
        .map(|c| RatFunc::new(c, p.denom().clone()))
        .collect()
}

/// Exact inverse by fraction-free Gauss–Jordan elimination of `[L·A | L]`,
/// which ends at `[d·I | d·A⁻¹]`.
pub fn mat_inverse(a: &Matrix) -> Result<Matrix, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "inverse of {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let field = a.field();
    let (rows, mults) = clear_rows(a);
    let mut m: Vec<Vec<Poly>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| {
                if i == j {
                    mults[i].clone()
                } else {
                    Poly::zero(field)
                }
            }));
            r
        })
        .collect();
    let mut prev = Poly::one(field);
    for k in 0..n {
        let p = pivot_row(&m, k).ok_or(AlgebraError::Singular)?;
        m.swap(p, k);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = if prev.is_one() {
                    t
                } else {
                    t.div_exact(&prev).expect("Gauss-Jordan division is exact")
                };
            }
            m[i][k] = Poly::zero(field);
        }
        prev = m[k][k].clone();
    }
    // rows above the last pivot keep a scaled diagonal; normalize row by row
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in m.iter().enumerate() {
        let d = &m[i][i];
        for e in &row[n..] {
            entries.push(RatFunc::new(e.clone(), d.clone())?);
        }
    }
    Matrix::new(n, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn v(n: &str) -> RatFunc {
        RatFunc::named(n)
    }

    fn ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| RatFunc::int(k)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_det_and_inverse() {
        let i = Matrix::identity(Field::Rational, 4);
        assert!(det_fraction_free(&i).unwrap().is_one());
        assert_eq!(mat_inverse(&i).unwrap(), i);
    }

    #[test]
    fn c1_det_and_inverse() {
        let (x1, x2, a) = (v("x1"), v("x2"), v("a"));
        let c1 = Matrix::from_rows(vec![
            vec![x1.clone(), x2.clone()],
            vec![a.mul(&x2).neg(), x1.neg()],
        ])
        .unwrap();
        let c = x1.pow(2).sub(&a.mul(&x2.pow(2)));
        assert_eq!(det_fraction_free(&c1).unwrap(), c.neg());
        assert_eq!(mat_inverse(&c1).unwrap(), c1.scale(&c.inv().unwrap()));
    }

    #[test]
    fn numeric_inverse_with_pivoting() {
        let m = ints(&[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]);
        let inv = mat_inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(Field::Rational, 3));
        assert_eq!(det_fraction_free(&m).unwrap(), RatFunc::int(25));
        assert_eq!(
            mat_inverse(&ints(&[&[1, 2], &[2, 4]])),
            Err(AlgebraError::Singular)
        );
    }

    #[test]
    fn rational_entries() {
        let x = v("x");
        let m = Matrix::from_rows(vec![
            vec![x.inv().unwrap(), RatFunc::int(1)],
            vec![RatFunc::int(1), x.add(&RatFunc::int(1)).inv().unwrap()],
        ])
        .unwrap();
        let expected = x
            .mul(&x.add(&RatFunc::int(1)))
            .inv()
            .unwrap()
            .sub(&RatFunc::int(1));
        assert_eq!(det_fraction_free(&m).unwrap(), expected);
        assert_eq!(
            m.mul(&mat_inverse(&m).unwrap()),
            Matrix::identity(Field::Rational, 2)
        );
    }

    #[test]
    fn char_poly_small() {
        let x = Var::named("x");
        let m = ints(&[&[3, 4], &[6, 8]]);
        let xp = RatFunc::var(x);
        assert_eq!(
            char_poly(&m, x).unwrap(),
            xp.pow(2).sub(&xp.scale(&crate::algebra::Scalar::int(11)))
        );
        let ab = Matrix::from_rows(vec![vec![v("a1").mul(&v("b1"))]]).unwrap();
        assert_eq!(char_poly(&ab, x).unwrap(), xp.sub(&v("a1").mul(&v("b1"))));
        let bad = Matrix::from_rows(vec![vec![xp]]).unwrap();
        assert!(matches!(
            char_poly(&bad, x),
            Err(AlgebraError::VarCollision(_))
        ));
    }
}
