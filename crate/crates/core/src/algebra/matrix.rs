//! Dense matrices with rational-function entries.

use super::ratfunc::RatFunc;
use super::scalar::Field;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

/// The name used for Gram matrices, congruence witnesses and the like;
/// symmetry is not required.
pub type SymMatrix = Matrix;

#[derive(Clone, Debug)]
pub enum MatOp {
    Add,
    Sub,
    Mul,
    Transpose,
    ScalarMul(RatFunc),
}

/// Checked matrix arithmetic. `Transpose` and `ScalarMul` ignore `b`.
pub fn mat_arith(a: &Matrix, b: &Matrix, op: MatOp) -> Result<Matrix, AlgebraError> {
    match op {
        MatOp::Add => a.try_add(b),
        MatOp::Sub => a.try_add(&b.neg()),
        MatOp::Mul => a.try_mul(b),
        MatOp::Transpose => Ok(a.transpose()),
        MatOp::ScalarMul(c) => Ok(a.scale(&c)),
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFunc>) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> RatFunc) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| RatFunc::zero(field))
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::scalar_identity(n, &RatFunc::one(field))
    }

    /// `c · I_n`.
    pub fn scalar_identity(n: usize, c: &RatFunc) -> Self {
        let field = c.field();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                c.clone()
            } else {
                RatFunc::zero(field)
            }
        })
    }

    pub fn diag(d: &[RatFunc]) -> Self {
        let field = d[0].field();
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                RatFunc::zero(field)
            }
        })
    }

    /// Assembles a block matrix; blocks in a block row share their row count
    /// and blocks in a block column share their column count.
    pub fn block(blocks: &[Vec<&Matrix>]) -> Result<Self, AlgebraError> {
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(AlgebraError::DimensionMismatch("ragged block rows".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(AlgebraError::DimensionMismatch(format!(
                        "block ({bi},{bj}) has wrong shape"
                    )));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for (bi, brow) in blocks.iter().enumerate() {
            for i in 0..heights[bi] {
                for b in brow {
                    entries.extend_from_slice(&b.entries[i * b.cols..(i + 1) * b.cols]);
                }
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> Field {
        self.entries[0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<RatFunc> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFunc>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&RatFunc) -> Result<RatFunc, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        let entries = self.entries.iter().map(f).collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        self.map(RatFunc::neg)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|e| e.mul(c))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(self.shape_error("add", other));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(self.shape_error("multiply", other));
        }
        let field = self.field();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let prods: Vec<RatFunc> = (0..self.cols)
                    .filter(|&k| !self.get(i, k).is_zero() && !other.get(k, j).is_zero())
                    .map(|k| self.get(i, k).mul(other.get(k, j)))
                    .collect();
                entries.push(RatFunc::sum(field, prods.iter()));
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Panicking product for shapes known to agree.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[RatFunc], m: &Matrix) -> Result<Vec<RatFunc>, AlgebraError> {
        let row = Matrix::new(1, v.len(), v.to_vec())?;
        Ok(row.try_mul(m)?.entries)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[RatFunc]) -> Result<Vec<RatFunc>, AlgebraError> {
        let col = Matrix::new(v.len(), 1, v.to_vec())?;
        Ok(self.try_mul(&col)?.entries)
    }

    /// Deletes one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        let entries = (0..self.rows)
            .filter(|&i| i != row)
            .flat_map(|i| {
                (0..self.cols)
                    .filter(move |&j| j != col)
                    .map(move |j| (i, j))
            })
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols)
                .mul(other.get(i % other.rows, j % other.cols))
        })
    }

    /// Direct sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let field = self.field();
        Self::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => RatFunc::zero(field),
            },
        )
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }

    fn shape_error(&self, what: &str, other: &Self) -> AlgebraError {
        AlgebraError::DimensionMismatch(format!(
            "cannot {what} {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        ))
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> RatFunc {
        RatFunc::named(n)
    }

    fn c1() -> Matrix {
        let (x1, x2, a) = (v("x1"), v("x2"), v("a"));
        Matrix::from_rows(vec![
            vec![x1.clone(), x2.clone()],
            vec![a.mul(&x2).neg(), x1.neg()],
        ])
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = c1();
        let i = Matrix::identity(Field::Rational, 2);
        assert_eq!(i.mul(&m), m);
        assert_eq!(m.mul(&i), m);
    }

    #[test]
    fn c1_squares_to_norm() {
        let (x1, x2, a) = (v("x1"), v("x2"), v("a"));
        let c = x1.pow(2).sub(&a.mul(&x2.pow(2)));
        assert_eq!(c1().mul(&c1()), Matrix::scalar_identity(2, &c));
    }

    #[test]
    fn shape_errors() {
        let m = c1();
        let r = Matrix::new(1, 3, vec![RatFunc::int(1); 3]).unwrap();
        assert!(mat_arith(&m, &r, MatOp::Mul).is_err());
        assert!(mat_arith(&m, &r, MatOp::Add).is_err());
        assert!(Matrix::new(2, 2, vec![RatFunc::int(1)]).is_err());
    }

    #[test]
    fn blocks_and_kron() {
        let i2 = Matrix::identity(Field::Rational, 2);
        let m = c1();
        let b = Matrix::block(&[vec![&m, &i2], vec![&i2, &m]]).unwrap();
        assert_eq!(b.submatrix(2, 2, 2, 2), m);
        assert_eq!(i2.kron(&m), m.direct_sum(&m));
    }
}
