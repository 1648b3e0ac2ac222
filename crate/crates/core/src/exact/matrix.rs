use std::fmt;
use std::ops::Mul;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, size: usize) -> Matrix {
        let mut m = Matrix::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            for entry in row {
                if entry.field() != field {
                    return Err(Error::InvalidField(format!(
                        "entry over {} in a matrix over {field}",
                        entry.field()
                    )));
                }
                data.push(entry);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| dot(self.field, self.row(r), v))
            .collect()
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(format!(
                "{}x{} and {}x{} differ in shape",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Re-expresses every entry in another field.
    pub fn convert(&self, field: Field) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|v| field.convert(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, free);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `a + factor * b`, entrywise.
pub fn axpy(a: &mut [Scalar], factor: &Scalar, b: &[Scalar]) {
    if factor.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + &(factor * y);
        }
    }
}

/// A subspace of `field^dim` kept as a fully reduced echelon basis.
///
/// The reduced form is canonical: two echelon bases of the same subspace
/// have identical rows and pivots, whatever the insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Echelon {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(field: Field, dim: usize, vectors: impl IntoIterator<Item = &'a [Scalar]>) -> Echelon {
        let mut e = Echelon::new(field, dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Normal form of `v` modulo the subspace (pivot coordinates cleared).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let factor = -&out[p];
                axpy(&mut out, &factor, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` to the span; returns `false` if it was already contained.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let factor = -&row[p];
                axpy(row, &factor, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_of_identity() {
        let id = Matrix::identity(q(), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_of_rank_one() {
        let m = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(q(), &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn two_vanishes_over_gf2() {
        let m = Matrix::from_i64(Field::Prime(2), &[&[2]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(Field::Prime(2), &[&[0]]));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 3).kernel_basis().is_empty());
        let row = Matrix::from_i64(q(), &[&[1, 1]]);
        let k = row.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Scalar::Rational(int(-1)), Scalar::Rational(int(1))]);
        assert!(is_zero_vector(&row.mul_vec(&k[0])));
    }

    #[test]
    fn kernel_of_rank_three_4x6() {
        // rows 3 and 4 are combinations of rows 0..3
        let m = Matrix::from_i64(
            q(),
            &[
                &[1, 2, 0, -1, 3, 1],
                &[0, 1, 4, 2, -2, 0],
                &[2, 0, 1, 1, 1, 5],
                &[3, 3, 5, 2, 2, 6],
            ],
        );
        assert_eq!(m.rank(), 3);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(is_zero_vector(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let b = vec![f.from_i64(3), f.from_i64(-2)];
        assert_eq!(Matrix::identity(f, 2).solve(&b).unwrap(), Some(b.clone()));
        let x = Matrix::from_i64(f, &[&[1, 1]]).solve(&[f.one()]).unwrap();
        assert_eq!(x, Some(vec![f.one(), f.zero()]));
        let none = Matrix::from_i64(f, &[&[1], &[1]])
            .solve(&[f.one(), f.from_i64(2)])
            .unwrap();
        assert_eq!(none, None);
        assert!(Matrix::identity(f, 2).solve(&[f.one()]).is_err());
    }

    #[test]
    fn echelon_is_canonical() {
        let f = q();
        let a = vec![f.from_i64(1), f.from_i64(2), f.from_i64(0)];
        let b = vec![f.from_i64(0), f.from_i64(1), f.from_i64(1)];
        let sum: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let e1 = Echelon::spanned_by(f, 3, [a.as_slice(), b.as_slice()]);
        let e2 = Echelon::spanned_by(f, 3, [sum.as_slice(), b.as_slice(), a.as_slice()]);
        assert_eq!(e1, e2);
        assert_eq!(e1.rank(), 2);
        assert!(e1.contains(&sum));
    }
}
