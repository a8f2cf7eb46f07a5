use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::elim::{self, Kernel};
use super::field::{addmod, mulmod, Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over one field. Matrices act on column vectors, so
/// a linear map `k^c -> k^r` is an `r x c` matrix and `ψφ` is `psi * phi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!("entry over {} in a matrix over {field}", bad.field())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: Field, n: usize, c: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// `J(n, λ)`: λ on the diagonal, 1 on the superdiagonal.
    pub fn jordan_block(field: Field, n: usize, lambda: &Scalar) -> Matrix {
        let mut m = Matrix::scalar(field, n, lambda);
        for i in 1..n {
            m.data[(i - 1) * n + i] = field.one();
        }
        m
    }

    /// Builds from integer rows; all rows must share a length (`cols` fixes it for zero rows).
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_i64_shaped(field, rows.len(), cols, rows)
    }

    pub fn from_i64_shaped(field: Field, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Matrix {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            data.extend(r.iter().map(|&v| field.from_i64(v)));
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} where {cols} expected", r.len())));
            }
            data.extend(r);
        }
        Matrix::new(field, nrows, cols, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_columns(field, v.len(), &[v.to_vec()])
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    /// Checked product.
    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, rhs.field)));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Matrix) -> Matrix {
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        match self.field {
            Field::Prime(p) => {
                let a: Vec<u64> = self.data.iter().map(Scalar::residue).collect();
                let b: Vec<u64> = rhs.data.iter().map(Scalar::residue).collect();
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = a[i * k + l];
                        if x == 0 {
                            continue;
                        }
                        let row = &b[l * m..(l + 1) * m];
                        let dst = &mut out[i * m..(i + 1) * m];
                        for (d, &y) in dst.iter_mut().zip(row) {
                            if y != 0 {
                                *d = addmod(*d, mulmod(x, y, p), p);
                            }
                        }
                    }
                }
                Matrix { field: self.field, rows: n, cols: m, data: out.into_iter().map(|value| Scalar::Modular { value, modulus: p }).collect() }
            }
            Field::Rationals => {
                let mut out = Matrix::zeros(self.field, n, m);
                for i in 0..n {
                    for l in 0..k {
                        let x = self.get(i, l);
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let y = rhs.get(l, j);
                            if !y.is_zero() {
                                let cur = &out.data[i * m + j];
                                out.data[i * m + j] = cur + &(x * y);
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Sub-block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        let mut out = Matrix::zeros(self.field, nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.data[i * nc + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        assert_eq!(self.field, b.field);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            out.data[ii * self.cols..(ii + 1) * self.cols].clone_from_slice(self.row(i));
        }
        out
    }

    /// `[A_1 | A_2 | ...]`; `rows` fixes the height when `parts` is empty.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack heights");
            out.set_block(0, c, m);
            c += m.cols;
        }
        out
    }

    /// Blocks stacked vertically; `cols` fixes the width when `parts` is empty.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack widths");
            out.set_block(r, 0, m);
            r += m.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    /// Reinterprets the entries over another field. ℚ to GF(p) needs invertible
    /// denominators; any other change of field is lossy and refused.
    pub fn to_field(&self, target: Field) -> Result<Matrix> {
        if target == self.field {
            return Ok(self.clone());
        }
        match (self.field, target) {
            (Field::Rationals, Field::Prime(_)) => {
                let data = self.data.iter().map(|s| target.from_rational(s.rational())).collect::<Result<Vec<_>>>()?;
                Ok(Matrix { field: target, rows: self.rows, cols: self.cols, data })
            }
            (from, to) => Err(Error::FieldMismatch(format!("cannot convert a matrix over {from} to {to}"))),
        }
    }

    pub fn canonical_kernel(&self) -> Kernel {
        elim::kernel(self)
    }

    pub fn rank(&self) -> usize {
        self.cols - self.canonical_kernel().dim()
    }

    /// Columns form the canonical basis of the nullspace.
    pub fn kernel_basis(&self) -> Matrix {
        self.canonical_kernel().basis
    }

    /// The columns of `self` at the pivot positions: a basis of the column space.
    pub fn image_basis(&self) -> Matrix {
        let k = self.canonical_kernel();
        self.select_columns(&k.pivots())
    }

    /// Full-row-rank `C` with `C * self = 0` and `rows(C) = rows - rank`.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::Shape(format!(
                "solve: {}x{} system with right-hand side of {} rows",
                self.rows, self.cols, b.rows
            )));
        }
        if b.field != self.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, b.field)));
        }
        let n = self.cols;
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let k = aug.canonical_kernel();
        // A right-hand column that is a pivot of [A | B] is outside the column span of A.
        let mut pos = vec![usize::MAX; aug.cols];
        for (idx, &f) in k.free.iter().enumerate() {
            pos[f] = idx;
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for j in 0..b.cols {
            let idx = pos[n + j];
            if idx == usize::MAX {
                return Ok(None);
            }
            for i in 0..n {
                let v = k.basis.get(i, idx);
                if !v.is_zero() {
                    x.data[i * b.cols + j] = -v;
                }
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(self.clone());
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        // Square and solvable against the identity means invertible.
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        let c = self.cols;
        &mut self.data[i * c + j]
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<Matrix> for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shapes");
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shapes");
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
