//! Dense exact linear algebra over the rationals: Gauss-Jordan elimination,
//! null spaces, affine solution sets and span membership.

use std::fmt;

use crate::scalar::Scalar;

/// Row-major dense matrix of [`Scalar`]s.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&mut self, other: &Matrix) {
        if self.rows == 0 && self.cols == 0 {
            *self = other.clone();
            return;
        }
        assert_eq!(self.cols, other.cols, "column count");
        self.data.extend(other.data.iter().cloned());
        self.rows += other.rows;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place Gauss-Jordan reduction; returns the pivot columns. Pivots are
    /// normalized to one and cleared above and below.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        self.rref_tracked(None)
    }

    fn rref_tracked(&mut self, mut track: Option<&mut Matrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(r, p);
            }
            let inv = self[(r, c)].recip().expect("nonzero pivot");
            self.scale_row(r, &inv);
            if let Some(t) = track.as_deref_mut() {
                t.scale_row(r, &inv);
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    self.sub_row_multiple(i, r, &f);
                    if let Some(t) = track.as_deref_mut() {
                        t.sub_row_multiple(i, r, &f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn scale_row(&mut self, r: usize, f: &Scalar) {
        for j in 0..self.cols {
            let v = &self.data[r * self.cols + j];
            if !v.is_zero() {
                self.data[r * self.cols + j] = v * f;
            }
        }
    }

    /// row[i] -= f * row[r]
    fn sub_row_multiple(&mut self, i: usize, r: usize, f: &Scalar) {
        for j in 0..self.cols {
            let src = &self.data[r * self.cols + j];
            if !src.is_zero() {
                let d = src * f;
                self.data[i * self.cols + j] -= &d;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, in column order.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Solve `self * x = rhs`. Returns `None` when inconsistent, otherwise a
    /// particular solution (free variables zero) and a basis of the
    /// homogeneous solutions.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
        assert_eq!(rhs.len(), self.rows, "rhs length");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some((x, self.null_space()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "square matrix");
        let mut m = self.clone();
        let mut inv = Matrix::identity(self.rows);
        let pivots = m.rref_tracked(Some(&mut inv));
        (pivots.len() == self.rows).then_some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Scalar]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Coordinates relative to a linearly independent family of column vectors.
///
/// Elimination on the basis columns gives an invertible `E` with
/// `E * B = [I; 0]`. The first `m` rows of `E` extract coordinates and the
/// remaining rows vanish exactly on the span.
#[derive(Clone, Debug)]
pub struct SpanProjector {
    coords: Matrix,
    annihilator: Matrix,
    basis: Matrix,
}

impl SpanProjector {
    /// Fails with the rank when the columns are dependent.
    pub fn new(basis: Matrix) -> Result<Self, usize> {
        let (n, m) = (basis.rows(), basis.cols());
        let mut work = basis.clone();
        let mut e = Matrix::identity(n);
        let pivots = work.rref_tracked(Some(&mut e));
        if pivots.len() < m {
            return Err(pivots.len());
        }
        let mut coords = Matrix::zeros(m, n);
        let mut annihilator = Matrix::zeros(n - m, n);
        for i in 0..n {
            for j in 0..n {
                if i < m {
                    coords[(i, j)] = e[(i, j)].clone();
                } else {
                    annihilator[(i - m, j)] = e[(i, j)].clone();
                }
            }
        }
        Ok(SpanProjector {
            coords,
            annihilator,
            basis,
        })
    }

    pub fn span_dim(&self) -> usize {
        self.coords.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Rows spanning the linear conditions that cut out the span.
    pub fn annihilator(&self) -> &Matrix {
        &self.annihilator
    }

    /// Coordinates of `v` if it lies in the span, else the residual
    /// `v - B * coords(v)`.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Vec<Scalar>> {
        let c = self.coords.mul_vec(v);
        if self.annihilator.mul_vec(v).iter().all(Scalar::is_zero) {
            Ok(c)
        } else {
            let back = self.basis.mul_vec(&c);
            Err(v.iter().zip(&back).map(|(a, b)| a - b).collect())
        }
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.basis.mul_vec(coords)
    }
}
