//! Small dense linear algebra over a [`Scalar`] backend.
//!
//! Sizes here never exceed a few dozen rows, so everything is plain
//! Gaussian elimination. Pivot choice differs per backend: the exact
//! backend takes the first nonzero entry, the real backend the largest.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_i64(v)).collect())
                .collect(),
        )
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Largest absolute entry (zero for empty matrices).
    pub fn max_abs(&self) -> S {
        self.data.iter().fold(S::zero(), S::max_abs)
    }

    /// Frobenius norm squared.
    pub fn norm_sq(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, v| acc + v.clone() * v.clone())
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_negligible(tol))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.pick_pivot(r, c, tol) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = S::one() / self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self[(r, j)].clone();
                    if !v.is_zero() {
                        self[(i, j)] = self[(i, j)].clone() - f.clone() * v;
                    }
                }
                if !S::EXACT {
                    self[(i, c)] = S::zero();
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn pick_pivot(&self, from: usize, c: usize, tol: f64) -> Option<usize> {
        if S::EXACT {
            (from..self.rows).find(|&i| !self[(i, c)].is_zero())
        } else {
            let best = (from..self.rows).max_by(|&a, &b| {
                self[(a, c)]
                    .to_f64()
                    .abs()
                    .total_cmp(&self[(b, c)].to_f64().abs())
            })?;
            (!self[(best, c)].is_negligible(tol)).then_some(best)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.clone().rref_in_place(tol).len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref_in_place(tol);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    pub fn determinant(&self) -> S {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = m.pick_pivot(c, c, 0.0) else {
                return S::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                let f = m[(i, c)].clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                }
            }
        }
        det
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[S], tol: f64) -> Result<Vec<S>> {
        Ok(self.inverse(tol)?.mul_vec(b))
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.matmul(rhs)
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
