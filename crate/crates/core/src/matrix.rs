//! Dense matrices over a [`Field`] and the mode-tagged [`Matrix`] used at the
//! public boundary.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{NashError, Result};
use crate::scalar::{Field, Q};

/// Default relative tolerance for the floating track.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Row-major dense matrix. Rectangular shapes are allowed internally; the
/// public [`Matrix`] is always square.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T> Mat<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[T] {
        &self.data
    }
    pub fn into_data(self) -> Vec<T> {
        self.data
    }
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Mat { rows, cols, data }
    }
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl<T: Field> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, v: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NashError::MalformedInput("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out[(i, j)].clone();
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    /// `self + s·I`.
    pub fn add_scalar(&self, s: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = out[(i, i)].clone() + s.clone();
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `[a, b] = ab − ba`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self[(r, c)].is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Field::abs_f64).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map(Field::to_f64)
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let n = self.rows + other.rows;
        let m = self.cols + other.cols;
        let mut out = Self::zeros(n, m);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }
}

impl Mat<f64> {
    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &nalgebra::DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }

    pub fn to_exact(&self) -> Mat<Q> {
        self.map(|v| Q::from_f64_lossy(*v))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Arithmetic mode of a [`Matrix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Exact,
    /// Floating entries; values closer than `tol·(1 + ‖m‖)` are identified.
    Approx { tol: f64 },
}

/// A square matrix tagged with its arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Exact(Mat<Q>),
    Approx { m: Mat<f64>, tol: f64 },
}

impl Matrix {
    pub fn exact(m: Mat<Q>) -> Result<Self> {
        if !m.is_square() {
            return Err(NashError::DimensionMismatch("matrix must be square".into()));
        }
        Ok(Matrix::Exact(m))
    }

    pub fn approx(m: Mat<f64>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(NashError::DimensionMismatch("matrix must be square".into()));
        }
        if !m.is_finite() {
            return Err(NashError::MalformedInput("non-finite entry".into()));
        }
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(NashError::MalformedInput("tolerance must be a nonnegative float".into()));
        }
        Ok(Matrix::Approx { m, tol })
    }

    pub fn n(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.rows(),
            Matrix::Approx { m, .. } => m.rows(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Matrix::Exact(_) => Mode::Exact,
            Matrix::Approx { tol, .. } => Mode::Approx { tol: *tol },
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Matrix::Exact(_))
    }

    pub fn to_f64(&self) -> Mat<f64> {
        match self {
            Matrix::Exact(m) => m.to_f64(),
            Matrix::Approx { m, .. } => m.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Mat<Q>> {
        match self {
            Matrix::Exact(m) => Some(m),
            Matrix::Approx { .. } => None,
        }
    }

    pub fn tol(&self) -> f64 {
        match self {
            Matrix::Exact(_) => DEFAULT_TOL,
            Matrix::Approx { tol, .. } => *tol,
        }
    }

    /// Converts to the floating track, keeping the tolerance when already there.
    pub fn promote(&self, tol: f64) -> Matrix {
        match self {
            Matrix::Exact(m) => Matrix::Approx { m: m.to_f64(), tol },
            other => other.clone(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        match self {
            Matrix::Exact(m) => m.frobenius(),
            Matrix::Approx { m, .. } => m.frobenius(),
        }
    }

    pub fn identity_like(&self) -> Matrix {
        match self {
            Matrix::Exact(m) => Matrix::Exact(Mat::identity(m.rows())),
            Matrix::Approx { m, tol } => Matrix::Approx { m: Mat::identity(m.rows()), tol: *tol },
        }
    }

    fn binary(
        &self,
        other: &Matrix,
        fq: impl Fn(&Mat<Q>, &Mat<Q>) -> Mat<Q>,
        ff: impl Fn(&Mat<f64>, &Mat<f64>) -> Mat<f64>,
    ) -> Matrix {
        match (self, other) {
            (Matrix::Exact(a), Matrix::Exact(b)) => Matrix::Exact(fq(a, b)),
            (Matrix::Approx { m: a, tol }, b) => Matrix::Approx { m: ff(a, &b.to_f64()), tol: *tol },
            (a, Matrix::Approx { m: b, tol }) => Matrix::Approx { m: ff(&a.to_f64(), b), tol: *tol },
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.binary(other, Mat::mul, Mat::mul)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.binary(other, Mat::add, Mat::add)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.binary(other, Mat::sub, Mat::sub)
    }

    pub fn bracket(&self, other: &Matrix) -> Matrix {
        self.binary(other, Mat::bracket, Mat::bracket)
    }

    /// True when the entries vanish: exactly, or within `tol·scale` for
    /// approximate matrices.
    pub fn is_negligible(&self, scale: f64) -> bool {
        match self {
            Matrix::Exact(m) => m.is_zero(),
            Matrix::Approx { m, tol } => m.frobenius() <= tol * scale,
        }
    }
}

/// Relative distance `‖a − b‖_F / (1 + ‖b‖_F)`.
pub fn rel_diff(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    a.sub(b).frobenius() / (1.0 + b.frobenius())
}
