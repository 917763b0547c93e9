//! Kernels, ranks, solves and subspace bookkeeping.
//!
//! Exact matrices are reduced by Gauss–Jordan elimination over ℚ. Floating
//! matrices decide rank by singular-value thresholding at `tol·(1 + ‖m‖_F)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{NashError, Result};
use crate::matrix::{Mat, Matrix};
use crate::scalar::{Field, Q};

/// Eigenvalues of a general real matrix (Hessenberg QR via `faer`);
/// `None` if the iteration fails to converge.
pub fn general_eigenvalues(m: &DMatrix<f64>) -> Option<Vec<Complex64>> {
    let fm = faer::Mat::<f64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    let eig = fm.eigenvalues().ok()?;
    Some(eig.into_iter().map(|z| Complex64::new(z.re, z.im)).collect())
}

/// Linear algebra primitives whose implementation depends on the scalar track.
pub trait Linalg: Field {
    /// Basis of `{v : m·v = 0}`.
    fn nullspace(m: &Mat<Self>, tol: f64) -> Vec<Vec<Self>>;

    /// Rank of `m`.
    fn rank(m: &Mat<Self>, tol: f64) -> usize;

    /// Some `x` with `a·x = b` (b given as columns), or `None` if inconsistent.
    fn solve(a: &Mat<Self>, b: &Mat<Self>, tol: f64) -> Option<Mat<Self>>;

    fn inverse(m: &Mat<Self>, tol: f64) -> Result<Mat<Self>>;

    /// Whether `v` is (numerically) the zero vector at the scale `scale`.
    fn vec_negligible(v: &[Self], tol: f64, scale: f64) -> bool;

    /// Canonical scaling of a nonzero vector: primitive integers on the exact
    /// track, unit length on the floating track; first nonzero entry positive.
    fn tidy(v: Vec<Self>) -> Vec<Self>;

    /// Tags a matrix of this track as a [`Matrix`].
    fn wrap(m: Mat<Self>, tol: f64) -> Matrix;

    /// Reads a [`Matrix`] on this track; floats become exact dyadic rationals.
    fn unwrap(m: &Matrix) -> Mat<Self>;
}

/// Gauss–Jordan reduction in place; returns the pivot columns.
fn rref_exact(m: &mut Mat<Q>) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !Field::is_zero(&m[(i, c)])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = <Q as Field>::one() / m[(r, c)].clone();
        for j in c..cols {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || Field::is_zero(&m[(i, c)]) {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                let v = m[(r, j)].clone() * f.clone();
                m[(i, j)] = m[(i, j)].clone() - v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form of an exact matrix together with its pivot columns.
pub fn rref(m: &Mat<Q>) -> (Mat<Q>, Vec<usize>) {
    let mut out = m.clone();
    let pivots = rref_exact(&mut out);
    (out, pivots)
}

impl Linalg for Q {
    fn wrap(m: Mat<Q>, _tol: f64) -> Matrix {
        Matrix::Exact(m)
    }

    fn tidy(v: Vec<Q>) -> Vec<Q> {
        primitive_q(&v)
    }

    fn unwrap(m: &Matrix) -> Mat<Q> {
        match m {
            Matrix::Exact(e) => e.clone(),
            Matrix::Approx { m, .. } => m.to_exact(),
        }
    }

    fn nullspace(m: &Mat<Q>, _tol: f64) -> Vec<Vec<Q>> {
        let (r, pivots) = rref(m);
        let cols = m.cols();
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![<Q as Field>::zero(); cols];
                v[f] = <Q as Field>::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    fn rank(m: &Mat<Q>, _tol: f64) -> usize {
        rref(m).1.len()
    }

    fn solve(a: &Mat<Q>, b: &Mat<Q>, _tol: f64) -> Option<Mat<Q>> {
        assert_eq!(a.rows(), b.rows());
        let (n, k) = (a.cols(), b.cols());
        let aug = Mat::from_fn(a.rows(), n + k, |r, c| {
            if c < n {
                a[(r, c)].clone()
            } else {
                b[(r, c - n)].clone()
            }
        });
        let (red, pivots) = rref(&aug);
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Mat::zeros(n, k);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..k {
                x[(p, j)] = red[(i, n + j)].clone();
            }
        }
        Some(x)
    }

    fn inverse(m: &Mat<Q>, tol: f64) -> Result<Mat<Q>> {
        if !m.is_square() {
            return Err(NashError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        Self::solve(m, &Mat::identity(m.rows()), tol).ok_or(NashError::NotInvertible)
    }

    fn vec_negligible(v: &[Q], _tol: f64, _scale: f64) -> bool {
        v.iter().all(Field::is_zero)
    }
}

/// Full singular value decomposition `m = U·diag(s)·Vᵀ` with square `U` and
/// `Vᵀ`; `s` is descending with `min(rows, cols)` entries.
pub(crate) struct Svd {
    pub u: DMatrix<f64>,
    pub s: Vec<f64>,
    pub v_t: DMatrix<f64>,
}

/// Computed by `faer`; falls back to `nalgebra` (on a zero-padded square
/// matrix) if that does not converge.
pub(crate) fn svd(m: &Mat<f64>) -> Svd {
    let (rows, cols) = (m.rows(), m.cols());
    let fm = faer::Mat::<f64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    if let Ok(d) = fm.svd() {
        let (u, v, s) = (d.U(), d.V(), d.S().column_vector());
        return Svd {
            u: DMatrix::from_fn(rows, rows, |i, j| u[(i, j)]),
            s: (0..rows.min(cols)).map(|i| s[i]).collect(),
            v_t: DMatrix::from_fn(cols, cols, |i, j| v[(j, i)]),
        };
    }
    let k = rows.max(cols);
    let padded = DMatrix::from_fn(k, k, |r, c| if r < rows && c < cols { m[(r, c)] } else { 0.0 });
    let d = padded.svd(true, true);
    let (u, v_t) = (d.u.expect("requested U"), d.v_t.expect("requested Vᵀ"));
    Svd {
        u: u.view((0, 0), (rows, rows)).into_owned(),
        s: d.singular_values.iter().take(rows.min(cols)).copied().collect(),
        v_t: v_t.view((0, 0), (cols, cols)).into_owned(),
    }
}

pub(crate) fn threshold(m: &Mat<f64>, tol: f64) -> f64 {
    tol * (1.0 + m.frobenius())
}

impl Linalg for f64 {
    fn wrap(m: Mat<f64>, tol: f64) -> Matrix {
        Matrix::Approx { m, tol }
    }

    fn tidy(v: Vec<f64>) -> Vec<f64> {
        let norm = vec_norm(&v);
        let Some(first) = v.iter().find(|x| x.abs() > 1e-14 * norm) else {
            return v;
        };
        let s = first.signum() / norm;
        v.into_iter().map(|x| x * s).collect()
    }

    fn unwrap(m: &Matrix) -> Mat<f64> {
        m.to_f64()
    }

    fn nullspace(m: &Mat<f64>, tol: f64) -> Vec<Vec<f64>> {
        if m.cols() == 0 {
            return Vec::new();
        }
        if m.rows() == 0 {
            return (0..m.cols())
                .map(|i| (0..m.cols()).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect();
        }
        let thr = threshold(m, tol);
        let d = svd(m);
        (0..m.cols())
            .filter(|&i| d.s.get(i).is_none_or(|&s| s <= thr))
            .map(|i| d.v_t.row(i).iter().copied().collect())
            .collect()
    }

    fn rank(m: &Mat<f64>, tol: f64) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            return 0;
        }
        let thr = threshold(m, tol);
        svd(m).s.iter().filter(|&&s| s > thr).count()
    }

    fn solve(a: &Mat<f64>, b: &Mat<f64>, tol: f64) -> Option<Mat<f64>> {
        assert_eq!(a.rows(), b.rows());
        if a.cols() == 0 {
            return if b.frobenius() <= tol * (1.0 + b.frobenius()) {
                Some(Mat::zeros(0, b.cols()))
            } else {
                None
            };
        }
        let na = a.to_nalgebra();
        let thr = threshold(a, tol);
        let d = svd(a);
        let utb = d.u.transpose() * b.to_nalgebra();
        let mut y = DMatrix::zeros(a.cols(), b.cols());
        for (i, &s) in d.s.iter().enumerate().filter(|(_, &s)| s > thr) {
            y.set_row(i, &(utb.row(i) / s));
        }
        let x = d.v_t.transpose() * y;
        let resid = (&na * &x - b.to_nalgebra()).norm();
        if resid <= tol * (1.0 + a.frobenius()) * (1.0 + x.norm()) + tol * b.frobenius() {
            Some(Mat::from_nalgebra(&x))
        } else {
            None
        }
    }

    fn inverse(m: &Mat<f64>, tol: f64) -> Result<Mat<f64>> {
        if !m.is_square() {
            return Err(NashError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        if Self::rank(m, tol) < m.rows() {
            return Err(NashError::NotInvertible);
        }
        m.to_nalgebra()
            .try_inverse()
            .map(|inv| Mat::from_nalgebra(&inv))
            .ok_or(NashError::NotInvertible)
    }

    fn vec_negligible(v: &[f64], tol: f64, scale: f64) -> bool {
        v.iter().map(|x| x * x).sum::<f64>().sqrt() <= tol * (1.0 + scale)
    }
}

/// Flattens a square matrix into a row-major vector.
pub fn vectorize<T: Field>(m: &Mat<T>) -> Vec<T> {
    m.data().to_vec()
}

pub fn unvectorize<T: Field>(n: usize, v: &[T]) -> Mat<T> {
    Mat::from_vec(n, n, v.to_vec())
}

fn vec_norm<T: Field>(v: &[T]) -> f64 {
    v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()
}

/// Greedy independent subset: keeps each vector that is not in the span of
/// the ones kept before it.
pub fn independent_subset<T: Linalg>(vectors: &[Vec<T>], tol: f64) -> Vec<Vec<T>> {
    let mut kept: Vec<Vec<T>> = Vec::new();
    for v in vectors {
        if !in_span(&kept, v, tol) {
            kept.push(v.clone());
        }
    }
    kept
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<T: Linalg>(basis: &[Vec<T>], v: &[T], tol: f64) -> bool {
    coordinates(basis, v, tol).is_some()
}

/// Coordinates of `v` in `basis` (assumed independent), if `v` is in the span.
pub fn coordinates<T: Linalg>(basis: &[Vec<T>], v: &[T], tol: f64) -> Option<Vec<T>> {
    if basis.is_empty() {
        return if T::vec_negligible(v, tol, 0.0) { Some(Vec::new()) } else { None };
    }
    let dim = v.len();
    let a = Mat::from_columns(dim, basis);
    let b = Mat::from_columns(dim, &[v.to_vec()]);
    let x = T::solve(&a, &b, tol)?;
    let coords = x.column(0);
    if !T::EXACT {
        // The float solve only bounds the residual loosely; re-check at the
        // scale of v itself.
        let recon = a.mul_vec(&coords);
        let diff: Vec<T> = recon.iter().zip(v).map(|(p, q)| p.clone() - q.clone()).collect();
        if !T::vec_negligible(&diff, tol, vec_norm(v)) {
            return None;
        }
    }
    Some(coords)
}

/// Basis of the intersection of two subspaces of the same ambient space.
pub fn intersect<T: Linalg>(u: &[Vec<T>], w: &[Vec<T>], tol: f64) -> Vec<Vec<T>> {
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    let dim = u[0].len();
    let mut cols: Vec<Vec<T>> = u.to_vec();
    cols.extend(w.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Mat::from_columns(dim, &cols);
    let ker = T::nullspace(&m, tol);
    let vectors: Vec<Vec<T>> = ker
        .iter()
        .map(|k| combine(u, &k[..u.len()]))
        .collect();
    independent_subset(&vectors, tol)
}

/// `Σ coeffs[i]·vectors[i]`.
pub fn combine<T: Field>(vectors: &[Vec<T>], coeffs: &[T]) -> Vec<T> {
    let dim = vectors.first().map_or(0, Vec::len);
    let mut out = vec![T::zero(); dim];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.clone() + c.clone() * x.clone();
        }
    }
    out
}

/// Extends `basis` to a basis of `T^dim` with standard unit vectors (taken in
/// index order) and returns only the added vectors.
pub fn complement_units<T: Linalg>(basis: &[Vec<T>], dim: usize, tol: f64) -> Vec<Vec<T>> {
    let mut all = basis.to_vec();
    let mut added = Vec::new();
    for i in 0..dim {
        if all.len() == dim {
            break;
        }
        let e: Vec<T> = (0..dim).map(|j| if i == j { T::one() } else { T::zero() }).collect();
        if !in_span(&all, &e, tol) {
            all.push(e.clone());
            added.push(e);
        }
    }
    added
}

/// Extends `basis` by vectors of `pool` (in order) until it spans the same
/// space as `basis ∪ pool`; returns the added vectors.
pub fn complement_from<T: Linalg>(basis: &[Vec<T>], pool: &[Vec<T>], tol: f64) -> Vec<Vec<T>> {
    let mut all = basis.to_vec();
    let mut added = Vec::new();
    for v in pool {
        if !in_span(&all, v, tol) {
            all.push(v.clone());
            added.push(v.clone());
        }
    }
    added
}

/// Scales an exact vector to coprime integer entries with a positive leading
/// entry. Leaves the zero vector untouched.
pub fn primitive_q(v: &[Q]) -> Vec<Q> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    let Some(first) = v.iter().find(|x| !Zero::is_zero(*x)) else {
        return v.to_vec();
    };
    let lcm = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
    ints.into_iter().map(|x| Q::from_integer(x / &g * &sign)).collect()
}
