//! Exponential and logarithm on the nilpotent, hyperbolic and exponential
//! loci, where they are mutually inverse bijections.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::calculus::float_function;
use crate::error::{NashError, Result};
use crate::jordan::{additive_jordan, classify, multiplicative_jordan, Setting};
use crate::matrix::{Mat, Matrix};
use crate::scalar::{Field, Q};
use crate::spectrum::{exact_spectrum, float_spectrum, Cluster};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Nilpotent,
    Hyperbolic,
    Exponential,
}

fn power_negligible(x: &Matrix, k: u32) -> bool {
    let scale = (1.0 + x.frobenius()).powi(k as i32);
    match x {
        Matrix::Exact(m) => m.pow(k).is_zero(),
        Matrix::Approx { m, tol } => Matrix::Approx { m: m.pow(k), tol: *tol }.is_negligible(scale),
    }
}

/// `Σ_{k<n} c_k·xᵏ` for exact and floating matrices.
fn series(x: &Matrix, coeff: impl Fn(usize) -> Q) -> Matrix {
    fn run<T: Field>(x: &Mat<T>, coeff: impl Fn(usize) -> Q) -> Mat<T> {
        let n = x.rows();
        let mut power = Mat::identity(n);
        let mut acc = Mat::zeros(n, n);
        for k in 0..n.max(1) {
            let c = coeff(k);
            if !Field::is_zero(&c) {
                acc = acc.add(&power.scale(&T::from_q(&c)));
            }
            power = power.mul(x);
        }
        acc
    }
    match x {
        Matrix::Exact(m) => Matrix::Exact(run(m, coeff)),
        Matrix::Approx { m, tol } => Matrix::Approx { m: run(m, coeff), tol: *tol },
    }
}

fn inv_factorial(k: usize) -> Q {
    let f: num_bigint::BigInt = (1..=k as u64).map(num_bigint::BigInt::from).product();
    Q::new(1.into(), f)
}

/// `Σ xᵏ/k!` for nilpotent `x`; the result is unipotent.
pub fn exp_nilpotent(x: &Matrix) -> Result<Matrix> {
    if !power_negligible(x, x.n() as u32) {
        return Err(NashError::NotNilpotent);
    }
    Ok(series(x, inv_factorial))
}

/// `Σ (−1)^{k+1} (x − I)ᵏ/k` for unipotent `x`.
pub fn log_unipotent(x: &Matrix) -> Result<Matrix> {
    let y = x.sub(&x.identity_like());
    if !power_negligible(&y, x.n() as u32) {
        return Err(NashError::NotUnipotent);
    }
    Ok(series(&y, |k| {
        if k == 0 {
            Q::from_integer(0.into())
        } else {
            let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
            Q::new(sign.into(), (k as i64).into())
        }
    }))
}

fn clusters_of(x: &Matrix) -> Result<(Mat<f64>, Vec<Cluster>, f64)> {
    match x {
        Matrix::Exact(m) => Ok((m.to_f64(), exact_spectrum(m).clusters, crate::matrix::DEFAULT_TOL)),
        Matrix::Approx { m, tol } => Ok((m.clone(), float_spectrum(m, *tol)?.clusters, *tol)),
    }
}

/// Exponential of a semisimple matrix with real spectrum, eigenvalue by
/// eigenvalue.
pub fn exp_hyperbolic(x: &Matrix) -> Result<Matrix> {
    let class = classify(x, Setting::Algebra)?;
    if !class.hyperbolic {
        return Err(NashError::NotHyperbolic("needs a semisimple matrix with real spectrum".into()));
    }
    if let Matrix::Exact(m) = x {
        if m.is_zero() {
            return Ok(Matrix::Exact(Mat::identity(m.rows())));
        }
    }
    let (m, clusters, tol) = clusters_of(x)?;
    let out = float_function(&m, &clusters, |z| Complex64::new(z.re.exp(), 0.0));
    Ok(Matrix::Approx { m: out, tol })
}

/// Logarithm of a semisimple matrix with positive real spectrum. Always on
/// the floating track.
pub fn log_hyperbolic(x: &Matrix) -> Result<Matrix> {
    let class = classify(x, Setting::Group).map_err(|e| match e {
        NashError::NotInvertible => NashError::NotHyperbolic("singular matrix".into()),
        other => other,
    })?;
    if !class.hyperbolic {
        return Err(NashError::NotHyperbolic("needs a semisimple matrix with positive spectrum".into()));
    }
    let (m, clusters, tol) = clusters_of(x)?;
    let out = float_function(&m, &clusters, |z| Complex64::new(z.re.ln(), 0.0));
    Ok(Matrix::Approx { m: out, tol })
}

/// `log(x_h) + log(x_u)` for invertible `x` with trivial elliptic part.
pub fn log_exponential(x: &Matrix) -> Result<Matrix> {
    let t = multiplicative_jordan(x)?;
    let id = x.identity_like();
    if !t.e.sub(&id).is_negligible(1.0 + x.frobenius()) {
        return Err(NashError::NotExponentialElement);
    }
    let log_u = log_unipotent(&t.u)?;
    if t.h == id {
        return Ok(log_u);
    }
    Ok(log_hyperbolic(&t.h)?.add(&log_u))
}

/// `exp(x_h)·exp(x_u)` for `x` with real spectrum; inverse of
/// [`log_exponential`].
pub fn exp_exponential(x: &Matrix) -> Result<Matrix> {
    let t = additive_jordan(x)?;
    if !t.e.is_negligible(1.0 + x.frobenius()) {
        return Err(NashError::NotExponentialElement);
    }
    let exp_u = exp_nilpotent(&t.u)?;
    Ok(exp_hyperbolic(&t.h)?.mul(&exp_u))
}

pub fn exp(x: &Matrix, domain: Domain) -> Result<Matrix> {
    match domain {
        Domain::Nilpotent => exp_nilpotent(x),
        Domain::Hyperbolic => exp_hyperbolic(x),
        Domain::Exponential => exp_exponential(x),
    }
}

pub fn log(x: &Matrix, domain: Domain) -> Result<Matrix> {
    match domain {
        Domain::Nilpotent => log_unipotent(x),
        Domain::Hyperbolic => log_hyperbolic(x),
        Domain::Exponential => log_exponential(x),
    }
}

/// General matrix exponential by scaling and squaring with Padé
/// approximants. Used to check results, not to produce them.
pub fn expm(m: &Mat<f64>) -> Mat<f64> {
    Mat::from_nalgebra(&m.to_nalgebra().exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn ex(rows: &[&[Q]]) -> Matrix {
        Matrix::Exact(Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap())
    }

    fn heis(a: Q, b: Q, c: Q) -> Matrix {
        let z = qi(0);
        ex(&[&[z.clone(), a, c], &[z.clone(), z.clone(), b], &[z.clone(), z.clone(), z]])
    }

    #[test]
    fn nilpotent_examples() {
        let e = ex(&[&[qi(0), qi(1)], &[qi(0), qi(0)]]);
        assert_eq!(exp_nilpotent(&e).unwrap(), ex(&[&[qi(1), qi(1)], &[qi(0), qi(1)]]));
        let (a, b, c) = (q(2, 3), qi(-5), q(1, 7));
        let x = heis(a.clone(), b.clone(), c.clone());
        let y = exp_nilpotent(&x).unwrap();
        let ym = y.as_exact().unwrap();
        assert_eq!(ym[(0, 1)], a);
        assert_eq!(ym[(1, 2)], b);
        assert_eq!(ym[(0, 2)], c + a * b / qi(2));
        assert_eq!(log_unipotent(&y).unwrap(), x);
        let zero = Matrix::Exact(Mat::zeros(2, 2));
        assert_eq!(exp_nilpotent(&zero).unwrap(), zero.identity_like());
        assert_eq!(log_unipotent(&zero.identity_like()).unwrap(), zero);
        assert_eq!(exp_nilpotent(&zero.identity_like()), Err(NashError::NotNilpotent));
        assert_eq!(log_unipotent(&zero), Err(NashError::NotUnipotent));
    }

    #[test]
    fn hyperbolic_examples() {
        let d = Matrix::Exact(Mat::diag(&[qi(2), q(1, 2)]));
        let l = log_hyperbolic(&d).unwrap().to_f64();
        let want = Mat::diag(&[2f64.ln(), -(2f64.ln())]);
        assert!(l.sub(&want).max_abs() < 1e-12);
        let zero = Matrix::Exact(Mat::zeros(2, 2));
        assert_eq!(exp_hyperbolic(&zero).unwrap(), zero.identity_like());
        let x = Matrix::approx(Mat::diag(&[4f64.ln(), 0.0]), 1e-8).unwrap();
        let e = exp_hyperbolic(&x).unwrap().to_f64();
        assert!(e.sub(&Mat::diag(&[4.0, 1.0])).max_abs() < 1e-12);
        let rot = ex(&[&[qi(0), qi(-1)], &[qi(1), qi(0)]]);
        assert!(matches!(exp_hyperbolic(&rot), Err(NashError::NotHyperbolic(_))));
        assert!(matches!(log_hyperbolic(&rot), Err(NashError::NotHyperbolic(_))));
    }

    #[test]
    fn exponential_examples() {
        let x = ex(&[&[qi(2), qi(1)], &[qi(0), qi(2)]]);
        let l = log_exponential(&x).unwrap();
        let back = expm(&l.to_f64());
        assert!(back.sub(&x.to_f64()).frobenius() < 1e-10);
        let again = exp_exponential(&l).unwrap();
        assert!(again.to_f64().sub(&x.to_f64()).frobenius() < 1e-10);
        let id = x.identity_like();
        assert!(log_exponential(&id).unwrap().is_negligible(1.0));
        let rot = ex(&[&[qi(0), qi(-1)], &[qi(1), qi(0)]]);
        assert_eq!(log_exponential(&rot), Err(NashError::NotExponentialElement));
    }

    #[test]
    fn expm_matches_series_on_nilpotent() {
        let x = heis(qi(1), qi(2), qi(3));
        let a = expm(&x.to_f64());
        let b = exp_nilpotent(&x).unwrap().to_f64();
        assert!(a.sub(&b).max_abs() < 1e-14);
    }
}
