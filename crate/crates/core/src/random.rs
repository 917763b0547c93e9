//! Seeded generators for randomized checks. One ChaCha stream per purpose,
//! keyed by the user seed, so results do not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Linalg;
use crate::matrix::Mat;
use crate::scalar::{Field, Q};

pub type Gen = ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> Gen {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    g.set_stream(stream);
    g
}

/// Rational `p/q` with `q ∈ 1..=max_den` and `|p/q| ≤ bound`.
pub fn rational(g: &mut Gen, bound: i64, max_den: i64) -> Q {
    let q = g.random_range(1..=max_den);
    let p = g.random_range(-bound * q..=bound * q);
    Q::new(p.into(), q.into())
}

/// Nonzero rational with the same distribution otherwise.
pub fn nonzero_rational(g: &mut Gen, bound: i64, max_den: i64) -> Q {
    loop {
        let v = rational(g, bound, max_den);
        if !Field::is_zero(&v) {
            return v;
        }
    }
}

pub fn matrix(g: &mut Gen, n: usize, bound: i64, max_den: i64) -> Mat<Q> {
    Mat::from_vec(n, n, (0..n * n).map(|_| rational(g, bound, max_den)).collect())
}

pub fn invertible(g: &mut Gen, n: usize, bound: i64, max_den: i64) -> Mat<Q> {
    loop {
        let m = matrix(g, n, bound, max_den);
        if Q::rank(&m, 0.0) == n {
            return m;
        }
    }
}

/// Upper-triangular rational matrix whose diagonal is drawn from `diag`
/// (so eigenvalues repeat) and whose strict upper part is random.
pub fn triangular(g: &mut Gen, n: usize, diag: &[Q], bound: i64, max_den: i64) -> Mat<Q> {
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(match i.cmp(&j) {
                std::cmp::Ordering::Equal => diag[g.random_range(0..diag.len())].clone(),
                std::cmp::Ordering::Less => rational(g, bound, max_den),
                std::cmp::Ordering::Greater => Q::from_integer(0.into()),
            });
        }
    }
    Mat::from_vec(n, n, data)
}

/// `P·T·P⁻¹` for random invertible `P` and triangular `T`.
pub fn similar_to_triangular(g: &mut Gen, n: usize, diag: &[Q]) -> Mat<Q> {
    let t = triangular(g, n, diag, 3, 2);
    let p = invertible(g, n, 2, 1);
    let pinv = Q::inverse(&p, 0.0).expect("invertible");
    p.mul(&t).mul(&pinv)
}

/// Upper-triangular with positive rational diagonal.
pub fn positive_borel(g: &mut Gen, n: usize) -> Mat<Q> {
    let mut m = triangular(g, n, &[Q::from_integer(1.into())], 3, 3);
    for i in 0..n {
        let num = g.random_range(1..=9i64);
        let den = g.random_range(1..=4i64);
        m[(i, i)] = Q::new(num.into(), den.into());
    }
    m
}

/// Condition number in the spectral norm.
pub fn condition(m: &Mat<f64>) -> f64 {
    let s = m.to_nalgebra().singular_values();
    let max = s.iter().copied().fold(0.0, f64::max);
    let min = s.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}

/// Random element of `SL_n(ℝ)` with condition number below `max_cond`.
pub fn special_linear(g: &mut Gen, n: usize, max_cond: f64) -> Mat<f64> {
    loop {
        let mut m = Mat::from_vec(n, n, (0..n * n).map(|_| g.random_range(-1.0..1.0)).collect());
        let det = m.to_nalgebra().determinant();
        if det.abs() < 1e-6 {
            continue;
        }
        if det < 0.0 {
            for j in 0..n {
                m[(0, j)] = -m[(0, j)];
            }
        }
        let s = det.abs().powf(-1.0 / n as f64);
        let m = m.scale(&s);
        if condition(&m) < max_cond {
            return m;
        }
    }
}
