//! Standard matrix Lie algebras used as fixtures.

use crate::liealg::LieAlgebra;
use crate::matrix::Mat;
use crate::scalar::{qi, Q};

/// Matrix unit `E_ij`.
pub fn unit(n: usize, i: usize, j: usize) -> Mat<Q> {
    Mat::from_fn(n, n, |r, c| if (r, c) == (i, j) { qi(1) } else { qi(0) })
}

fn algebra(n: usize, basis: Vec<Mat<Q>>) -> LieAlgebra<Q> {
    LieAlgebra::from_basis(n, basis, 0.0).expect("fixture basis is a Lie algebra")
}

fn units(n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<Mat<Q>> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .map(|(i, j)| unit(n, i, j))
        .collect()
}

pub fn zero(n: usize) -> LieAlgebra<Q> {
    LieAlgebra::zero(n, 0.0)
}

pub fn diagonal(n: usize) -> LieAlgebra<Q> {
    algebra(n, units(n, |i, j| i == j))
}

pub fn gl(n: usize) -> LieAlgebra<Q> {
    algebra(n, units(n, |_, _| true))
}

/// `sl_n` with basis `H_1, …, H_{n−1}` (`H_i = E_ii − E_{i+1,i+1}`) followed
/// by the off-diagonal units in row-major order.
pub fn sl(n: usize) -> LieAlgebra<Q> {
    let mut basis: Vec<Mat<Q>> = (0..n.saturating_sub(1))
        .map(|i| unit(n, i, i).sub(&unit(n, i + 1, i + 1)))
        .collect();
    basis.extend(units(n, |i, j| i != j));
    algebra(n, basis)
}

/// Skew-symmetric matrices, basis `E_ij − E_ji` for `i < j`.
pub fn so(n: usize) -> LieAlgebra<Q> {
    let basis = units(n, |i, j| i < j)
        .into_iter()
        .map(|e| e.sub(&e.transpose()))
        .collect();
    algebra(n, basis)
}

pub fn upper(n: usize) -> LieAlgebra<Q> {
    algebra(n, units(n, |i, j| i <= j))
}

pub fn lower(n: usize) -> LieAlgebra<Q> {
    algebra(n, units(n, |i, j| i >= j))
}

pub fn strictly_upper(n: usize) -> LieAlgebra<Q> {
    algebra(n, units(n, |i, j| i < j))
}

/// The Heisenberg algebra as strictly upper-triangular 3×3 matrices.
pub fn heisenberg() -> LieAlgebra<Q> {
    strictly_upper(3)
}

/// `gl_2 ⋉ ℝ²` as 3×3 matrices `[[A, v], [0, 0]]`.
pub fn gl2_semidirect_r2() -> LieAlgebra<Q> {
    algebra(3, units(3, |i, j| i < 2 && j < 2 || (i < 2 && j == 2)))
}

/// The nine-member battery used for reductivity and Levi checks.
pub fn structure_battery() -> Vec<(&'static str, LieAlgebra<Q>)> {
    vec![
        ("zero", zero(2)),
        ("diagonal", diagonal(3)),
        ("sl2", sl(2)),
        ("so3", so(3)),
        ("gl2", gl(2)),
        ("upper2", upper(2)),
        ("upper3", upper(3)),
        ("heisenberg", heisenberg()),
        ("gl2-semidirect-r2", gl2_semidirect_r2()),
    ]
}

/// Split solvable algebras for triangularization checks.
pub fn split_solvable_battery() -> Vec<(&'static str, LieAlgebra<Q>)> {
    vec![
        ("zero", zero(2)),
        ("diagonal", diagonal(3)),
        ("upper2", upper(2)),
        ("lower2", lower(2)),
        ("upper3", upper(3)),
        ("lower3", lower(3)),
        ("heisenberg", heisenberg()),
    ]
}
