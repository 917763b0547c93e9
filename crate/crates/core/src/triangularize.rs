//! Invariant flags: Engel flags for algebras of nilpotent matrices and
//! triangularizing flags for split solvable algebras.

use crate::error::{NashError, Result};
use crate::liealg::{bracket_span, LieAlgebra};
use crate::linalg::{complement_units, coordinates, Linalg};
use crate::matrix::Mat;
use crate::scalar::{Field, Q};
use crate::spectrum::{exact_pieces, float_spectrum, PieceKind};

/// Nested subspaces `V_1 ⊂ V_2 ⊂ …` of the natural module; stage `i` is
/// spanned by the first `i + 1` flag vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Flag<T> {
    pub stages: Vec<Vec<Vec<T>>>,
    pub complete: bool,
}

impl<T: Field> Flag<T> {
    fn from_vectors(n: usize, vectors: Vec<Vec<T>>) -> Self {
        let stages = (1..=vectors.len()).map(|i| vectors[..i].to_vec()).collect();
        Flag { stages, complete: vectors.len() == n }
    }

    /// The flag vectors as the columns of a matrix.
    pub fn basis_matrix(&self) -> Mat<T> {
        let last = self.stages.last().cloned().unwrap_or_default();
        let n = last.first().map_or(0, Vec::len);
        Mat::from_columns(n, &last)
    }
}

/// Eigenvalue choice for the common-eigenvector step, per scalar track.
pub trait EigenPick: Linalg {
    /// The smallest real eigenvalue of `m`. Fails with `NotSplit` if `m` has
    /// a non-real eigenvalue.
    fn smallest_real_eigenvalue(m: &Mat<Self>, tol: f64) -> Result<Self>;

    /// Distinct eigenvalues of `m`, ascending. Fails with `NotSplit` if one
    /// is not real; on the exact track, with `IrrationalSpectrum` if one is
    /// not rational.
    fn distinct_real_eigenvalues(m: &Mat<Self>, tol: f64) -> Result<Vec<Self>>;
}

impl EigenPick for Q {
    /// Fails with `IrrationalSpectrum` when every eigenvalue is real but none
    /// is rational.
    fn smallest_real_eigenvalue(m: &Mat<Q>, _tol: f64) -> Result<Q> {
        let pieces = exact_pieces(m);
        if pieces.iter().any(|p| !p.all_real()) {
            return Err(NashError::NotSplit("non-real eigenvalue".into()));
        }
        pieces
            .iter()
            .filter_map(|p| match &p.kind {
                PieceKind::Rational(v) => Some(v.clone()),
                _ => None,
            })
            .min()
            .ok_or(NashError::IrrationalSpectrum)
    }

    fn distinct_real_eigenvalues(m: &Mat<Q>, _tol: f64) -> Result<Vec<Q>> {
        let pieces = exact_pieces(m);
        if pieces.iter().any(|p| !p.all_real()) {
            return Err(NashError::NotSplit("non-real eigenvalue".into()));
        }
        let mut out = pieces
            .iter()
            .map(|p| match &p.kind {
                PieceKind::Rational(v) => Ok(v.clone()),
                _ => Err(NashError::IrrationalSpectrum),
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        Ok(out)
    }
}

impl EigenPick for f64 {
    fn smallest_real_eigenvalue(m: &Mat<f64>, tol: f64) -> Result<f64> {
        let spec = float_spectrum(m, tol)?;
        if spec.clusters.iter().any(|c| c.value.im != 0.0) {
            return Err(NashError::NotSplit("non-real eigenvalue".into()));
        }
        Ok(spec.clusters.iter().map(|c| c.value.re).fold(f64::INFINITY, f64::min))
    }

    fn distinct_real_eigenvalues(m: &Mat<f64>, tol: f64) -> Result<Vec<f64>> {
        let spec = float_spectrum(m, tol)?;
        if spec.clusters.iter().any(|c| c.value.im != 0.0) {
            return Err(NashError::NotSplit("non-real eigenvalue".into()));
        }
        let mut out: Vec<f64> = spec.clusters.iter().map(|c| c.value.re).collect();
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}

/// Matrix of `m` restricted to the invariant subspace with basis `w`.
fn restrict<T: Linalg>(m: &Mat<T>, w: &[Vec<T>], tol: f64) -> Result<Mat<T>> {
    let cols = w
        .iter()
        .map(|v| coordinates(w, &m.mul_vec(v), tol))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| NashError::NumericalFailure("subspace is not invariant".into()))?;
    Ok(Mat::from_columns(w.len(), &cols))
}

/// Action of each matrix on `ℝⁿ / span(sub)`, written in the coordinates
/// of the unit-vector complement `comp`.
fn induced<T: Linalg>(ms: &[Mat<T>], sub: &[Vec<T>], comp: &[Vec<T>], tol: f64) -> Result<Vec<Mat<T>>> {
    let mut full = sub.to_vec();
    full.extend(comp.iter().cloned());
    let k = sub.len();
    ms.iter()
        .map(|m| {
            let cols = comp
                .iter()
                .map(|c| coordinates(&full, &m.mul_vec(c), tol).map(|x| x[k..].to_vec()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| NashError::NumericalFailure("flag stage is not invariant".into()))?;
            Ok(Mat::from_columns(comp.len(), &cols))
        })
        .collect()
}

/// Basis of the joint kernel of `ms` acting on `T^dim`.
fn joint_kernel<T: Linalg>(ms: &[Mat<T>], dim: usize, tol: f64) -> Vec<Vec<T>> {
    let rows: Vec<T> = ms.iter().flat_map(|m| m.data().iter().cloned()).collect();
    let stacked = Mat::from_vec(ms.len() * dim, dim, rows);
    T::nullspace(&stacked, tol)
}

fn lift<T: Field>(comp: &[Vec<T>], coeffs: &[T]) -> Vec<T> {
    crate::linalg::combine(comp, coeffs)
}

/// Complete flag killed by every basis element: `b·V_i ⊆ V_{i−1}`.
pub fn engel_flag<T: Linalg>(g: &LieAlgebra<T>) -> Result<Flag<T>> {
    let n = g.n();
    let tol = g.tol();
    for b in g.basis() {
        let p = b.pow(n as u32);
        if !T::vec_negligible(p.data(), tol, b.frobenius().powi(n as i32)) {
            return Err(NashError::NotNilpotentAlgebra);
        }
    }
    let mut vectors: Vec<Vec<T>> = Vec::new();
    while vectors.len() < n {
        let comp = complement_units(&vectors, n, tol);
        let acts = induced(g.basis(), &vectors, &comp, tol)?;
        let ker = joint_kernel(&acts, comp.len(), tol);
        let first = ker.first().ok_or(NashError::NotNilpotentAlgebra)?;
        vectors.push(lift(&comp, first));
    }
    Ok(Flag::from_vectors(n, vectors))
}

/// A common eigenvector of matrices spanning a solvable Lie algebra with
/// real spectra, found in the joint kernel of their brackets.
fn common_eigenvector_of<T: EigenPick>(ms: &[Mat<T>], dim: usize, tol: f64) -> Result<Vec<T>> {
    let derived = bracket_span(dim, ms, ms, tol);
    let mut w = joint_kernel(&derived, dim, tol);
    if w.is_empty() {
        return Err(NashError::NotSolvable);
    }
    for m in ms {
        let r = restrict(m, &w, tol)?;
        let lambda = T::smallest_real_eigenvalue(&r, tol)?;
        let ker = T::nullspace(&r.add_scalar(&-lambda), tol);
        if ker.is_empty() {
            return Err(NashError::NumericalFailure("empty eigenspace".into()));
        }
        w = ker.iter().map(|c| lift(&w, c)).collect();
    }
    Ok(w.swap_remove(0))
}

fn check_split<T: EigenPick>(g: &LieAlgebra<T>) -> Result<()> {
    if !g.is_solvable() {
        return Err(NashError::NotSolvable);
    }
    for b in g.basis() {
        T::smallest_real_eigenvalue(b, g.tol()).or_else(|e| match e {
            NashError::IrrationalSpectrum => Ok(T::zero()),
            other => Err(other),
        })?;
    }
    Ok(())
}

/// A common eigenvector `v` and the character `b_i·v = χ_i·v`.
pub fn common_eigenvector<T: EigenPick>(g: &LieAlgebra<T>) -> Result<(Vec<T>, Vec<T>)> {
    check_split(g)?;
    let n = g.n();
    let v = common_eigenvector_of(g.basis(), n, g.tol())?;
    let pivot = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs_f64().total_cmp(&b.1.abs_f64()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let chi = g
        .basis()
        .iter()
        .map(|b| b.mul_vec(&v)[pivot].clone() / v[pivot].clone())
        .collect();
    Ok((v, chi))
}

/// Invertible `P` with `P⁻¹·b·P` upper-triangular for every basis element,
/// together with the invariant flag formed by its columns.
pub fn split_triangularize<T: EigenPick>(g: &LieAlgebra<T>) -> Result<(Mat<T>, Flag<T>)> {
    check_split(g)?;
    let n = g.n();
    let tol = g.tol();
    let mut vectors: Vec<Vec<T>> = Vec::new();
    while vectors.len() < n {
        let comp = complement_units(&vectors, n, tol);
        let acts = induced(g.basis(), &vectors, &comp, tol)?;
        let v = common_eigenvector_of(&acts, comp.len(), tol)?;
        vectors.push(lift(&comp, &v));
    }
    let flag = Flag::from_vectors(n, vectors);
    Ok((flag.basis_matrix(), flag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::battery;
    use crate::scalar::qi;

    fn e(n: usize, i: usize) -> Vec<Q> {
        (0..n).map(|j| if i == j { qi(1) } else { qi(0) }).collect()
    }

    #[test]
    fn engel_examples() {
        let f = engel_flag(&battery::strictly_upper(3)).unwrap();
        assert!(f.complete);
        assert_eq!(f.stages[0], vec![e(3, 0)]);
        assert_eq!(f.stages[1], vec![e(3, 0), e(3, 1)]);
        let f = engel_flag(&battery::zero(2)).unwrap();
        assert_eq!(f.stages[1], vec![e(2, 0), e(2, 1)]);
        let g = LieAlgebra::from_basis(2, vec![battery::unit(2, 0, 1)], 0.0).unwrap();
        assert_eq!(engel_flag(&g).unwrap().stages[0], vec![e(2, 0)]);
        assert_eq!(engel_flag(&battery::sl(2)), Err(NashError::NotNilpotentAlgebra));
    }

    #[test]
    fn split_examples() {
        let (p, _) = split_triangularize(&battery::lower(2)).unwrap();
        let swap = Mat::from_rows(vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]]).unwrap();
        assert_eq!(p, swap);
        let (p, _) = split_triangularize(&battery::strictly_upper(3)).unwrap();
        assert_eq!(p, Mat::identity(3));
        assert!(matches!(split_triangularize(&battery::so(2)), Err(NashError::NotSplit(_))));
        assert_eq!(split_triangularize(&battery::sl(2)), Err(NashError::NotSolvable));
    }

    #[test]
    fn common_eigenvector_examples() {
        let (v, chi) = common_eigenvector(&battery::upper(2)).unwrap();
        assert_eq!(v, e(2, 0));
        assert_eq!(chi, vec![qi(1), qi(0), qi(0)]);
        let (v, _) = common_eigenvector(&battery::lower(2)).unwrap();
        assert_eq!(v, e(2, 1));
        let (v, chi) = common_eigenvector(&battery::heisenberg()).unwrap();
        assert_eq!(v, e(3, 0));
        assert!(chi.iter().all(|c| Field::is_zero(c)));
    }

    #[test]
    fn battery_triangularizes() {
        for (name, g) in battery::split_solvable_battery() {
            let (p, flag) = split_triangularize(&g).unwrap();
            let pinv = Q::inverse(&p, 0.0).unwrap();
            for b in g.basis() {
                assert!(pinv.mul(b).mul(&p).is_upper_triangular(), "{name}");
                let v1 = &flag.stages[0][0];
                let bv = b.mul_vec(v1);
                assert!(crate::linalg::in_span(&flag.stages[0], &bv, 0.0), "{name}");
            }
        }
    }
}
