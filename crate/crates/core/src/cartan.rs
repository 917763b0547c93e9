//! Cartan involution `θ(x) = −xᵀ`, the splitting `𝔤 = 𝔨 ⊕ 𝔭`, maximal
//! abelian subspaces of `𝔭`, restricted roots, and the polar (`KAK`) and
//! Iwasawa (`KAN`) factorizations of invertible matrices.

use nalgebra::DMatrix;

use crate::error::{NashError, Result};
use crate::liealg::{flat, in_subspace, span_basis, unflat, LieAlgebra};
use crate::linalg::{combine, in_span, svd, Linalg, Svd};
use crate::matrix::{Mat, Matrix, DEFAULT_TOL};
use crate::scalar::Field;
use crate::triangularize::{engel_flag, EigenPick};

/// `𝔨` (skew-symmetric part) and `𝔭` (symmetric part) of a θ-stable algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanSplit<T> {
    pub n: usize,
    pub k_basis: Vec<Mat<T>>,
    pub p_basis: Vec<Mat<T>>,
    pub tol: f64,
}

/// Joint eigenspace decomposition of `𝔤` under `ad(𝔞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum<T> {
    pub n: usize,
    pub a_basis: Vec<Mat<T>>,
    /// Each root as its values on `a_basis`.
    pub roots: Vec<Vec<T>>,
    pub root_spaces: Vec<Vec<Mat<T>>>,
    pub zero_space: Vec<Mat<T>>,
    /// Indices into `roots` of the positive system.
    pub positive: Vec<usize>,
    pub tol: f64,
}

/// `x = k·a·n` with `k` orthogonal, `a` positive diagonal and `n` unit upper
/// triangular (in the chosen orthonormal basis).
#[derive(Debug, Clone, PartialEq)]
pub struct KanTriple {
    pub k: Mat<f64>,
    pub a: Mat<f64>,
    pub n: Mat<f64>,
}

fn theta<T: Field>(x: &Mat<T>) -> Mat<T> {
    x.transpose().neg()
}

/// Eigenspaces of `θ` on `𝔤`.
pub fn cartan_split<T: Linalg>(g: &LieAlgebra<T>) -> Result<CartanSplit<T>> {
    let n = g.n();
    let tol = g.tol();
    if g.basis().iter().any(|b| !g.contains(&theta(b))) {
        return Err(NashError::NotThetaStable);
    }
    let half = T::from_ratio(1, 2);
    let part = |sign: i64| -> Vec<Mat<T>> {
        let raw: Vec<Mat<T>> = g
            .basis()
            .iter()
            .map(|b| b.add(&b.transpose().scale(&T::from_i64(sign))).scale(&half))
            .collect();
        let kept = span_basis(n, &raw, tol);
        unflat(n, flat(&kept).into_iter().map(T::tidy).collect())
    };
    Ok(CartanSplit { n, k_basis: part(-1), p_basis: part(1), tol })
}

/// Basis of `{c ∈ span(space) : [a, c] = 0 for all a ∈ span(set)}`.
fn centralizer_in<T: Linalg>(n: usize, set: &[Mat<T>], space: &[Mat<T>], tol: f64) -> Vec<Mat<T>> {
    if set.is_empty() {
        return space.to_vec();
    }
    let rows = set.len() * n * n;
    let cols: Vec<Vec<T>> = space
        .iter()
        .map(|c| set.iter().flat_map(|a| a.bracket(c).into_data()).collect())
        .collect();
    let m = Mat::from_columns(rows, &cols);
    let ker = T::nullspace(&m, tol);
    let space_flat = flat(space);
    ker.iter().map(|k| Mat::from_vec(n, n, combine(&space_flat, k))).collect()
}

/// Greedy maximal abelian subspace of `𝔭` starting from its first basis
/// vector.
pub fn maximal_abelian<T: Linalg>(split: &CartanSplit<T>) -> Vec<Mat<T>> {
    match split.p_basis.first() {
        Some(seed) => maximal_abelian_from(split, seed).expect("first basis vector lies in 𝔭"),
        None => Vec::new(),
    }
}

/// Greedy maximal abelian subspace of `𝔭` containing `seed`.
pub fn maximal_abelian_from<T: Linalg>(split: &CartanSplit<T>, seed: &Mat<T>) -> Result<Vec<Mat<T>>> {
    let (n, tol) = (split.n, split.tol);
    if !in_subspace(&split.p_basis, seed, tol) {
        return Err(NashError::NotInAlgebra);
    }
    let mut a: Vec<Mat<T>> = span_basis(n, std::slice::from_ref(seed), tol);
    loop {
        let cent = centralizer_in(n, &a, &split.p_basis, tol);
        let a_flat = flat(&a);
        match cent.iter().find(|c| !in_span(&a_flat, c.data(), tol)) {
            Some(c) => a.push(c.clone()),
            None => return Ok(a),
        }
    }
}

/// Coordinates of `[x, b_j]` for each basis element, as columns of `ad(x)`.
fn ad_in<T: Linalg>(g: &LieAlgebra<T>, x: &Mat<T>) -> Result<Mat<T>> {
    let d = g.dim();
    let cols = g
        .basis()
        .iter()
        .map(|b| g.coords(&x.bracket(b)).ok_or(NashError::NotInAlgebra))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_columns(d, &cols))
}

/// Restricted roots of `𝔤` with respect to the abelian subspace `𝔞`.
///
/// The space is split successively by the eigenspaces of each `ad(a_i)`;
/// every block must be diagonalizable with real eigenvalues.
pub fn restricted_roots<T: EigenPick>(g: &LieAlgebra<T>, a: &[Mat<T>]) -> Result<RootDatum<T>> {
    let (n, tol, d) = (g.n(), g.tol(), g.dim());
    for (i, x) in a.iter().enumerate() {
        if !g.contains(x) {
            return Err(NashError::NotInAlgebra);
        }
        for y in &a[i + 1..] {
            if !T::vec_negligible(x.bracket(y).data(), tol, x.frobenius() * y.frobenius()) {
                return Err(NashError::NotAbelian);
            }
        }
    }
    let identity: Vec<Vec<T>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut blocks: Vec<(Vec<T>, Vec<Vec<T>>)> = vec![(Vec::new(), identity)];
    for x in a {
        let ad = ad_in(g, x)?;
        let mut next = Vec::new();
        for (tuple, w) in blocks {
            if w.is_empty() {
                continue;
            }
            let cols = w
                .iter()
                .map(|v| crate::linalg::coordinates(&w, &ad.mul_vec(v), tol))
                .collect::<Option<Vec<_>>>()
                .ok_or(NashError::NotSimultaneouslyDiagonalizable)?;
            let r = Mat::from_columns(w.len(), &cols);
            let values = T::distinct_real_eigenvalues(&r, tol).map_err(|e| match e {
                NashError::NotSplit(_) => NashError::NotSimultaneouslyDiagonalizable,
                other => other,
            })?;
            let mut total = 0;
            for lambda in values {
                let ker = T::nullspace(&r.add_scalar(&-lambda.clone()), tol);
                total += ker.len();
                let mut t = tuple.clone();
                t.push(lambda);
                next.push((t, ker.iter().map(|c| combine(&w, c)).collect::<Vec<_>>()));
            }
            if total != w.len() {
                return Err(NashError::NotSimultaneouslyDiagonalizable);
            }
        }
        blocks = next;
    }
    let scale = a.iter().map(Mat::frobenius).fold(1.0, f64::max) * (1.0 + g.basis().iter().map(Mat::frobenius).fold(0.0, f64::max));
    let nonzero = |v: &T| v.abs_f64() > tol * scale;
    let to_mats = |vs: &[Vec<T>]| -> Vec<Mat<T>> { vs.iter().map(|c| g.element(c)).collect() };
    let mut zero_space = Vec::new();
    let mut roots = Vec::new();
    let mut root_spaces = Vec::new();
    let mut positive = Vec::new();
    for (tuple, w) in blocks {
        match tuple.iter().find(|v| nonzero(v)) {
            None => zero_space.extend(to_mats(&w)),
            Some(first) => {
                if first.to_f64() > 0.0 {
                    positive.push(roots.len());
                }
                roots.push(tuple);
                root_spaces.push(to_mats(&w));
            }
        }
    }
    Ok(RootDatum { n, a_basis: a.to_vec(), roots, root_spaces, zero_space, positive, tol })
}

/// `𝔫 = ⊕ 𝔤_α` over the positive roots, checked to be a Lie algebra of
/// nilpotent matrices.
pub fn nilpotent_part_n<T: Linalg>(rd: &RootDatum<T>) -> Result<LieAlgebra<T>> {
    let basis: Vec<Mat<T>> = rd.positive.iter().flat_map(|&i| rd.root_spaces[i].iter().cloned()).collect();
    let n_alg = LieAlgebra::from_basis(rd.n, basis, rd.tol)
        .map_err(|_| NashError::PostconditionFailed("𝔫 is not bracket-closed".into()))?;
    engel_flag(&n_alg).map_err(|_| NashError::PostconditionFailed("𝔫 contains a non-nilpotent element".into()))?;
    Ok(n_alg)
}

/// Orthonormal basis in which `𝔞` is diagonal and `𝔫` strictly upper
/// triangular: eigenvectors of a generic element of `𝔞`, ordered by
/// decreasing eigenvalue.
pub fn adapted_basis<T: Linalg>(rd: &RootDatum<T>) -> Mat<f64> {
    let r = rd.a_basis.len();
    let n = rd.n;
    if r == 0 {
        return Mat::identity(n);
    }
    let vals: Vec<f64> = rd.roots.iter().flatten().map(Field::to_f64).filter(|v| v.abs() > 1e-12).map(f64::abs).collect();
    let (big, small) = vals.iter().fold((0.0f64, f64::INFINITY), |(b, s), &v| (b.max(v), s.min(v)));
    let m = if vals.is_empty() { 2.0 } else { 2.0 + big / small };
    let mut h = Mat::<f64>::zeros(n, n);
    for (i, a) in rd.a_basis.iter().enumerate() {
        h = h.add(&a.to_f64().scale(&m.powi((r - 1 - i) as i32)));
    }
    let sym = (h.to_nalgebra() + h.to_nalgebra().transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    Mat::from_fn(n, n, |row, col| eig.eigenvectors[(row, order[col])])
}

fn check_invertible(x: &Matrix) -> Result<Mat<f64>> {
    let invertible = match x {
        Matrix::Exact(m) => crate::scalar::Q::rank(m, 0.0) == m.rows(),
        Matrix::Approx { m, tol } => f64::rank(m, *tol) == m.rows(),
    };
    if !invertible {
        return Err(NashError::NotInvertible);
    }
    Ok(x.to_f64())
}

/// `x = k·exp(X)` with `k` orthogonal and `X` symmetric, from the singular
/// value decomposition `x = U·Σ·Vᵀ`: `k = U·Vᵀ`, `X = V·log Σ·Vᵀ`.
pub fn polar_kak(x: &Matrix) -> Result<(Matrix, Matrix)> {
    let m = check_invertible(x)?;
    let tol = x.tol();
    let Svd { u, s: sigma, v_t: vt } = svd(&m);
    let k = &u * &vt;
    let log_s = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(sigma.len(), sigma.iter().map(|s| s.ln())));
    let big_x = vt.transpose() * log_s * &vt;
    let sym = (&big_x + big_x.transpose()) * 0.5;
    Ok((
        Matrix::Approx { m: Mat::from_nalgebra(&k), tol },
        Matrix::Approx { m: Mat::from_nalgebra(&sym), tol },
    ))
}

/// Gram–Schmidt with one reorthogonalization pass: `x = q·r`, `r` upper
/// triangular with positive diagonal.
fn gram_schmidt(x: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>)> {
    let n = x.rows();
    let scale = tol * (1.0 + x.frobenius());
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut r = Mat::<f64>::zeros(n, n);
    let mut rd = r.data().to_vec();
    for j in 0..n {
        let mut v = x.column(j);
        for _ in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let c: f64 = qi.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vv, qq) in v.iter_mut().zip(qi) {
                    *vv -= c * qq;
                }
                rd[i * n + j] += c;
            }
        }
        let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm <= scale {
            return Err(NashError::NotInvertible);
        }
        rd[j * n + j] = norm;
        q.push(v.into_iter().map(|t| t / norm).collect());
    }
    r = Mat::from_vec(n, n, rd);
    Ok((Mat::from_columns(n, &q), r))
}

/// Iwasawa factorization in standard coordinates.
pub fn iwasawa_kan(x: &Matrix) -> Result<KanTriple> {
    let m = check_invertible(x)?;
    let n = m.rows();
    let (k, r) = gram_schmidt(&m, x.tol())?;
    let diag: Vec<f64> = (0..n).map(|i| r[(i, i)]).collect();
    let a = Mat::diag(&diag);
    let nn = Mat::from_fn(n, n, |i, j| r[(i, j)] / diag[i]);
    Ok(KanTriple { k, a, n: nn })
}

/// Iwasawa factorization relative to an orthonormal basis `b` (columns):
/// `bᵀ·a·b` is diagonal and `bᵀ·n·b` unit upper triangular.
pub fn iwasawa_kan_in(x: &Matrix, b: &Mat<f64>) -> Result<KanTriple> {
    let m = check_invertible(x)?;
    let bt = b.transpose();
    let local = Matrix::Approx { m: bt.mul(&m).mul(b), tol: x.tol().max(DEFAULT_TOL) };
    let t = iwasawa_kan(&local)?;
    Ok(KanTriple {
        k: b.mul(&t.k).mul(&bt),
        a: b.mul(&t.a).mul(&bt),
        n: b.mul(&t.n).mul(&bt),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::battery;
    use crate::explog::{expm, log_hyperbolic};
    use crate::matrix::rel_diff;
    use crate::scalar::{q, qi, Q};

    #[test]
    fn split_examples() {
        let s = cartan_split(&battery::sl(2)).unwrap();
        let e_minus_f = battery::unit(2, 0, 1).sub(&battery::unit(2, 1, 0));
        assert_eq!(s.k_basis, vec![e_minus_f]);
        assert_eq!(s.p_basis.len(), 2);
        assert!(in_subspace(&s.p_basis, &Mat::diag(&[qi(1), qi(-1)]), 0.0));
        assert!(in_subspace(&s.p_basis, &battery::unit(2, 0, 1).add(&battery::unit(2, 1, 0)), 0.0));
        let s = cartan_split(&battery::so(3)).unwrap();
        assert_eq!((s.k_basis.len(), s.p_basis.len()), (3, 0));
        let s = cartan_split(&battery::diagonal(3)).unwrap();
        assert_eq!((s.k_basis.len(), s.p_basis.len()), (0, 3));
        assert_eq!(cartan_split(&battery::upper(2)), Err(NashError::NotThetaStable));
    }

    #[test]
    fn maximal_abelian_examples() {
        let a = maximal_abelian(&cartan_split(&battery::sl(2)).unwrap());
        assert_eq!(a, vec![Mat::diag(&[qi(1), qi(-1)])]);
        let a = maximal_abelian(&cartan_split(&battery::sl(3)).unwrap());
        assert_eq!(a.len(), 2);
        assert!(a.iter().all(Mat::is_diagonal));
        assert!(maximal_abelian(&cartan_split(&battery::so(3)).unwrap()).is_empty());
        let split = cartan_split(&battery::sl(3)).unwrap();
        let seed = battery::unit(3, 0, 1).add(&battery::unit(3, 1, 0));
        assert_eq!(maximal_abelian_from(&split, &seed).unwrap().len(), 2);
    }

    #[test]
    fn root_examples() {
        let g = battery::sl(2);
        let a = vec![Mat::diag(&[qi(1), qi(-1)])];
        let rd = restricted_roots(&g, &a).unwrap();
        assert_eq!(rd.roots.len(), 2);
        let p = rd.positive[0];
        assert_eq!(rd.roots[p], vec![qi(2)]);
        assert_eq!(rd.root_spaces[p].len(), 1);
        assert!(in_subspace(&rd.root_spaces[p], &battery::unit(2, 0, 1), 0.0));
        assert_eq!(rd.zero_space.len(), 1);
        let n = nilpotent_part_n(&rd).unwrap();
        assert_eq!(n.dim(), 1);

        let g3 = battery::sl(3);
        let a3 = maximal_abelian(&cartan_split(&g3).unwrap());
        let rd3 = restricted_roots(&g3, &a3).unwrap();
        assert_eq!(rd3.roots.len(), 6);
        assert!(rd3.root_spaces.iter().all(|s| s.len() == 1));
        let n3 = nilpotent_part_n(&rd3).unwrap();
        assert_eq!(n3.dim(), 3);
        let b = adapted_basis(&rd3);
        for x in n3.basis() {
            let y = b.transpose().mul(&x.to_f64()).mul(&b);
            for i in 0..3 {
                for j in 0..=i {
                    assert!(y[(i, j)].abs() < 1e-12);
                }
            }
        }

        let d = battery::diagonal(2);
        let rd = restricted_roots(&d, d.basis()).unwrap();
        assert!(rd.roots.is_empty());
        assert_eq!(rd.zero_space.len(), 2);
        assert_eq!(nilpotent_part_n(&rd).unwrap().dim(), 0);
    }

    #[test]
    fn roots_reject_non_hyperbolic() {
        let g = battery::so(2);
        let r = restricted_roots(&g, g.basis());
        assert!(r.is_ok(), "ad of so2 on itself is zero");
        let g = battery::gl(2);
        let rot = battery::so(2).basis()[0].clone();
        assert_eq!(restricted_roots(&g, &[rot]), Err(NashError::NotSimultaneouslyDiagonalizable));
    }

    fn exact(rows: Vec<Vec<Q>>) -> Matrix {
        Matrix::Exact(Mat::from_rows(rows).unwrap())
    }

    #[test]
    fn kak_examples() {
        let (k, x) = polar_kak(&exact(vec![vec![qi(4), qi(0)], vec![qi(0), qi(1)]])).unwrap();
        assert!(k.to_f64().sub(&Mat::identity(2)).max_abs() < 1e-12);
        assert!(x.to_f64().sub(&Mat::diag(&[4f64.ln(), 0.0])).max_abs() < 1e-12);
        let rot = exact(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]]);
        let (k, x) = polar_kak(&rot).unwrap();
        assert!(k.to_f64().sub(&rot.to_f64()).max_abs() < 1e-12);
        assert!(x.to_f64().max_abs() < 1e-12);
        let shear = exact(vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)]]);
        let (k, x) = polar_kak(&shear).unwrap();
        let kf = k.to_f64();
        assert!(kf.transpose().mul(&kf).sub(&Mat::identity(2)).max_abs() < 1e-12);
        assert!(rel_diff(&kf.mul(&expm(&x.to_f64())), &shear.to_f64()) < 1e-10);
        // Second route: X = ½·log(xᵀx) through the spectral logarithm.
        let xtx = Matrix::Exact(shear.as_exact().unwrap().transpose().mul(shear.as_exact().unwrap()));
        let half_log = log_hyperbolic(&xtx).unwrap().to_f64().scale(&0.5);
        assert!(half_log.sub(&x.to_f64()).max_abs() < 1e-12);
        let singular = exact(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        assert_eq!(polar_kak(&singular), Err(NashError::NotInvertible));
    }

    #[test]
    fn kan_examples() {
        let t = iwasawa_kan(&exact(vec![vec![qi(2), qi(0)], vec![qi(0), q(1, 2)]])).unwrap();
        assert!(t.k.sub(&Mat::identity(2)).max_abs() < 1e-15);
        assert!(t.a.sub(&Mat::diag(&[2.0, 0.5])).max_abs() < 1e-15);
        assert!(t.n.sub(&Mat::identity(2)).max_abs() < 1e-15);
        let rot = exact(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]]);
        let t = iwasawa_kan(&rot).unwrap();
        assert!(t.k.sub(&rot.to_f64()).max_abs() < 1e-15);
        let x = exact(vec![vec![qi(1), qi(0)], vec![qi(1), qi(1)]]);
        let t = iwasawa_kan(&x).unwrap();
        let s = 0.5f64.sqrt();
        let k = Mat::from_rows(vec![vec![s, -s], vec![s, s]]).unwrap();
        assert!(t.k.sub(&k).max_abs() < 1e-12);
        assert!(t.a.sub(&Mat::diag(&[2f64.sqrt(), s])).max_abs() < 1e-12);
        assert!(t.n.sub(&Mat::from_rows(vec![vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap()).max_abs() < 1e-12);
        assert!(t.k.mul(&t.a).mul(&t.n).sub(&x.to_f64()).max_abs() < 1e-12);
        let singular = exact(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        assert_eq!(iwasawa_kan(&singular), Err(NashError::NotInvertible));
    }

    #[test]
    fn kan_in_adapted_basis() {
        let g3 = battery::sl(3);
        let rd = restricted_roots(&g3, &maximal_abelian(&cartan_split(&g3).unwrap())).unwrap();
        let b = adapted_basis(&rd);
        let x = Matrix::approx(
            Mat::from_rows(vec![vec![2.0, 1.0, 0.5], vec![-1.0, 1.0, 0.0], vec![0.0, 3.0, 1.0]]).unwrap(),
            1e-8,
        )
        .unwrap();
        let t = iwasawa_kan_in(&x, &b).unwrap();
        assert!(rel_diff(&t.k.mul(&t.a).mul(&t.n), &x.to_f64()) < 1e-12);
        let local_a = b.transpose().mul(&t.a).mul(&b);
        assert!(local_a.sub(&Mat::diag(&[local_a[(0, 0)], local_a[(1, 1)], local_a[(2, 2)]])).max_abs() < 1e-12);
    }
}
