//! Eigenvalue clusters.
//!
//! Exact matrices are handled through the factorization of the characteristic
//! polynomial: Yun's squarefree decomposition, then rational roots, then one
//! cofactor per multiplicity whose real roots are counted with Sturm
//! sequences. Floating matrices use a Schur-based eigensolver followed by
//! single-linkage clustering at radius `tol·(1 + ‖m‖_F)`.

use num_complex::Complex64;
use num_traits::Signed;

use crate::error::{NashError, Result};
use crate::linalg::general_eigenvalues;
use crate::matrix::{Mat, Matrix};
use crate::poly::{char_poly, parity, Polynomial, QPoly};
use crate::scalar::{q, qi, Field, Q};

/// Exact description of a root, when one is available.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactRoot {
    Rational(Q),
    /// One of the two roots of the irreducible `t² − trace·t + norm`.
    Quadratic { trace: Q, norm: Q },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub value: Complex64,
    pub multiplicity: usize,
    pub exact: Option<ExactRoot>,
}

/// Eigenvalues of a matrix grouped into clusters; multiplicities sum to `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub clusters: Vec<Cluster>,
    /// Radius within which values were identified (0 for exact spectra).
    pub radius: f64,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).max().unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        self.radius == 0.0
    }

    /// Predicate on every cluster, with `tol` used only for inexact values.
    pub fn all(&self, pred: impl Fn(&Cluster, f64) -> bool) -> bool {
        let r = self.radius.max(0.0);
        self.clusters.iter().all(|c| pred(c, r))
    }
}

/// How an exact piece of the characteristic polynomial is described.
#[derive(Debug, Clone, PartialEq)]
pub enum PieceKind {
    Rational(Q),
    /// Irreducible quadratic `t² − trace·t + norm`.
    Quadratic { trace: Q, norm: Q },
    /// Squarefree cofactor without rational roots, degree ≥ 3 (or a product
    /// of quadratics that was not split further).
    General {
        real_roots: usize,
        positive_roots: usize,
    },
}

/// A squarefree factor of the characteristic polynomial together with the
/// multiplicity of each of its roots. Pieces are pairwise coprime.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub poly: QPoly,
    pub multiplicity: usize,
    pub kind: PieceKind,
}

impl Piece {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn all_real(&self) -> bool {
        match &self.kind {
            PieceKind::Rational(_) => true,
            PieceKind::Quadratic { trace, norm } => discriminant(trace, norm) >= qi(0),
            PieceKind::General { real_roots, .. } => *real_roots == self.degree(),
        }
    }

    pub fn all_positive(&self) -> bool {
        match &self.kind {
            PieceKind::Rational(v) => v.is_positive(),
            PieceKind::Quadratic { trace, norm } => {
                discriminant(trace, norm) >= qi(0) && trace.is_positive() && norm.is_positive()
            }
            PieceKind::General { positive_roots, .. } => *positive_roots == self.degree(),
        }
    }

    pub fn all_negative(&self) -> bool {
        match &self.kind {
            PieceKind::Rational(v) => v.is_negative(),
            PieceKind::Quadratic { trace, norm } => {
                discriminant(trace, norm) >= qi(0) && trace.is_negative() && norm.is_positive()
            }
            PieceKind::General { real_roots, positive_roots } => {
                *real_roots == self.degree() && *positive_roots == 0
            }
        }
    }

    /// Every root lies on the imaginary axis (0 included).
    pub fn all_imaginary(&self) -> bool {
        match &self.kind {
            PieceKind::Rational(v) => Field::is_zero(v),
            PieceKind::Quadratic { trace, norm } => Field::is_zero(trace) && norm.is_positive(),
            PieceKind::General { .. } => {
                // p(t) = g(t²) with every root of g real and negative. Odd
                // cofactors would have the rational root 0 and cannot occur.
                if parity(&self.poly) != Some(true) {
                    return false;
                }
                let g = Polynomial::new(self.poly.coeffs().iter().step_by(2).cloned().collect());
                let deg = g.degree().unwrap_or(0);
                g.count_real_roots(None, Some(&qi(0))) == deg && g.eval(&qi(0)) != qi(0)
            }
        }
    }

    /// Every root has modulus one.
    pub fn all_unit_modulus(&self) -> bool {
        match &self.kind {
            PieceKind::Rational(v) => v.abs() == qi(1),
            PieceKind::Quadratic { trace, norm } => {
                discriminant(trace, norm) < qi(0) && *norm == qi(1)
            }
            PieceKind::General { .. } => unit_circle_roots(&self.poly),
        }
    }

    /// Every root equals `v`.
    pub fn all_equal(&self, v: &Q) -> bool {
        matches!(&self.kind, PieceKind::Rational(r) if r == v)
    }
}

fn discriminant(trace: &Q, norm: &Q) -> Q {
    trace * trace - qi(4) * norm
}

/// Whether every root of the squarefree `p` (no roots ±1) lies on the unit
/// circle: `p` must be palindromic of even degree `2k`, and `t^(−k)·p(t)`
/// rewritten in `y = t + 1/t` must have `k` real roots in `(−2, 2)`.
fn unit_circle_roots(p: &QPoly) -> bool {
    let c = p.monic();
    let c = c.coeffs();
    let d = c.len() - 1;
    if d % 2 == 1 || (0..=d).any(|i| c[i] != c[d - i]) {
        return false;
    }
    let k = d / 2;
    // t^j + t^(−j) = D_j(y): D_0 = 2, D_1 = y, D_{j+1} = y·D_j − D_{j−1}.
    let y = QPoly::t();
    let mut dj_prev = QPoly::constant(qi(2));
    let mut dj = y.clone();
    let mut g = QPoly::constant(c[k].clone());
    for j in 1..=k {
        g = g.add(&dj.scale(&c[k + j]));
        let next = y.mul(&dj).sub(&dj_prev);
        dj_prev = dj;
        dj = next;
    }
    let in_band = g.count_real_roots(Some(&qi(-2)), Some(&q(2, 1)));
    let at_two = if Field::is_zero(&g.eval(&qi(2))) { 1 } else { 0 };
    in_band - at_two == k
}

/// Splits the characteristic polynomial of an exact matrix into pieces.
pub fn exact_pieces(m: &Mat<Q>) -> Vec<Piece> {
    let chi = char_poly(m);
    if chi.degree() == Some(0) {
        return Vec::new();
    }
    let mut pieces = Vec::new();
    for (f, mult) in chi.squarefree_factorization().expect("characteristic polynomial is monic") {
        let mut rest = f.clone();
        for r in f.rational_roots() {
            rest = rest.div_rem(&QPoly::linear_root(r.clone())).0;
            pieces.push(Piece {
                poly: QPoly::linear_root(r.clone()),
                multiplicity: mult,
                kind: PieceKind::Rational(r),
            });
        }
        let rest = rest.monic();
        match rest.degree() {
            None | Some(0) => {}
            Some(2) => {
                let c = rest.coeffs();
                pieces.push(Piece {
                    kind: PieceKind::Quadratic { trace: -c[1].clone(), norm: c[0].clone() },
                    poly: rest,
                    multiplicity: mult,
                });
            }
            Some(_) => {
                let real_roots = rest.count_real_roots(None, None);
                let positive_roots = rest.count_real_roots(Some(&qi(0)), None);
                pieces.push(Piece {
                    poly: rest,
                    multiplicity: mult,
                    kind: PieceKind::General { real_roots, positive_roots },
                });
            }
        }
    }
    pieces
}

/// Clusters of an exact matrix; exact roots are never merged.
pub fn exact_spectrum(m: &Mat<Q>) -> Spectrum {
    let mut clusters = Vec::new();
    for piece in exact_pieces(m) {
        match &piece.kind {
            PieceKind::Rational(r) => clusters.push(Cluster {
                value: Complex64::new(r.to_f64(), 0.0),
                multiplicity: piece.multiplicity,
                exact: Some(ExactRoot::Rational(r.clone())),
            }),
            PieceKind::Quadratic { trace, norm } => {
                let disc = discriminant(trace, norm).to_f64();
                let re = trace.to_f64() / 2.0;
                let (a, b) = if disc < 0.0 {
                    (Complex64::new(re, (-disc).sqrt() / 2.0), Complex64::new(re, -(-disc).sqrt() / 2.0))
                } else {
                    (Complex64::new(re + disc.sqrt() / 2.0, 0.0), Complex64::new(re - disc.sqrt() / 2.0, 0.0))
                };
                for value in [a, b] {
                    clusters.push(Cluster {
                        value,
                        multiplicity: piece.multiplicity,
                        exact: Some(ExactRoot::Quadratic { trace: trace.clone(), norm: norm.clone() }),
                    });
                }
            }
            PieceKind::General { real_roots, .. } => {
                let mut roots = piece.poly.complex_roots();
                // Sturm decides how many roots are real; snap exactly that many.
                roots.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
                for (i, r) in roots.iter_mut().enumerate() {
                    if i < *real_roots {
                        r.im = 0.0;
                    }
                }
                for value in roots {
                    clusters.push(Cluster { value, multiplicity: piece.multiplicity, exact: None });
                }
            }
        }
    }
    sort_clusters(&mut clusters);
    Spectrum { clusters, radius: 0.0 }
}

fn sort_clusters(clusters: &mut [Cluster]) {
    clusters.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
}

/// Raw floating eigenvalues (symmetric input uses the symmetric solver).
pub fn float_eigenvalues(m: &Mat<f64>) -> Result<Vec<Complex64>> {
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let nm = m.to_nalgebra();
    if nm == nm.transpose() {
        return Ok(nm.symmetric_eigenvalues().iter().map(|&v| Complex64::new(v, 0.0)).collect());
    }
    general_eigenvalues(&nm).ok_or_else(|| NashError::NumericalFailure("QR iteration did not converge".into()))
}

/// Groups floating values at radius `radius`, failing if two groups are
/// within twice the radius of each other.
pub fn cluster_values(values: &[Complex64], radius: f64) -> Result<Vec<Cluster>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(values[i]),
            None => groups.push((root, vec![values[i]])),
        }
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|(_, g)| {
            let sum: Complex64 = g.iter().sum();
            let mut value = sum / g.len() as f64;
            if value.im.abs() <= radius {
                value.im = 0.0;
            }
            Cluster { value, multiplicity: g.len(), exact: None }
        })
        .collect();
    sort_clusters(&mut clusters);
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let gap = (clusters[i].value - clusters[j].value).norm();
            if gap <= 2.0 * radius {
                return Err(NashError::ClusterAmbiguity { gap, radius });
            }
        }
    }
    Ok(clusters)
}

pub fn float_spectrum(m: &Mat<f64>, tol: f64) -> Result<Spectrum> {
    let radius = tol * (1.0 + m.frobenius());
    let clusters = cluster_values(&float_eigenvalues(m)?, radius)?;
    Ok(Spectrum { clusters, radius })
}

/// Eigenvalue clusters of `m`.
pub fn spectrum(m: &Matrix) -> Result<Spectrum> {
    match m {
        Matrix::Exact(e) => Ok(exact_spectrum(e)),
        Matrix::Approx { m, tol } => float_spectrum(m, *tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mq(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn exact_examples() {
        let s = exact_spectrum(&Mat::diag(&[qi(2), q(1, 2)]));
        assert_eq!(s.clusters.len(), 2);
        assert_eq!(s.clusters[0].exact, Some(ExactRoot::Rational(q(1, 2))));
        assert_eq!(s.clusters[1].exact, Some(ExactRoot::Rational(qi(2))));

        let s = exact_spectrum(&mq(&[&[0, -1], &[1, 0]]));
        assert_eq!(s.clusters.len(), 2);
        assert!((s.clusters[0].value - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((s.clusters[1].value - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let s = exact_spectrum(&mq(&[&[2, 1], &[0, 2]]));
        assert_eq!(s.clusters.len(), 1);
        assert_eq!(s.clusters[0].multiplicity, 2);
    }

    #[test]
    fn float_examples_and_ambiguity() {
        let s = float_spectrum(&mq(&[&[0, -1], &[1, 0]]).to_f64(), 1e-8).unwrap();
        assert_eq!(s.total_multiplicity(), 2);
        let s = float_spectrum(&mq(&[&[2, 1], &[0, 2]]).to_f64(), 1e-8).unwrap();
        assert_eq!(s.clusters.len(), 1);
        let v = [Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1.5e-8, 0.0)];
        assert!(matches!(cluster_values(&v, 1e-8), Err(NashError::ClusterAmbiguity { .. })));
    }

    #[test]
    fn piece_predicates() {
        // t^2 + 1: roots on the unit circle and on the imaginary axis.
        let pieces = exact_pieces(&mq(&[&[0, -1], &[1, 0]]));
        assert!(pieces[0].all_unit_modulus() && pieces[0].all_imaginary());
        // Rotation by a non-rational angle with unit modulus: t^2 - (6/5)t + 1.
        let rot = Mat::from_rows(vec![vec![q(3, 5), q(-4, 5)], vec![q(4, 5), q(3, 5)]]).unwrap();
        assert!(exact_pieces(&rot)[0].all_unit_modulus());
        // Companion of t^4 + t^3 + t^2 + t + 1 (primitive fifth roots of unity).
        let c5 = mq(&[&[0, 0, 0, -1], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]]);
        let p = exact_pieces(&c5);
        assert_eq!(p.len(), 1);
        assert!(p[0].all_unit_modulus());
        assert!(!p[0].all_real());
        // Companion of t^4 + 5t^2 + 4 = (t^2+1)(t^2+4): purely imaginary roots.
        let c = mq(&[&[0, 0, 0, -4], &[1, 0, 0, 0], &[0, 1, 0, -5], &[0, 0, 1, 0]]);
        let p = exact_pieces(&c);
        assert!(p.iter().all(Piece::all_imaginary));
        assert!(!p.iter().all(Piece::all_unit_modulus));
        // Companion of t^3 − 3t + 1: three real roots, two positive.
        let c = mq(&[&[0, 0, -1], &[1, 0, 3], &[0, 1, 0]]);
        let p = exact_pieces(&c);
        assert_eq!(p[0].kind, PieceKind::General { real_roots: 3, positive_roots: 2 });
        let s = exact_spectrum(&c);
        assert!(s.clusters.iter().all(|c| c.value.im == 0.0));
    }
}
