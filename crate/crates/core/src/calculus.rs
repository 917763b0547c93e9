//! Functions of semisimple matrices: `f(s) = Σ f(λ)·P_λ` over the spectral
//! projectors of `s`.
//!
//! The exact route builds the projectors as polynomials in `s` from the
//! coprime pieces of the characteristic polynomial; the floating route uses
//! Lagrange products over the eigenvalue clusters (or the symmetric
//! eigensolver for symmetric input).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::matrix::Mat;
use crate::poly::QPoly;
use crate::scalar::Q;
use crate::spectrum::{Cluster, Piece};

/// Polynomial `H` with `H(λ) = w_φ(λ)` on the roots of every piece `φ`,
/// reduced modulo the product of the pieces. `None` if some piece has no
/// exact weight.
pub fn exact_weight_poly(pieces: &[Piece], weight: impl Fn(&Piece) -> Option<QPoly>) -> Option<QPoly> {
    let f = pieces.iter().fold(QPoly::one(), |acc, p| acc.mul(&p.poly));
    let mut h = QPoly::zero();
    for piece in pieces {
        let w = weight(piece)?;
        let cof = f.div_rem(&piece.poly).0;
        let idem = if pieces.len() == 1 {
            QPoly::one()
        } else {
            let inv = cof.inverse_mod(&piece.poly).expect("pieces are pairwise coprime");
            cof.mul(&inv).rem(&f)
        };
        h = h.add(&w.mul(&idem)).rem(&f);
    }
    Some(h)
}

/// Applies `w` to a semisimple real matrix whose eigenvalue clusters are
/// given. The result is real whenever `w` respects complex conjugation.
pub fn float_function(s: &Mat<f64>, clusters: &[Cluster], w: impl Fn(Complex64) -> Complex64) -> Mat<f64> {
    let n = s.rows();
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    let ns = s.to_nalgebra();
    if ns == ns.transpose() {
        let eig = ns.symmetric_eigen();
        let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| w(Complex64::new(l, 0.0)).re));
        let out = &eig.eigenvectors * d * eig.eigenvectors.transpose();
        let sym = (&out + out.transpose()) * 0.5;
        return Mat::from_nalgebra(&sym);
    }
    let sc: DMatrix<Complex64> = ns.map(|v| Complex64::new(v, 0.0));
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut total = DMatrix::<Complex64>::zeros(n, n);
    for (j, cj) in clusters.iter().enumerate() {
        let mut proj = id.clone();
        for (k, ck) in clusters.iter().enumerate() {
            if k == j {
                continue;
            }
            let factor = (&sc - &id * ck.value) / (cj.value - ck.value);
            proj = proj * factor;
        }
        total += proj * w(cj.value);
    }
    Mat::from_fn(n, n, |r, c| total[(r, c)].re)
}

/// Exact evaluation of a weight polynomial at `s`.
pub fn exact_apply(h: &QPoly, s: &Mat<Q>) -> Mat<Q> {
    h.eval_mat(s)
}
