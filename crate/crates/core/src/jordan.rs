//! Element classification and the multiplicative and additive Jordan
//! decompositions `x = e·h·u` and `x = e + h + u`.

use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::calculus::{exact_apply, exact_weight_poly, float_function};
use crate::error::{NashError, Result};
use crate::linalg::{independent_subset, in_span, Linalg};
use crate::matrix::{Mat, Matrix, DEFAULT_TOL};
use crate::poly::{char_poly, Polynomial, QPoly};
use crate::scalar::{qi, rational_sqrt, Field, Q};
use crate::spectrum::{exact_pieces, exact_spectrum, float_spectrum, Cluster, Piece, PieceKind};

/// Whether an element is read as a group element or a Lie algebra element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Group,
    Algebra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Multiplicative,
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ElementClass {
    pub elliptic: bool,
    pub hyperbolic: bool,
    pub unipotent: bool,
    pub semisimple: bool,
    pub exponential: bool,
}

/// Pairwise commuting parts of an element.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanTriple {
    pub e: Matrix,
    pub h: Matrix,
    pub u: Matrix,
    pub flavor: Flavor,
}

impl JordanTriple {
    /// `e·h·u` or `e + h + u`, according to the flavor.
    pub fn recombine(&self) -> Matrix {
        match self.flavor {
            Flavor::Multiplicative => self.e.mul(&self.h).mul(&self.u),
            Flavor::Additive => self.e.add(&self.h).add(&self.u),
        }
    }
}

/// Exact Chevalley splitting. Returns `(s, n, S)` where `S` is the
/// polynomial with `s = S(x)`.
///
/// Newton's iteration `S ← S − f(S)·f′(S)⁻¹` on the squarefree part `f` of
/// the characteristic polynomial `χ`, carried out in `ℚ[t]/(χ)`.
pub fn sn_split_exact(x: &Mat<Q>) -> (Mat<Q>, Mat<Q>, QPoly) {
    let n = x.rows();
    if n == 0 {
        return (x.clone(), x.clone(), QPoly::t());
    }
    let chi = char_poly(x);
    let f = chi.squarefree_part().expect("characteristic polynomial is nonzero");
    let fp = f.derivative();
    let max_mult = chi
        .squarefree_factorization()
        .expect("characteristic polynomial is nonzero")
        .iter()
        .map(|(_, m)| *m)
        .max()
        .unwrap_or(1);
    let rounds = (usize::BITS - (max_mult - 1).leading_zeros()) as usize + 1;
    let mut s_poly = QPoly::t().rem(&chi);
    for _ in 0..rounds {
        let fs = f.compose(&s_poly).rem(&chi);
        if fs.is_zero() {
            break;
        }
        let dfs = fp.compose(&s_poly).rem(&chi);
        let inv = dfs
            .inverse_mod(&chi)
            .expect("f′(S) is a unit modulo χ because f is squarefree");
        s_poly = s_poly.sub(&fs.mul(&inv)).rem(&chi);
    }
    debug_assert!(f.compose(&s_poly).rem(&chi).is_zero());
    let s = s_poly.eval_mat(x);
    let nil = x.sub(&s);
    (s, nil, s_poly)
}

/// Floating Chevalley splitting by Newton's iteration on the polynomial whose
/// roots are the eigenvalue cluster centres.
fn sn_split_float(x: &Mat<f64>, tol: f64) -> Result<(Mat<f64>, Mat<f64>)> {
    let n = x.rows();
    let spec = float_spectrum(x, tol)?;
    if spec.clusters.iter().all(|c| c.multiplicity == 1) {
        return Ok((x.clone(), Mat::zeros(n, n)));
    }
    let f = cluster_poly(&spec.clusters);
    let fp = f.derivative();
    let scale = 1.0 + x.frobenius();
    let mut s = x.clone();
    let mut prev = f64::INFINITY;
    for _ in 0..60 {
        let fs = f.eval_mat(&s);
        let dfs = fp.eval_mat(&s);
        let inv = f64::inverse(&dfs, 1e-14).map_err(|_| {
            NashError::NumericalFailure("derivative of the cluster polynomial is singular".into())
        })?;
        let corr = fs.mul(&inv);
        let c = corr.frobenius();
        s = s.sub(&corr);
        if c <= 1e-15 * scale {
            break;
        }
        if c >= prev {
            if c <= tol * scale {
                break;
            }
            return Err(NashError::NumericalFailure(format!(
                "Newton iteration stalled with correction {c:.3e}"
            )));
        }
        prev = c;
    }
    let nil = x.sub(&s);
    Ok((s, nil))
}

/// `Π (t − c)` over the cluster centres, with real coefficients.
fn cluster_poly(clusters: &[Cluster]) -> Polynomial<f64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for c in clusters {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, a) in coeffs.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * c.value;
        }
        coeffs = next;
    }
    Polynomial::new(coeffs.iter().map(|z| z.re).collect())
}

/// `x = s + n` with `s` semisimple, `n` nilpotent, `sn = ns`, both
/// polynomials in `x`.
pub fn sn_split(x: &Matrix) -> Result<(Matrix, Matrix)> {
    match x {
        Matrix::Exact(m) => {
            let (s, n, _) = sn_split_exact(m);
            Ok((Matrix::Exact(s), Matrix::Exact(n)))
        }
        Matrix::Approx { m, tol } => {
            let (s, n) = sn_split_float(m, *tol)?;
            Ok((Matrix::Approx { m: s, tol: *tol }, Matrix::Approx { m: n, tol: *tol }))
        }
    }
}

fn additive_weight(piece: &Piece) -> Option<QPoly> {
    match &piece.kind {
        PieceKind::Rational(v) => Some(QPoly::constant(v.clone())),
        PieceKind::Quadratic { trace, .. } if !piece.all_real() => {
            Some(QPoly::constant(trace.clone() / qi(2)))
        }
        _ if piece.all_real() => Some(QPoly::t()),
        _ => None,
    }
}

fn multiplicative_weight(piece: &Piece) -> Option<QPoly> {
    match &piece.kind {
        PieceKind::Rational(v) => Some(QPoly::constant(v.abs())),
        PieceKind::Quadratic { norm, .. } if !piece.all_real() => {
            rational_sqrt(norm).map(QPoly::constant)
        }
        _ if piece.all_positive() => Some(QPoly::t()),
        _ if piece.all_negative() => Some(QPoly::t().scale(&qi(-1))),
        _ => None,
    }
}

/// `x = e + h + u`: `u` nilpotent, `h` semisimple with real spectrum (acting
/// as `Re λ`), `e` semisimple with imaginary spectrum; all commuting.
pub fn additive_jordan(x: &Matrix) -> Result<JordanTriple> {
    let flavor = Flavor::Additive;
    match x {
        Matrix::Exact(m) => {
            let (s, nil, _) = sn_split_exact(m);
            let pieces = exact_pieces(m);
            if let Some(hp) = exact_weight_poly(&pieces, additive_weight) {
                let h = exact_apply(&hp, &s);
                let e = s.sub(&h);
                return Ok(JordanTriple {
                    e: Matrix::Exact(e),
                    h: Matrix::Exact(h),
                    u: Matrix::Exact(nil),
                    flavor,
                });
            }
            let sf = s.to_f64();
            let h = float_function(&sf, &exact_spectrum(m).clusters, |z| Complex64::new(z.re, 0.0));
            let e = sf.sub(&h);
            Ok(JordanTriple {
                e: Matrix::Approx { m: e, tol: DEFAULT_TOL },
                h: Matrix::Approx { m: h, tol: DEFAULT_TOL },
                u: Matrix::Approx { m: nil.to_f64(), tol: DEFAULT_TOL },
                flavor,
            })
        }
        Matrix::Approx { m, tol } => {
            let (s, nil) = sn_split_float(m, *tol)?;
            let spec = float_spectrum(m, *tol)?;
            let h = float_function(&s, &spec.clusters, |z| Complex64::new(z.re, 0.0));
            let e = s.sub(&h);
            Ok(JordanTriple {
                e: Matrix::Approx { m: e, tol: *tol },
                h: Matrix::Approx { m: h, tol: *tol },
                u: Matrix::Approx { m: nil, tol: *tol },
                flavor,
            })
        }
    }
}

/// `x = e·h·u`: `u` unipotent, `h` semisimple with positive spectrum (acting
/// as `|λ|`), `e` semisimple with unit-modulus spectrum; all commuting.
pub fn multiplicative_jordan(x: &Matrix) -> Result<JordanTriple> {
    let flavor = Flavor::Multiplicative;
    match x {
        Matrix::Exact(m) => {
            let n = m.rows();
            if char_poly(m).coeffs().first().is_none_or(Field::is_zero) && n > 0 {
                return Err(NashError::NotInvertible);
            }
            let (s, nil, _) = sn_split_exact(m);
            let s_inv = Q::inverse(&s, 0.0)?;
            let u = Mat::identity(n).add(&s_inv.mul(&nil));
            let pieces = exact_pieces(m);
            if let Some(hp) = exact_weight_poly(&pieces, multiplicative_weight) {
                let h = exact_apply(&hp, &s);
                let e = s.mul(&Q::inverse(&h, 0.0)?);
                return Ok(JordanTriple {
                    e: Matrix::Exact(e),
                    h: Matrix::Exact(h),
                    u: Matrix::Exact(u),
                    flavor,
                });
            }
            let sf = s.to_f64();
            let h = float_function(&sf, &exact_spectrum(m).clusters, |z| Complex64::new(z.norm(), 0.0));
            let e = sf.mul(&f64::inverse(&h, 1e-14)?);
            Ok(JordanTriple {
                e: Matrix::Approx { m: e, tol: DEFAULT_TOL },
                h: Matrix::Approx { m: h, tol: DEFAULT_TOL },
                u: Matrix::Approx { m: u.to_f64(), tol: DEFAULT_TOL },
                flavor,
            })
        }
        Matrix::Approx { m, tol } => {
            let n = m.rows();
            if f64::rank(m, *tol) < n {
                return Err(NashError::NotInvertible);
            }
            let (s, nil) = sn_split_float(m, *tol)?;
            let spec = float_spectrum(m, *tol)?;
            let s_inv = f64::inverse(&s, 1e-14)?;
            let u = Mat::identity(n).add(&s_inv.mul(&nil));
            let h = float_function(&s, &spec.clusters, |z| Complex64::new(z.norm(), 0.0));
            let e = s.mul(&f64::inverse(&h, 1e-14)?);
            Ok(JordanTriple {
                e: Matrix::Approx { m: e, tol: *tol },
                h: Matrix::Approx { m: h, tol: *tol },
                u: Matrix::Approx { m: u, tol: *tol },
                flavor,
            })
        }
    }
}

/// Semisimplicity at tolerance: for each cluster, the kernel of `x − λ`
/// (or of `(x − a)² + b²` for a complex pair) has full dimension.
fn float_semisimple(x: &Mat<f64>, clusters: &[Cluster], tol: f64) -> bool {
    let n = x.rows();
    clusters.iter().all(|c| {
        let (a, b) = (c.value.re, c.value.im);
        if b < 0.0 {
            return true;
        }
        if b == 0.0 {
            let m = x.add_scalar(&-a);
            f64::rank(&m, tol) == n - c.multiplicity
        } else {
            let shifted = x.add_scalar(&-a);
            let m = shifted.mul(&shifted).add_scalar(&(b * b));
            f64::rank(&m, tol) == n - 2 * c.multiplicity
        }
    })
}

/// Elliptic / hyperbolic / unipotent / semisimple / exponential predicates.
pub fn classify(x: &Matrix, setting: Setting) -> Result<ElementClass> {
    match x {
        Matrix::Exact(m) => {
            let pieces = exact_pieces(m);
            if setting == Setting::Group && pieces.iter().any(|p| p.all_equal(&qi(0))) {
                return Err(NashError::NotInvertible);
            }
            let f = pieces.iter().fold(QPoly::one(), |acc, p| acc.mul(&p.poly));
            let semisimple = f.eval_mat(m).is_zero();
            let all = |pred: &dyn Fn(&Piece) -> bool| pieces.iter().all(pred);
            Ok(match setting {
                Setting::Group => ElementClass {
                    elliptic: semisimple && all(&Piece::all_unit_modulus),
                    hyperbolic: semisimple && all(&Piece::all_positive),
                    unipotent: all(&|p| p.all_equal(&qi(1))),
                    semisimple,
                    exponential: all(&Piece::all_positive),
                },
                Setting::Algebra => ElementClass {
                    elliptic: semisimple && all(&Piece::all_imaginary),
                    hyperbolic: semisimple && all(&Piece::all_real),
                    unipotent: all(&|p| p.all_equal(&qi(0))),
                    semisimple,
                    exponential: all(&Piece::all_real),
                },
            })
        }
        Matrix::Approx { m, tol } => {
            let n = m.rows();
            if setting == Setting::Group && f64::rank(m, *tol) < n {
                return Err(NashError::NotInvertible);
            }
            let spec = float_spectrum(m, *tol)?;
            let r = spec.radius;
            let semisimple = float_semisimple(m, &spec.clusters, *tol);
            let all = |pred: &dyn Fn(Complex64) -> bool| spec.clusters.iter().all(|c| pred(c.value));
            let real = |z: Complex64| z.im.abs() <= r;
            Ok(match setting {
                Setting::Group => ElementClass {
                    elliptic: semisimple && all(&|z| (z.norm() - 1.0).abs() <= r),
                    hyperbolic: semisimple && all(&|z| real(z) && z.re > r),
                    unipotent: all(&|z| (z - 1.0).norm() <= r),
                    semisimple,
                    exponential: all(&|z| real(z) && z.re > r),
                },
                Setting::Algebra => ElementClass {
                    elliptic: semisimple && all(&|z| z.re.abs() <= r),
                    hyperbolic: semisimple && all(&real),
                    unipotent: all(&|z| z.norm() <= r),
                    semisimple,
                    exponential: all(&real),
                },
            })
        }
    }
}

/// Bases of the spans of the elliptic, hyperbolic and unipotent parts of a
/// family of commuting matrices. The three spans must be independent and
/// add up to the span of the input.
pub fn abelian_ehu_split(basis: &[Matrix]) -> Result<(Vec<Matrix>, Vec<Matrix>, Vec<Matrix>)> {
    if basis.is_empty() {
        return Ok((Vec::new(), Vec::new(), Vec::new()));
    }
    let n = basis[0].n();
    if basis.iter().any(|b| b.n() != n) {
        return Err(NashError::DimensionMismatch("matrices of different sizes".into()));
    }
    let exact = basis.iter().all(Matrix::is_exact);
    let tol = basis.iter().map(Matrix::tol).fold(DEFAULT_TOL, f64::max);
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let scale = (1.0 + a.frobenius()) * (1.0 + b.frobenius());
            if !a.bracket(b).is_negligible(scale) {
                return Err(NashError::NotAbelian);
            }
        }
    }
    let triples = basis.iter().map(additive_jordan).collect::<Result<Vec<_>>>()?;
    if exact && triples.iter().all(|t| t.e.is_exact() && t.h.is_exact()) {
        let q = |m: &Matrix| m.as_exact().expect("exact").data().to_vec();
        let input: Vec<Vec<Q>> = basis.iter().map(q).collect();
        let parts: Vec<Vec<Vec<Q>>> = [
            triples.iter().map(|t| q(&t.e)).collect(),
            triples.iter().map(|t| q(&t.h)).collect(),
            triples.iter().map(|t| q(&t.u)).collect(),
        ]
        .into();
        let out = split_check(&input, parts, 0.0)?;
        let wrap = |vs: Vec<Vec<Q>>| vs.into_iter().map(|v| Matrix::Exact(Mat::from_vec(n, n, v))).collect();
        let [e, h, u]: [Vec<Vec<Q>>; 3] = out.try_into().expect("three parts");
        return Ok((wrap(e), wrap(h), wrap(u)));
    }
    let f = |m: &Matrix| m.to_f64().data().to_vec();
    let input: Vec<Vec<f64>> = basis.iter().map(f).collect();
    let parts = vec![
        triples.iter().map(|t| f(&t.e)).collect(),
        triples.iter().map(|t| f(&t.h)).collect(),
        triples.iter().map(|t| f(&t.u)).collect(),
    ];
    let out = split_check(&input, parts, tol)?;
    let wrap = |vs: Vec<Vec<f64>>| {
        vs.into_iter().map(|v| Matrix::Approx { m: Mat::from_vec(n, n, v), tol }).collect()
    };
    let [e, h, u]: [Vec<Vec<f64>>; 3] = out.try_into().expect("three parts");
    Ok((wrap(e), wrap(h), wrap(u)))
}

fn split_check<T: Linalg>(input: &[Vec<T>], parts: Vec<Vec<Vec<T>>>, tol: f64) -> Result<Vec<Vec<Vec<T>>>> {
    let span = independent_subset(input, tol);
    let reduced: Vec<Vec<Vec<T>>> = parts.iter().map(|p| independent_subset(p, tol)).collect();
    let total: usize = reduced.iter().map(Vec::len).sum();
    let all: Vec<Vec<T>> = reduced.iter().flatten().cloned().collect();
    if total != span.len() || independent_subset(&all, tol).len() != total {
        return Err(NashError::PostconditionFailed(
            "the Jordan parts do not split the span of the input".into(),
        ));
    }
    if !all.iter().all(|v| in_span(&span, v, tol)) {
        return Err(NashError::PostconditionFailed(
            "a Jordan part lies outside the span of the input".into(),
        ));
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn mq(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect()).unwrap()
    }

    fn ex(rows: &[&[i64]]) -> Matrix {
        Matrix::Exact(mq(rows))
    }

    #[test]
    fn sn_split_examples() {
        let (s, n) = sn_split(&ex(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(s, ex(&[&[0, 0], &[0, 0]]));
        assert_eq!(n, ex(&[&[0, 1], &[0, 0]]));
        let (s, n) = sn_split(&ex(&[&[2, 1], &[0, 2]])).unwrap();
        assert_eq!(s, ex(&[&[2, 0], &[0, 2]]));
        assert_eq!(n, ex(&[&[0, 1], &[0, 0]]));
        let (s, n) = sn_split(&ex(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(s, ex(&[&[0, 1], &[1, 0]]));
        assert_eq!(n, ex(&[&[0, 0], &[0, 0]]));
    }

    #[test]
    fn sn_split_float_defective() {
        let x = Matrix::approx(mq(&[&[2, 1], &[0, 2]]).to_f64(), 1e-8).unwrap();
        let (s, n) = sn_split(&x).unwrap();
        assert!(s.to_f64().sub(&Mat::scalar(2, 2.0)).frobenius() < 1e-12);
        assert!(n.to_f64().sub(&mq(&[&[0, 1], &[0, 0]]).to_f64()).frobenius() < 1e-12);
    }

    #[test]
    fn additive_examples() {
        let t = additive_jordan(&ex(&[&[0, 0], &[0, 0]])).unwrap();
        assert!(t.e.is_negligible(1.0) && t.h.is_negligible(1.0) && t.u.is_negligible(1.0));
        let t = additive_jordan(&ex(&[&[2, 1], &[0, 2]])).unwrap();
        assert_eq!(t.e, ex(&[&[0, 0], &[0, 0]]));
        assert_eq!(t.h, ex(&[&[2, 0], &[0, 2]]));
        assert_eq!(t.u, ex(&[&[0, 1], &[0, 0]]));
        let t = additive_jordan(&ex(&[&[1, -2], &[2, 1]])).unwrap();
        assert_eq!(t.e, ex(&[&[0, -2], &[2, 0]]));
        assert_eq!(t.h, ex(&[&[1, 0], &[0, 1]]));
        assert_eq!(t.u, ex(&[&[0, 0], &[0, 0]]));
    }

    #[test]
    fn multiplicative_examples() {
        let t = multiplicative_jordan(&ex(&[&[1, 0], &[0, 1]])).unwrap();
        let id = ex(&[&[1, 0], &[0, 1]]);
        assert_eq!((&t.e, &t.h, &t.u), (&id, &id, &id));
        let t = multiplicative_jordan(&ex(&[&[2, 1], &[0, 2]])).unwrap();
        assert_eq!(t.e, id);
        assert_eq!(t.h, ex(&[&[2, 0], &[0, 2]]));
        assert_eq!(t.u, Matrix::Exact(Mat::from_rows(vec![vec![qi(1), q(1, 2)], vec![qi(0), qi(1)]]).unwrap()));
        let t = multiplicative_jordan(&ex(&[&[0, -2], &[2, 0]])).unwrap();
        assert_eq!(t.e, ex(&[&[0, -1], &[1, 0]]));
        assert_eq!(t.h, ex(&[&[2, 0], &[0, 2]]));
        assert_eq!(t.u, id);
        assert_eq!(multiplicative_jordan(&ex(&[&[1, 2], &[2, 4]])), Err(NashError::NotInvertible));
    }

    #[test]
    fn multiplicative_irrational_modulus_goes_float() {
        // Eigenvalues 1 ± i: modulus √2.
        let x = ex(&[&[1, -1], &[1, 1]]);
        let t = multiplicative_jordan(&x).unwrap();
        assert!(!t.h.is_exact());
        let h = t.h.to_f64();
        assert!(h.sub(&Mat::scalar(2, 2f64.sqrt())).frobenius() < 1e-12);
        assert!(t.recombine().to_f64().sub(&x.to_f64()).frobenius() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&ex(&[&[1, 0], &[0, 1]]), Setting::Group).unwrap();
        assert_eq!(c, ElementClass { elliptic: true, hyperbolic: true, unipotent: true, semisimple: true, exponential: true });
        let c = classify(&ex(&[&[0, -1], &[1, 0]]), Setting::Group).unwrap();
        assert_eq!(c, ElementClass { elliptic: true, hyperbolic: false, unipotent: false, semisimple: true, exponential: false });
        let d = Matrix::Exact(Mat::diag(&[qi(2), q(1, 2)]));
        let c = classify(&d, Setting::Group).unwrap();
        assert_eq!(c, ElementClass { elliptic: false, hyperbolic: true, unipotent: false, semisimple: true, exponential: true });
        // Same three examples on the floating track.
        for (m, want) in [
            (ex(&[&[0, -1], &[1, 0]]), c_ell()),
            (d.clone(), ElementClass { elliptic: false, hyperbolic: true, unipotent: false, semisimple: true, exponential: true }),
        ] {
            assert_eq!(classify(&m.promote(1e-8), Setting::Group).unwrap(), want);
        }
        assert_eq!(classify(&ex(&[&[0, 0], &[0, 0]]), Setting::Group), Err(NashError::NotInvertible));
        let c = classify(&ex(&[&[0, 1], &[0, 0]]), Setting::Algebra).unwrap();
        assert!(c.unipotent && !c.semisimple && c.exponential && !c.elliptic);
    }

    fn c_ell() -> ElementClass {
        ElementClass { elliptic: true, hyperbolic: false, unipotent: false, semisimple: true, exponential: false }
    }

    #[test]
    fn abelian_split_examples() {
        let j = ex(&[&[0, -1], &[1, 0]]);
        let two = ex(&[&[2, 0], &[0, 2]]);
        let (e, h, u) = abelian_ehu_split(&[j.clone(), two.clone()]).unwrap();
        assert_eq!((e, h, u.len()), (vec![j.clone()], vec![two], 0));
        let nil = ex(&[&[0, 1], &[0, 0]]);
        let (e, h, u) = abelian_ehu_split(&[nil.clone()]).unwrap();
        assert!(e.is_empty() && h.is_empty());
        assert_eq!(u, vec![nil.clone()]);
        assert_eq!(abelian_ehu_split(&[]).unwrap(), (vec![], vec![], vec![]));
        assert_eq!(abelian_ehu_split(&[nil, j]), Err(NashError::NotAbelian));
    }
}
