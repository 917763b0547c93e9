//! Univariate polynomials, characteristic polynomials and the exact root
//! bookkeeping (squarefree parts, rational roots, Sturm counts).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{NashError, Result};
use crate::linalg::general_eigenvalues;
use crate::matrix::Mat;
use crate::scalar::{Field, Q};

/// Polynomial with coefficients stored lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Polynomial<Q>;

impl<T: Field> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![T::one()] }
    }

    /// `t − r`.
    pub fn linear_root(r: T) -> Self {
        Polynomial::new(vec![-r, T::one()])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Polynomial::new(vec![T::zero(), T::one()])
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let l = l.clone();
                Polynomial::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by the zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / dl.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            rem[k + dd] = T::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat<T>) -> Mat<T> {
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add_scalar(c);
        }
        acc
    }

    /// Composition `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }
}

impl QPoly {
    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g = gcd` (monic).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = <Q as Field>::one() / l;
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Inverse of `self` modulo `m`, when they are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    /// `p / gcd(p, p′)`, made monic: the product of the distinct irreducible
    /// factors of `p`.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(NashError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }

    /// Yun's squarefree factorization: `p = c · Π f_i^i` with the `f_i`
    /// squarefree and pairwise coprime. Returns the nonconstant `(f_i, i)`.
    pub fn squarefree_factorization(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(NashError::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        let d = f.derivative();
        let mut a = f.gcd(&d);
        let mut b = f.div_rem(&a).0;
        let mut c = d.div_rem(&a).0;
        let mut dd = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            dd = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Rational roots (each listed once), by the integer scaling
    /// `y = D·t` that turns a monic rational polynomial into a monic integer
    /// one, whose rational roots are integer divisors of the constant term.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut p = self.monic();
        let mut roots = Vec::new();
        // Strip the root 0 first; it would make the divisor search degenerate.
        if Zero::is_zero(&p.coeffs[0]) {
            roots.push(<Q as Field>::zero());
            while p.coeffs.first().is_some_and(Zero::is_zero) {
                p.coeffs.remove(0);
            }
        }
        let deg = p.coeffs.len() - 1;
        if deg == 0 {
            return roots;
        }
        let den = p.coeffs.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        // Integer monic polynomial in y: coefficient of y^i is a_i · D^(deg−i).
        let ints: Vec<BigInt> = (0..=deg)
            .map(|i| {
                let scale = num_traits::pow(den.clone(), deg - i);
                (p.coeffs[i].clone() * Q::from_integer(scale)).to_integer()
            })
            .collect();
        for cand in candidate_integer_roots(&ints, &p, &den) {
            let r = Q::new(cand, den.clone());
            if Zero::is_zero(&p.eval(&r)) && !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    /// Sturm sequence `p, p′, −rem(p, p′), …`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-<Q as Field>::one()));
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`,
    /// with `None` meaning ∓∞.
    pub fn count_real_roots(&self, lo: Option<&Q>, hi: Option<&Q>) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let v_lo = sign_changes(&seq, lo, false);
        let v_hi = sign_changes(&seq, hi, true);
        v_lo.saturating_sub(v_hi)
    }

    /// Floating roots, refined by Newton's method. Intended for squarefree
    /// inputs, where every root is simple.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let f: Polynomial<f64> = Polynomial::new(self.coeffs.iter().map(Field::to_f64).collect());
        float_roots(&f)
    }
}

/// Integer candidates `y` for roots of the monic integer polynomial `ints`
/// (lowest degree first). Exact divisor enumeration when the constant term is
/// small; otherwise floating root estimates rounded to integers.
fn candidate_integer_roots(ints: &[BigInt], p: &QPoly, den: &BigInt) -> Vec<BigInt> {
    let c0 = ints[0].abs();
    let mut out = Vec::new();
    if let Some(c) = num_traits::ToPrimitive::to_u64(&c0).filter(|&c| c <= 1_000_000) {
        let mut d = 1u64;
        while d * d <= c {
            if c % d == 0 {
                for v in [d, c / d] {
                    out.push(BigInt::from(v));
                    out.push(-BigInt::from(v));
                }
            }
            d += 1;
        }
        return out;
    }
    let scale = num_traits::ToPrimitive::to_f64(den).unwrap_or(f64::INFINITY);
    for r in p.complex_roots() {
        if r.im.abs() <= 1e-6 * (1.0 + r.re.abs()) {
            let y = (r.re * scale).round();
            if y.is_finite() {
                if let Some(v) = num_traits::FromPrimitive::from_f64(y) {
                    let v: BigInt = v;
                    for delta in [-1i64, 0, 1] {
                        out.push(&v + delta);
                    }
                }
            }
        }
    }
    out
}

fn sign_at(p: &QPoly, x: Option<&Q>, plus_inf: bool) -> i32 {
    match x {
        Some(x) => {
            let v = p.eval(x);
            if Zero::is_zero(&v) {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        }
        None => {
            let lead = p.lead().map_or(0, |l| if l.is_positive() { 1 } else { -1 });
            let deg = p.degree().unwrap_or(0);
            if plus_inf || deg % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
    }
}

fn sign_changes(seq: &[QPoly], x: Option<&Q>, plus_inf: bool) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| sign_at(p, x, plus_inf)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Roots of a floating polynomial via the companion matrix, polished by a few
/// Newton steps in complex arithmetic.
pub fn float_roots(p: &Polynomial<f64>) -> Vec<Complex64> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = *p.lead().unwrap();
    let c: Vec<f64> = p.coeffs().iter().map(|v| v / lead).collect();
    let comp = nalgebra::DMatrix::from_fn(deg, deg, |r, col| {
        if col == deg - 1 {
            -c[r]
        } else if r == col + 1 {
            1.0
        } else {
            0.0
        }
    });
    let cc: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let eig = general_eigenvalues(&comp).unwrap_or_else(|| durand_kerner(&cc));
    let dc: Vec<Complex64> =
        cc.iter().enumerate().skip(1).map(|(i, v)| v * i as f64).collect();
    let eval = |coeffs: &[Complex64], z: Complex64| {
        coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * z + v)
    };
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..8 {
                let d = eval(&dc, z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = eval(&cc, z) / d;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                z -= step;
                if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                    break;
                }
            }
            // Keep the polished root only if it did not wander to a neighbour.
            if (z - z0).norm() <= 1e-6 * (1.0 + z0.norm()) {
                z
            } else {
                z0
            }
        })
        .collect()
}

/// Simultaneous root iteration for a monic polynomial (coefficients lowest
/// degree first).
fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let deg = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * z + v);
    let bound = 1.0 + c[..deg].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let seed = Complex64::from_polar(1.0, 0.7);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * bound * 0.5).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let denom = (0..deg).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved <= 1e-15 * bound {
            break;
        }
    }
    z
}

/// `det(tI − m)`, by the Faddeev–LeVerrier recursion.
pub fn char_poly<T: Field>(m: &Mat<T>) -> Polynomial<T> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut mk = Mat::<T>::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk).add_scalar(&coeffs[n - k + 1]);
        let amk = m.mul(&mk);
        coeffs[n - k] = -(amk.trace() / T::from_i64(k as i64));
    }
    Polynomial::new(coeffs)
}

/// Minimal polynomial of an exact square matrix: the first linear dependency
/// among `I, m, m², …`.
pub fn min_poly(m: &Mat<Q>) -> QPoly {
    use crate::linalg::Linalg;
    let n = m.rows();
    let mut powers: Vec<Vec<Q>> = vec![Mat::<Q>::identity(n).into_data()];
    let mut cur = Mat::<Q>::identity(n);
    loop {
        cur = cur.mul(m);
        let target = cur.data().to_vec();
        let a = Mat::from_columns(n * n, &powers);
        let b = Mat::from_columns(n * n, &[target]);
        if let Some(x) = Q::solve(&a, &b, 0.0) {
            let mut coeffs: Vec<Q> = x.column(0).into_iter().map(|c| -c).collect();
            coeffs.push(<Q as Field>::one());
            return Polynomial::new(coeffs);
        }
        powers.push(cur.data().to_vec());
    }
}

/// Whether `p` is, up to sign, even or odd in `t`, i.e. `p(−t) = ±p(t)`.
pub fn parity(p: &QPoly) -> Option<bool> {
    let even = p.coeffs().iter().enumerate().all(|(i, c)| i % 2 == 0 || Zero::is_zero(c));
    let odd = p.coeffs().iter().enumerate().all(|(i, c)| i % 2 == 1 || Zero::is_zero(c));
    match (even, odd) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn p(c: &[i64]) -> QPoly {
        Polynomial::new(c.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn durand_kerner_finds_cyclotomic_roots() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        // t^4 + 1
        let roots = durand_kerner(&[one, zero, zero, zero, one]);
        assert_eq!(roots.len(), 4);
        for z in &roots {
            assert!((z.powu(4) + 1.0).norm() < 1e-12, "{z}");
        }
    }

    fn mq(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&Mat::<Q>::zeros(2, 2)), p(&[0, 0, 1]));
        assert_eq!(char_poly(&mq(&[&[2, 1], &[0, 2]])), p(&[4, -4, 1]));
        assert_eq!(char_poly(&mq(&[&[0, -2], &[2, 0]])), p(&[4, 0, 1]));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p(&[4, -4, 1]).squarefree_part().unwrap(), p(&[-2, 1]));
        assert_eq!(p(&[4, 0, 1]).squarefree_part().unwrap(), p(&[4, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).squarefree_part().unwrap(), p(&[0, 1]));
        assert_eq!(QPoly::zero().squarefree_part(), Err(NashError::ZeroPolynomial));
    }

    #[test]
    fn yun_factorization() {
        // (t−1)(t+2)^2(t^2+1)^3
        let f = p(&[-1, 1])
            .mul(&p(&[2, 1]).mul(&p(&[2, 1])))
            .mul(&p(&[1, 0, 1]).mul(&p(&[1, 0, 1])).mul(&p(&[1, 0, 1])));
        let fac = f.squarefree_factorization().unwrap();
        assert_eq!(fac, vec![(p(&[-1, 1]), 1), (p(&[2, 1]), 2), (p(&[1, 0, 1]), 3)]);
    }

    #[test]
    fn rational_roots_and_sturm() {
        let f = p(&[-1, 1]).mul(&Polynomial::new(vec![q(-1, 3), qi(1)])).mul(&p(&[-2, 0, 1]));
        assert_eq!(f.rational_roots(), vec![q(1, 3), qi(1)]);
        assert_eq!(f.count_real_roots(None, None), 4);
        assert_eq!(f.count_real_roots(Some(&qi(0)), None), 3);
        assert_eq!(p(&[1, 0, 1]).count_real_roots(None, None), 0);
        assert_eq!(p(&[0, 1]).rational_roots(), vec![qi(0)]);
    }

    #[test]
    fn modular_inverse() {
        let m = p(&[1, 0, 1]);
        let a = p(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul(&inv).rem(&m), QPoly::one());
        assert!(p(&[-1, 1]).inverse_mod(&p(&[-1, 0, 1])).is_none());
    }

    #[test]
    fn minimal_polynomial() {
        assert_eq!(min_poly(&mq(&[&[2, 0], &[0, 2]])), p(&[-2, 1]));
        assert_eq!(min_poly(&mq(&[&[2, 1], &[0, 2]])), p(&[4, -4, 1]));
    }
}
