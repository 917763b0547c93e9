//! Matrix Lie algebras given by a basis: closure, derived and lower central
//! series, trace forms, radical, unipotent radical and Levi complements.

use serde::{Deserialize, Serialize};

use crate::error::{NashError, Result};
use crate::jordan::{additive_jordan, sn_split_exact};
use crate::linalg::{combine, complement_from, coordinates, independent_subset, in_span, intersect, Linalg};
use crate::matrix::{Mat, Matrix};
use crate::scalar::{Field, Q};

/// A Lie subalgebra of `gl_n` with a fixed basis and its structure constants
/// `[b_i, b_j] = Σ_k c[i][j][k]·b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<T> {
    n: usize,
    basis: Vec<Mat<T>>,
    structure: Vec<Vec<Vec<T>>>,
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Natural,
    Adjoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceFormGram<T> {
    pub gram: Mat<T>,
    pub rep: Rep,
}

/// `𝔤 = 𝔩 ⊕ 𝔲` with `𝔩` a reductive subalgebra and `𝔲` the unipotent radical.
#[derive(Debug, Clone, PartialEq)]
pub struct LeviDecomp {
    pub levi: Vec<Mat<Q>>,
    pub unipotent: Vec<Mat<Q>>,
}

pub(crate) fn flat<T: Field>(ms: &[Mat<T>]) -> Vec<Vec<T>> {
    ms.iter().map(|m| m.data().to_vec()).collect()
}

pub(crate) fn unflat<T: Field>(n: usize, vs: Vec<Vec<T>>) -> Vec<Mat<T>> {
    vs.into_iter().map(|v| Mat::from_vec(n, n, v)).collect()
}

/// An independent subset of `ms` with the same span.
pub fn span_basis<T: Linalg>(n: usize, ms: &[Mat<T>], tol: f64) -> Vec<Mat<T>> {
    unflat(n, independent_subset(&flat(ms), tol))
}

/// Whether `x` lies in the span of `basis`.
pub fn in_subspace<T: Linalg>(basis: &[Mat<T>], x: &Mat<T>, tol: f64) -> bool {
    in_span(&flat(basis), x.data(), tol)
}

/// Basis of the span of all brackets `[a, b]` with `a ∈ A`, `b ∈ B`.
pub fn bracket_span<T: Linalg>(n: usize, a: &[Mat<T>], b: &[Mat<T>], tol: f64) -> Vec<Mat<T>> {
    let all: Vec<Mat<T>> = a.iter().flat_map(|x| b.iter().map(move |y| x.bracket(y))).collect();
    span_basis(n, &all, tol)
}

/// Basis of the intersection of two subspaces of `gl_n`.
pub fn intersect_subspaces<T: Linalg>(n: usize, a: &[Mat<T>], b: &[Mat<T>], tol: f64) -> Vec<Mat<T>> {
    unflat(n, intersect(&flat(a), &flat(b), tol))
}

/// Elements of `pool` (in order) extending `basis` to a basis of
/// `span(basis ∪ pool)`.
pub fn complement_in<T: Linalg>(n: usize, basis: &[Mat<T>], pool: &[Mat<T>], tol: f64) -> Vec<Mat<T>> {
    unflat(n, complement_from(&flat(basis), &flat(pool), tol))
}

impl<T: Linalg> LieAlgebra<T> {
    /// Builds the algebra from an independent, bracket-closed basis.
    pub fn from_basis(n: usize, basis: Vec<Mat<T>>, tol: f64) -> Result<Self> {
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(NashError::DimensionMismatch(format!("basis matrices must be {n}×{n}")));
        }
        if independent_subset(&flat(&basis), tol).len() != basis.len() {
            return Err(NashError::MalformedInput("basis is linearly dependent".into()));
        }
        let structure = structure_constants(&basis, tol)
            .ok_or_else(|| NashError::MalformedInput("basis is not closed under the bracket".into()))?;
        Ok(LieAlgebra { n, basis, structure, tol })
    }

    pub fn zero(n: usize, tol: f64) -> Self {
        LieAlgebra { n, basis: Vec::new(), structure: Vec::new(), tol }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat<T>] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<T>>] {
        &self.structure
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn contains(&self, x: &Mat<T>) -> bool {
        in_subspace(&self.basis, x, self.tol)
    }

    /// Coordinates of `x` in the basis, if `x` lies in the algebra.
    pub fn coords(&self, x: &Mat<T>) -> Option<Vec<T>> {
        coordinates(&flat(&self.basis), x.data(), self.tol)
    }

    pub fn element(&self, coeffs: &[T]) -> Mat<T> {
        Mat::from_vec(self.n, self.n, combine(&flat(&self.basis), coeffs))
    }

    /// Matrix of `ad(b_i)` in the basis.
    pub fn ad(&self, i: usize) -> Mat<T> {
        let d = self.dim();
        Mat::from_fn(d, d, |k, j| self.structure[i][j][k].clone())
    }

    /// Matrix of `ad(x)` for an element given by its coordinates.
    pub fn ad_of(&self, coeffs: &[T]) -> Mat<T> {
        let d = self.dim();
        let mut out = Mat::zeros(d, d);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.ad(i).scale(c));
            }
        }
        out
    }

    /// The subalgebra spanned by a bracket-closed subset.
    pub fn subalgebra(&self, basis: Vec<Mat<T>>) -> Result<Self> {
        LieAlgebra::from_basis(self.n, basis, self.tol)
    }

    pub fn is_ideal(&self, sub: &[Mat<T>]) -> bool {
        self.basis
            .iter()
            .all(|b| sub.iter().all(|s| in_subspace(sub, &b.bracket(s), self.tol)))
    }

    pub fn is_abelian(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[i + 1..].iter().all(|b| {
                let c = a.bracket(b);
                T::vec_negligible(c.data(), self.tol, a.frobenius() * b.frobenius())
            })
        })
    }

    /// Derived or lower central series, starting with the algebra itself and
    /// stopping as soon as the dimension no longer drops.
    pub fn series(&self, kind: SeriesKind) -> Vec<Vec<Mat<T>>> {
        let mut out = vec![self.basis.clone()];
        loop {
            let last = out.last().expect("nonempty");
            if last.is_empty() {
                break;
            }
            let left = match kind {
                SeriesKind::Derived => last,
                SeriesKind::LowerCentral => &self.basis,
            };
            let next = bracket_span(self.n, left, last, self.tol);
            if next.len() == last.len() {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn is_solvable(&self) -> bool {
        self.series(SeriesKind::Derived).last().is_none_or(Vec::is_empty)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series(SeriesKind::LowerCentral).last().is_none_or(Vec::is_empty)
    }

    /// Gram matrix of `⟨x, y⟩ = tr(ρ(x)ρ(y))` on the basis.
    pub fn trace_form(&self, rep: Rep) -> TraceFormGram<T> {
        let mats: Vec<Mat<T>> = match rep {
            Rep::Natural => self.basis.clone(),
            Rep::Adjoint => (0..self.dim()).map(|i| self.ad(i)).collect(),
        };
        let d = self.dim();
        let gram = Mat::from_fn(d, d, |i, j| mats[i].mul(&mats[j]).trace());
        TraceFormGram { gram, rep }
    }

    /// Nondegeneracy of the natural trace form.
    pub fn is_reductive(&self) -> bool {
        let g = self.trace_form(Rep::Natural).gram;
        T::rank(&g, self.tol) == self.dim()
    }
}

fn structure_constants<T: Linalg>(basis: &[Mat<T>], tol: f64) -> Option<Vec<Vec<Vec<T>>>> {
    let flat_basis = flat(basis);
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| coordinates(&flat_basis, a.bracket(b).data(), tol))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

/// Smallest bracket-closed subspace of `gl_n` containing the generators.
pub fn lie_closure<T: Linalg>(n: usize, generators: &[Mat<T>], tol: f64) -> Result<LieAlgebra<T>> {
    if generators.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(NashError::DimensionMismatch(format!("generators must be {n}×{n}")));
    }
    let mut basis = flat(generators);
    basis = independent_subset(&basis, tol);
    let mut i = 0;
    while i < basis.len() {
        let a = Mat::from_vec(n, n, basis[i].clone());
        for j in 0..i {
            let b = Mat::from_vec(n, n, basis[j].clone());
            let c = a.bracket(&b).into_data();
            if !in_span(&basis, &c, tol) {
                basis.push(c);
            }
        }
        i += 1;
    }
    LieAlgebra::from_basis(n, unflat(n, basis), tol)
}

/// The radical: the orthogonal of `[𝔤, 𝔤]` under the natural trace form.
/// Checked to be a solvable ideal with semisimple quotient.
pub fn radical(g: &LieAlgebra<Q>) -> Result<Vec<Mat<Q>>> {
    let n = g.n();
    let d = g.dim();
    let derived = bracket_span(n, g.basis(), g.basis(), 0.0);
    let pairing = Mat::from_fn(derived.len(), d, |j, i| g.basis()[i].mul(&derived[j]).trace());
    let kernel = Q::nullspace(&pairing, 0.0);
    let rad: Vec<Mat<Q>> = kernel.iter().map(|c| g.element(c)).collect();
    if !g.is_ideal(&rad) {
        return Err(NashError::PostconditionFailed("radical is not an ideal".into()));
    }
    if !g.subalgebra(rad.clone())?.is_solvable() {
        return Err(NashError::PostconditionFailed("radical is not solvable".into()));
    }
    if !quotient_killing_nondegenerate(g, &rad) {
        return Err(NashError::PostconditionFailed(
            "quotient by the radical has a degenerate Killing form".into(),
        ));
    }
    Ok(rad)
}

/// Killing form of `𝔤/𝔦` for an ideal `𝔦`, computed on a complement taken
/// from the basis of `𝔤`.
fn quotient_killing_nondegenerate(g: &LieAlgebra<Q>, ideal: &[Mat<Q>]) -> bool {
    let n = g.n();
    let comp = complement_in(n, ideal, g.basis(), 0.0);
    let m = comp.len();
    if m == 0 {
        return true;
    }
    let mut full = ideal.to_vec();
    full.extend(comp.iter().cloned());
    let full_flat = flat(&full);
    let k = ideal.len();
    // ad_i[r][c]: component along comp[r] of [comp[i], comp[c]].
    let ads: Vec<Mat<Q>> = comp
        .iter()
        .map(|a| {
            let cols: Vec<Vec<Q>> = comp
                .iter()
                .map(|b| {
                    let c = coordinates(&full_flat, a.bracket(b).data(), 0.0).expect("inside 𝔤");
                    c[k..].to_vec()
                })
                .collect();
            Mat::from_columns(m, &cols)
        })
        .collect();
    let gram = Mat::from_fn(m, m, |i, j| ads[i].mul(&ads[j]).trace());
    Q::rank(&gram, 0.0) == m
}

/// Basis of the associative algebra (without identity) generated by `gens`.
pub fn associative_envelope(n: usize, gens: &[Mat<Q>]) -> Vec<Mat<Q>> {
    let mut basis = independent_subset(&flat(gens), 0.0);
    let mut i = 0;
    while i < basis.len() {
        let a = Mat::from_vec(n, n, basis[i].clone());
        for g in gens {
            let p = a.mul(g).into_data();
            if !in_span(&basis, &p, 0.0) {
                basis.push(p);
            }
        }
        i += 1;
    }
    unflat(n, basis)
}

/// `𝔤 ∩ rad(A)`, with `A` the associative envelope of `𝔤` and `rad(A)` its
/// trace-form radical. Checked to be a nilpotent ideal inside the radical.
pub fn unipotent_radical(g: &LieAlgebra<Q>) -> Result<Vec<Mat<Q>>> {
    let n = g.n();
    if g.dim() == 0 {
        return Ok(Vec::new());
    }
    let env = associative_envelope(n, g.basis());
    let m = env.len();
    let gram = Mat::from_fn(m, m, |i, j| env[i].mul(&env[j]).trace());
    let env_flat = flat(&env);
    let rad_a: Vec<Mat<Q>> = Q::nullspace(&gram, 0.0)
        .iter()
        .map(|c| Mat::from_vec(n, n, combine(&env_flat, c)))
        .collect();
    let u = intersect_subspaces(n, g.basis(), &rad_a, 0.0);
    if !g.is_ideal(&u) {
        return Err(NashError::PostconditionFailed("unipotent radical is not an ideal".into()));
    }
    if u.iter().any(|x| !x.pow(n as u32).is_zero()) {
        return Err(NashError::PostconditionFailed("unipotent radical has a non-nilpotent element".into()));
    }
    let rad = radical(g)?;
    if u.iter().any(|x| !in_subspace(&rad, x, 0.0)) {
        return Err(NashError::PostconditionFailed("unipotent radical is not inside the radical".into()));
    }
    Ok(u)
}

/// A reductive subalgebra `𝔩` with `𝔤 = 𝔩 ⊕ 𝔲`.
///
/// Starts from a complement of `𝔲` (semisimple parts of basis elements when
/// they lie in `𝔤`, then the basis itself) and corrects it stage by stage
/// along the lower central series `𝔲 = U_0 ⊃ U_1 ⊃ …`: at stage `k` the
/// bracket defects lie in `U_k` and a linear system for corrections in `U_k`
/// pushes them into `U_{k+1}`.
pub fn levi_complement(g: &LieAlgebra<Q>) -> Result<LeviDecomp> {
    let n = g.n();
    let u = unipotent_radical(g)?;
    let mut pool: Vec<Mat<Q>> = g
        .basis()
        .iter()
        .map(|b| sn_split_exact(b).0)
        .filter(|s| g.contains(s))
        .collect();
    pool.extend(g.basis().iter().cloned());
    let mut y = complement_in(n, &u, &pool, 0.0);
    if y.len() + u.len() != g.dim() {
        return Err(NashError::PostconditionFailed("complement has the wrong dimension".into()));
    }
    if !u.is_empty() {
        let uu = LieAlgebra::from_basis(n, u.clone(), 0.0)?;
        let lcs = uu.series(SeriesKind::LowerCentral);
        for k in 0..lcs.len() {
            let next: &[Mat<Q>] = lcs.get(k + 1).map_or(&[], Vec::as_slice);
            let w = complement_in(n, next, &lcs[k], 0.0);
            y = correct_stage(&y, &w, next).ok_or(NashError::LiftFailed(k))?;
        }
    }
    let l = LieAlgebra::from_basis(n, y.clone(), 0.0)
        .map_err(|_| NashError::PostconditionFailed("Levi complement is not bracket-closed".into()))?;
    let mut both = y.clone();
    both.extend(u.iter().cloned());
    if independent_subset(&flat(&both), 0.0).len() != g.dim() {
        return Err(NashError::PostconditionFailed("𝔩 + 𝔲 is not all of 𝔤".into()));
    }
    if !l.is_reductive() {
        return Err(NashError::PostconditionFailed("Levi complement is not reductive".into()));
    }
    Ok(LeviDecomp { levi: y, unipotent: u })
}

/// One correction stage: `y_i ↦ y_i + t_i`, `t_i ∈ span(w)`, so that every
/// bracket `[y_i, y_j]` lies in `span(y) + span(next)`.
fn correct_stage(y: &[Mat<Q>], w: &[Mat<Q>], next: &[Mat<Q>]) -> Option<Vec<Mat<Q>>> {
    let m = y.len();
    let p = w.len();
    if p == 0 || m == 0 {
        return Some(y.to_vec());
    }
    let mut full = y.to_vec();
    full.extend(w.iter().cloned());
    full.extend(next.iter().cloned());
    let full_flat = flat(&full);
    let coords = |x: &Mat<Q>| coordinates(&full_flat, x.data(), 0.0);
    // [y_i, w_a] restricted to the w-components.
    let yw: Vec<Vec<Vec<Q>>> = y
        .iter()
        .map(|yi| {
            w.iter()
                .map(|wa| coords(&yi.bracket(wa)).map(|c| c[m..m + p].to_vec()))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let rows = pairs.len() * p;
    let cols = m * p;
    let mut a = Mat::<Q>::zeros(rows, cols);
    let mut b = Mat::<Q>::zeros(rows, 1);
    let mut data_a = a.data().to_vec();
    let mut data_b = b.data().to_vec();
    for (pi, &(i, j)) in pairs.iter().enumerate() {
        let c = coords(&y[i].bracket(&y[j]))?;
        let (cy, rho) = (&c[..m], &c[m..m + p]);
        for r in 0..p {
            let row = pi * p + r;
            data_b[row] = -rho[r].clone();
            // [y_i, t_j] with t_j = Σ_a τ_{j,a} w_a
            for a_ in 0..p {
                let idx = row * cols + j * p + a_;
                data_a[idx] = data_a[idx].clone() + yw[i][a_][r].clone();
                let idx = row * cols + i * p + a_;
                data_a[idx] = data_a[idx].clone() - yw[j][a_][r].clone();
            }
            // − Σ_l c_l t_l
            for (l, cl) in cy.iter().enumerate() {
                if Field::is_zero(cl) {
                    continue;
                }
                let idx = row * cols + l * p + r;
                data_a[idx] = data_a[idx].clone() - cl.clone();
            }
        }
    }
    a = Mat::from_vec(rows, cols, data_a);
    b = Mat::from_vec(rows, 1, data_b);
    let tau = Q::solve(&a, &b, 0.0)?.column(0);
    let w_flat = flat(w);
    Some(
        y.iter()
            .enumerate()
            .map(|(i, yi)| {
                let t = combine(&w_flat, &tau[i * p..(i + 1) * p]);
                yi.add(&Mat::from_vec(yi.rows(), yi.cols(), t))
            })
            .collect(),
    )
}

/// Whether `x ∈ 𝔤` has trivial nilpotent part.
pub fn is_semisimple_element<T: Linalg>(x: &Matrix, g: &LieAlgebra<T>) -> Result<bool> {
    if x.n() != g.n() {
        return Err(NashError::DimensionMismatch("element and algebra differ in size".into()));
    }
    if !g.contains(&T::unwrap(x)) {
        return Err(NashError::NotInAlgebra);
    }
    let t = additive_jordan(x)?;
    Ok(t.u.is_negligible(1.0 + x.frobenius()))
}
