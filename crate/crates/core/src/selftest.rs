//! Randomized acceptance suites, reproducible from a single seed.
//!
//! Each criterion draws from its own generator stream, so a criterion's
//! outcome does not depend on which others run or in what order.

use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::battery;
use crate::cartan::{cartan_split, iwasawa_kan, maximal_abelian, polar_kak, restricted_roots};
use crate::error::NashError;
use crate::explog::{exp_nilpotent, expm, log_exponential, log_unipotent};
use crate::jordan::{classify, multiplicative_jordan, sn_split, sn_split_exact, Setting};
use crate::liealg::{is_semisimple_element, levi_complement, span_basis, unipotent_radical, LieAlgebra};
use crate::linalg::{in_span, Linalg};
use crate::matrix::{rel_diff, Mat, Matrix, DEFAULT_TOL};
use crate::poly::min_poly;
use crate::random::{self, Gen};
use crate::replica::{exponent_lattice, hom_space_dimension, replica_hyperbolic, satisfies_relation};
use crate::scalar::{q, qi, Q};
use crate::triangularize::{engel_flag, split_triangularize};

pub const CRITERIA: [&str; 12] = [
    "jordan-reconstruction",
    "exact-chevalley-split",
    "jordan-functoriality",
    "exp-log-roundtrip",
    "reductivity-cross-oracle",
    "levi-decomposition",
    "iwasawa-kan",
    "polar-kak",
    "restricted-roots",
    "replica-lattices",
    "flags",
    "semisimple-density",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub max_residual: f64,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionOutcome>,
}

impl Report {
    /// One line per criterion.
    pub fn summary(&self) -> String {
        self.criteria.iter().map(|c| c.line() + "\n").collect()
    }
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2} {:<26} {status}  cases={:<5} max_residual={:.3e}",
            self.id, self.name, self.cases, self.max_residual
        );
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("  first_failure: {f}"));
        }
        s
    }
}

const MAX_REPORTED_FAILURES: usize = 5;

/// Accumulates the outcome of one criterion.
#[derive(Default)]
struct Check {
    cases: usize,
    max_residual: f64,
    failed: usize,
    failures: Vec<String>,
}

impl Check {
    fn fail(&mut self, what: impl Into<String>) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED_FAILURES {
            self.failures.push(what.into());
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fail(what());
        }
    }

    fn residual(&mut self, r: f64, bound: f64, what: impl FnOnce() -> String) {
        if r.is_nan() || r > bound {
            self.fail(format!("{}: residual {r:.3e} > {bound:.0e}", what()));
        }
        if !r.is_nan() {
            self.max_residual = self.max_residual.max(r);
        }
    }

    fn ok<T>(&mut self, r: crate::Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{}: {}", what(), e.code()));
                None
            }
        }
    }

    fn finish(self, id: usize) -> CriterionOutcome {
        CriterionOutcome {
            id,
            name: CRITERIA[id - 1],
            passed: self.failed == 0,
            cases: self.cases,
            max_residual: self.max_residual,
            failures: self.failures,
        }
    }
}

/// Runs every criterion for `seed`. Criteria run in parallel; the report
/// order is by criterion number.
pub fn selftest(seed: u64) -> Report {
    let criteria: Vec<CriterionOutcome> = (1..=CRITERIA.len()).into_par_iter().map(|id| run_criterion(id, seed)).collect();
    Report { seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, seed: u64) -> CriterionOutcome {
    let g = &mut random::stream(seed, id as u64);
    let check = match id {
        1 => jordan_reconstruction(g),
        2 => exact_chevalley_split(g),
        3 => jordan_functoriality(g),
        4 => exp_log_roundtrip(g),
        5 => reductivity_cross_oracle(),
        6 => levi_decomposition(),
        7 => iwasawa(g),
        // Same corpus as criterion 7.
        8 => polar(&mut random::stream(seed, 7)),
        9 => roots(),
        10 => replica_lattices(g),
        11 => flags(g),
        12 => semisimple_density(g),
        _ => panic!("no criterion {id}"),
    };
    check.finish(id)
}

fn f64_of(m: &Matrix) -> Mat<f64> {
    m.to_f64()
}

fn commutator_norm(a: &Matrix, b: &Matrix) -> f64 {
    let (a, b) = (f64_of(a), f64_of(b));
    a.mul(&b).sub(&b.mul(&a)).frobenius()
}

const JORDAN_CASES: usize = 500;
const JORDAN_BUDGET: Duration = Duration::from_secs(10);

fn jordan_reconstruction(g: &mut Gen) -> Check {
    let mut c = Check::default();
    let start = Instant::now();
    for case in 0..JORDAN_CASES {
        c.cases += 1;
        let x = random::invertible(g, 4, 5, 3);
        let xm = Matrix::Exact(x.clone());
        let Some(t) = c.ok(multiplicative_jordan(&xm), || format!("case {case}")) else { continue };
        let scale = 1.0 + x.frobenius();
        let xf = x.to_f64();
        let back = f64_of(&t.recombine());
        c.residual(back.sub(&xf).frobenius() / scale, 1e-9, || format!("case {case} e·h·u"));
        for (name, a, b) in [("eh", &t.e, &t.h), ("eu", &t.e, &t.u), ("hu", &t.h, &t.u)] {
            c.residual(commutator_norm(a, b) / scale, 1e-9, || format!("case {case} [{name}]"));
        }
        if let Some(k) = c.ok(classify(&t.e, Setting::Group), || format!("case {case} classify e")) {
            c.require(k.elliptic, || format!("case {case}: e not elliptic"));
        }
        if let Some(k) = c.ok(classify(&t.h, Setting::Group), || format!("case {case} classify h")) {
            c.require(k.hyperbolic, || format!("case {case}: h not hyperbolic"));
        }
        if let Some(k) = c.ok(classify(&t.u, Setting::Group), || format!("case {case} classify u")) {
            c.require(k.unipotent, || format!("case {case}: u not unipotent"));
        }
    }
    c.require(start.elapsed() < JORDAN_BUDGET, || "runtime budget of 10 s exceeded".into());
    c
}

fn repeated_spectrum() -> Vec<Q> {
    vec![qi(-2), qi(-1), qi(0), q(1, 2), qi(1), qi(2), qi(3)]
}

fn nonzero_spectrum() -> Vec<Q> {
    vec![qi(-2), qi(-1), q(1, 2), qi(1), qi(2), qi(3)]
}

fn exact_chevalley_split(g: &mut Gen) -> Check {
    let mut c = Check::default();
    let spec = repeated_spectrum();
    for case in 0..200 {
        c.cases += 1;
        let dim = 2 + case % 4;
        let x = random::similar_to_triangular(g, dim, &spec);
        let Some((s, n)) = c.ok(sn_split(&Matrix::Exact(x.clone())), || format!("case {case}")) else { continue };
        let (Matrix::Exact(s), Matrix::Exact(n)) = (s, n) else {
            c.fail(format!("case {case}: parts are not exact"));
            continue;
        };
        c.require(s.add(&n) == x, || format!("case {case}: s + n != x"));
        c.require(n.pow(dim as u32).is_zero(), || format!("case {case}: n^{dim} != 0"));
        c.require(s.mul(&n) == n.mul(&s), || format!("case {case}: s and n do not commute"));
        let m = min_poly(&s);
        let g = m.gcd(&m.derivative());
        c.require(g.degree() == Some(0), || format!("case {case}: min poly of s not squarefree"));
        let (s2, _, _) = sn_split_exact(&x);
        c.require(s2 == s, || format!("case {case}: exact split differs between entry points"));
    }
    c
}

fn jordan_functoriality(g: &mut Gen) -> Check {
    let mut c = Check::default();
    let spec = nonzero_spectrum();
    for case in 0..100 {
        c.cases += 1;
        let x = if case % 2 == 0 {
            random::invertible(g, 4, 5, 2)
        } else {
            random::similar_to_triangular(g, 4, &spec)
        };
        let p = random::invertible(g, 4, 3, 1);
        let pinv = Q::inverse(&p, 0.0).expect("invertible");
        let y = p.mul(&x).mul(&pinv);
        let tx = c.ok(multiplicative_jordan(&Matrix::Exact(x)), || format!("case {case} x"));
        let ty = c.ok(multiplicative_jordan(&Matrix::Exact(y)), || format!("case {case} gxg⁻¹"));
        let (Some(tx), Some(ty)) = (tx, ty) else { continue };
        let (pf, pinvf) = (p.to_f64(), pinv.to_f64());
        for (name, a, b) in [("e", &tx.e, &ty.e), ("h", &tx.h, &ty.h), ("u", &tx.u, &ty.u)] {
            let conj = pf.mul(&f64_of(a)).mul(&pinvf);
            c.residual(rel_diff(&f64_of(b), &conj), 1e-8, || format!("case {case} part {name}"));
        }
    }
    c
}

fn strictly_upper_fixtures(g: &mut Gen) -> Vec<Mat<Q>> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(Mat::zeros(n, n));
        out.push(Mat::from_fn(n, n, |i, j| if i < j { qi(1) } else { qi(0) }));
        out.push(Mat::from_fn(n, n, |i, j| if j == i + 1 { qi(1) } else { qi(0) }));
        for _ in 0..8 {
            let t = random::triangular(g, n, &[qi(0)], 4, 5);
            out.push(t);
        }
    }
    out
}

fn exp_log_roundtrip(g: &mut Gen) -> Check {
    let mut c = Check::default();
    for (case, nil) in strictly_upper_fixtures(g).into_iter().enumerate() {
        c.cases += 1;
        let nm = Matrix::Exact(nil.clone());
        let Some(u) = c.ok(exp_nilpotent(&nm), || format!("fixture {case} exp")) else { continue };
        let Some(back) = c.ok(log_unipotent(&u), || format!("fixture {case} log")) else { continue };
        c.require(back == nm, || format!("fixture {case}: log(exp(N)) != N"));
        let unip = Matrix::Exact(nil.add_scalar(&qi(1)));
        let Some(l) = c.ok(log_unipotent(&unip), || format!("fixture {case} log")) else { continue };
        let Some(again) = c.ok(exp_nilpotent(&l), || format!("fixture {case} exp")) else { continue };
        c.require(again == unip, || format!("fixture {case}: exp(log(U)) != U"));
    }
    for case in 0..200 {
        c.cases += 1;
        let x = random::positive_borel(g, 4);
        let Some(l) = c.ok(log_exponential(&Matrix::Exact(x.clone())), || format!("B4 case {case}")) else {
            continue;
        };
        let xf = x.to_f64();
        c.residual(rel_diff(&expm(&f64_of(&l)), &xf), 1e-9, || format!("B4 case {case}"));
    }
    c
}

fn reductivity_cross_oracle() -> Check {
    let mut c = Check::default();
    for (name, g) in battery::structure_battery() {
        c.cases += 1;
        let Some(u) = c.ok(unipotent_radical(&g), || name.to_string()) else { continue };
        let reductive = g.is_reductive();
        c.require(reductive == u.is_empty(), || {
            format!("{name}: is_reductive = {reductive}, unipotent radical dim = {}", u.len())
        });
    }
    c
}

fn levi_decomposition() -> Check {
    let mut c = Check::default();
    for (name, g) in battery::structure_battery() {
        c.cases += 1;
        let n = g.n();
        let Some(d) = c.ok(levi_complement(&g), || name.to_string()) else { continue };
        let mut all = d.levi.clone();
        all.extend(d.unipotent.iter().cloned());
        let sum = span_basis(n, &all, 0.0);
        c.require(sum.len() == g.dim() && d.levi.len() + d.unipotent.len() == g.dim(), || {
            format!("{name}: l + u is not a direct sum equal to g")
        });
        c.require(all.iter().all(|m| g.contains(m)), || format!("{name}: l + u not inside g"));
        let closed = d.levi.iter().all(|a| d.levi.iter().all(|b| crate::liealg::in_subspace(&d.levi, &a.bracket(b), 0.0)));
        c.require(closed, || format!("{name}: l is not bracket-closed"));
        match LieAlgebra::from_basis(n, d.levi.clone(), 0.0) {
            Ok(l) => c.require(l.is_reductive(), || format!("{name}: l is not reductive")),
            Err(e) => c.fail(format!("{name}: l: {}", e.code())),
        }
        let stable = d.levi.iter().all(|a| d.unipotent.iter().all(|b| crate::liealg::in_subspace(&d.unipotent, &a.bracket(b), 0.0)));
        c.require(stable, || format!("{name}: [l, u] not inside u"));
    }
    c
}

const SL3_CASES: usize = 1000;
const MAX_CONDITION: f64 = 1e4;

fn orthogonality(k: &Mat<f64>) -> f64 {
    k.transpose().mul(k).sub(&Mat::identity(k.rows())).max_abs()
}

fn iwasawa(g: &mut Gen) -> Check {
    let mut c = Check::default();
    for case in 0..SL3_CASES {
        c.cases += 1;
        let x = random::special_linear(g, 3, MAX_CONDITION);
        let xm = Matrix::Approx { m: x.clone(), tol: DEFAULT_TOL };
        let Some(t) = c.ok(iwasawa_kan(&xm), || format!("case {case}")) else { continue };
        let back = t.k.mul(&t.a).mul(&t.n);
        c.residual(back.sub(&x).frobenius() / x.frobenius(), 1e-10, || format!("case {case} k·a·n"));
        c.residual(orthogonality(&t.k), 1e-12, || format!("case {case} kᵀk"));
        c.require(t.a.is_diagonal() && (0..3).all(|i| t.a[(i, i)] > 0.0), || {
            format!("case {case}: a is not positive diagonal")
        });
        c.require(t.n.is_upper_triangular() && (0..3).all(|i| t.n[(i, i)] == 1.0), || {
            format!("case {case}: n is not unit upper triangular")
        });
        let again = Matrix::Approx { m: back, tol: DEFAULT_TOL };
        let Some(t2) = c.ok(iwasawa_kan(&again), || format!("case {case} redecompose")) else { continue };
        let drift = [t2.k.sub(&t.k), t2.a.sub(&t.a), t2.n.sub(&t.n)]
            .iter()
            .map(|d| d.max_abs())
            .fold(0.0, f64::max);
        c.residual(drift, 1e-9, || format!("case {case} redecomposition"));
    }
    c
}

fn polar(g: &mut Gen) -> Check {
    let mut c = Check::default();
    for case in 0..SL3_CASES {
        c.cases += 1;
        let x = random::special_linear(g, 3, MAX_CONDITION);
        let xm = Matrix::Approx { m: x.clone(), tol: DEFAULT_TOL };
        let Some((k, big_x)) = c.ok(polar_kak(&xm), || format!("case {case}")) else { continue };
        let (kf, xf) = (f64_of(&k), f64_of(&big_x));
        c.residual(xf.sub(&xf.transpose()).max_abs(), 1e-12, || format!("case {case} Xᵀ − X"));
        c.residual(orthogonality(&kf), 1e-12, || format!("case {case} kᵀk"));
        let back = kf.mul(&expm(&xf));
        c.residual(back.sub(&x).frobenius() / x.frobenius(), 1e-10, || format!("case {case} k·exp(X)"));
        if let Some(cl) = c.ok(classify(&big_x, Setting::Algebra), || format!("case {case} classify X")) {
            c.require(cl.hyperbolic, || format!("case {case}: X not hyperbolic"));
        }
    }
    c
}

fn roots() -> Check {
    let mut c = Check::default();
    for n in 2..=4 {
        c.cases += 1;
        let g = battery::sl(n);
        let Some(split) = c.ok(cartan_split(&g), || format!("sl{n} split")) else { continue };
        let a = maximal_abelian(&split);
        c.require(a.len() == n - 1, || format!("sl{n}: dim a = {}", a.len()));
        let Some(rd) = c.ok(restricted_roots(&g, &a), || format!("sl{n} roots")) else { continue };
        c.require(rd.roots.len() == n * (n - 1), || format!("sl{n}: {} roots", rd.roots.len()));
        c.require(rd.root_spaces.iter().all(|s| s.len() == 1), || format!("sl{n}: root space not 1-dimensional"));
        c.require(rd.positive.len() == n * (n - 1) / 2, || format!("sl{n}: {} positive roots", rd.positive.len()));
        let total = rd.zero_space.len() + rd.root_spaces.iter().map(Vec::len).sum::<usize>();
        c.require(total == g.dim(), || format!("sl{n}: dimensions add to {total}, not {}", g.dim()));
        for (alpha, space) in rd.roots.iter().zip(&rd.root_spaces) {
            let neg: Vec<Q> = alpha.iter().map(|v| -v.clone()).collect();
            c.require(rd.roots.contains(&neg), || format!("sl{n}: −α missing"));
            for x in space {
                for (h, v) in rd.a_basis.iter().zip(alpha) {
                    c.require(h.bracket(x) == x.scale(v), || format!("sl{n}: [H, X] != α(H)X"));
                }
            }
        }
    }
    c
}

const SMALL_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Exponents of `v` over the primes up to 13, by trial division.
fn prime_exponents(v: &Q) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(SMALL_PRIMES.len());
    let (mut num, mut den) = (v.numer().abs(), v.denom().clone());
    for p in SMALL_PRIMES {
        let p = num_bigint::BigInt::from(p);
        let mut e = 0i64;
        while num.is_multiple_of(&p) && !num.is_zero() {
            num /= &p;
            e += 1;
        }
        while den.is_multiple_of(&p) {
            den /= &p;
            e -= 1;
        }
        out.push(e);
    }
    (num.is_one() && den.is_one()).then_some(out)
}

/// All `k ∈ [−6, 6]^m`, `k ≠ 0`, with `Σ k_i·exps_i = 0`.
fn brute_force_relations(exps: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = exps.len();
    let mut found = Vec::new();
    let mut k = vec![-6i64; m];
    loop {
        if k.iter().any(|v| *v != 0)
            && (0..SMALL_PRIMES.len()).all(|p| k.iter().zip(exps).map(|(ki, e)| ki * e[p]).sum::<i64>() == 0)
        {
            found.push(k.clone());
        }
        let mut i = 0;
        while i < m && k[i] == 6 {
            k[i] = -6;
            i += 1;
        }
        if i == m {
            return found;
        }
        k[i] += 1;
    }
}

fn random_smooth_rational(g: &mut Gen, primes: &[u32]) -> Q {
    use rand::Rng;
    let mut v = qi(1);
    for &p in primes {
        let e = g.random_range(-2..=2i32);
        v *= qi(p as i64).pow(e);
    }
    v
}

fn replica_lattices(g: &mut Gen) -> Check {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut c = Check::default();
    for (values, expected) in [(vec![qi(2), qi(4), qi(8)], 1usize), (vec![qi(2), qi(3)], 2)] {
        c.cases += 1;
        let dm = Matrix::Exact(Mat::diag(&values));
        match replica_hyperbolic(&dm) {
            Ok(d) => c.require(d.dimension == expected, || format!("{values:?}: dimension {}", d.dimension)),
            Err(e) => c.fail(format!("{values:?}: {}", e.code())),
        }
        let hd = hom_space_dimension(&values);
        c.require(hd == Ok(expected), || format!("{values:?}: hom space dimension {hd:?}"));
    }
    for case in 0..20 {
        c.cases += 1;
        let mut primes = SMALL_PRIMES.to_vec();
        primes.shuffle(g);
        primes.truncate(g.random_range(1..=3));
        let size = g.random_range(2..=4);
        let diag: Vec<Q> = (0..size).map(|_| random_smooth_rational(g, &primes)).collect();
        let dm = Matrix::Exact(Mat::diag(&diag));
        let Some(d) = c.ok(replica_hyperbolic(&dm), || format!("case {case}")) else { continue };
        let mut distinct = diag.clone();
        distinct.sort();
        distinct.dedup();
        c.require(d.eigenvalues == distinct, || format!("case {case}: eigenvalues {:?}", d.eigenvalues));
        let m = distinct.len();
        c.require(d.dimension + d.relation_lattice.len() == m, || format!("case {case}: rank bookkeeping"));
        for k in &d.relation_lattice {
            c.require(satisfies_relation(&distinct, k), || format!("case {case}: lattice row {k:?} is not a relation"));
        }
        let exps: Vec<Vec<i64>> = distinct.iter().map(|v| prime_exponents(v).expect("13-smooth")).collect();
        let lattice: Vec<Vec<Q>> = d.relation_lattice.iter().map(|r| r.iter().map(|v| qi(*v)).collect()).collect();
        for k in brute_force_relations(&exps) {
            let kq: Vec<Q> = k.iter().map(|v| qi(*v)).collect();
            c.require(in_span(&lattice, &kq, 0.0), || format!("case {case}: relation {k:?} outside the lattice"));
        }
        if let Ok(direct) = exponent_lattice(&distinct) {
            c.require(direct == d.relation_lattice, || format!("case {case}: lattice differs from exponent_lattice"));
        }
    }
    c
}

fn flag_containments(c: &mut Check, name: &str, g: &LieAlgebra<Q>) {
    c.cases += 1;
    let Some(flag) = c.ok(engel_flag(g), || name.to_string()) else { return };
    c.require(flag.complete, || format!("{name}: flag incomplete"));
    for (i, stage) in flag.stages.iter().enumerate() {
        c.require(stage.len() == i + 1, || format!("{name}: stage {i} has dimension {}", stage.len()));
        let below: &[Vec<Q>] = if i == 0 { &[] } else { &flag.stages[i - 1] };
        for b in g.basis() {
            for v in stage {
                let w = b.mul_vec(v);
                let ok = if below.is_empty() { w.iter().all(|t| t.is_zero()) } else { in_span(below, &w, 0.0) };
                c.require(ok, || format!("{name}: basis element does not map V{} into V{}", i + 1, i));
            }
        }
    }
}

fn flags(g: &mut Gen) -> Check {
    let mut c = Check::default();
    flag_containments(&mut c, "strictly-upper-3", &battery::strictly_upper(3));
    let p = random::invertible(g, 3, 3, 2);
    let pinv = Q::inverse(&p, 0.0).expect("invertible");
    let h = battery::heisenberg();
    let conj: Vec<Mat<Q>> = h.basis().iter().map(|b| p.mul(b).mul(&pinv)).collect();
    match LieAlgebra::from_basis(3, conj, 0.0) {
        Ok(hc) => flag_containments(&mut c, "heisenberg", &hc),
        Err(e) => c.fail(format!("heisenberg: {}", e.code())),
    }
    for (name, g) in battery::split_solvable_battery() {
        c.cases += 1;
        let Some((p, _)) = c.ok(split_triangularize(&g), || name.to_string()) else { continue };
        let Some(pinv) = c.ok(Q::inverse(&p, 0.0), || format!("{name}: P")) else { continue };
        let upper = g.basis().iter().all(|b| pinv.mul(b).mul(&p).is_upper_triangular());
        c.require(upper, || format!("{name}: conjugate not upper triangular"));
    }
    c.cases += 1;
    let so2 = split_triangularize(&battery::so(2));
    c.require(matches!(so2, Err(NashError::NotSplit(_))), || format!("so2: {so2:?}"));
    c
}

fn reductive_corpus() -> Vec<(String, LieAlgebra<Q>, Mat<Q>)> {
    let mut out = Vec::new();
    let algebras = [("sl2", battery::sl(2)), ("so3", battery::so(3)), ("gl2", battery::gl(2)), ("diag3", battery::diagonal(3))];
    for (name, g) in algebras {
        for (i, b) in g.basis().iter().enumerate() {
            out.push((format!("{name}[{i}]"), g.clone(), b.clone()));
        }
    }
    let sl3 = battery::sl(3);
    for (i, b) in sl3.basis().iter().enumerate().take(20 - out.len()) {
        out.push((format!("sl3[{i}]"), sl3.clone(), b.clone()));
    }
    out
}

const MAX_DRAWS: usize = 100;
const RADIUS: f64 = 1e-3;

fn semisimple_density(g: &mut Gen) -> Check {
    let mut c = Check::default();
    for (name, alg, x) in reductive_corpus() {
        c.cases += 1;
        let mut found = false;
        for _ in 0..MAX_DRAWS {
            let coeffs: Vec<Q> = (0..alg.dim()).map(|_| random::rational(g, 1, 1000)).collect();
            let dir = alg.element(&coeffs);
            let norm = dir.frobenius();
            if norm == 0.0 {
                continue;
            }
            let denom = (norm / RADIUS).ceil().to_i64().unwrap_or(i64::MAX).max(1) + 1;
            let y = x.add(&dir.scale(&q(1, denom)));
            let dist = y.sub(&x).frobenius();
            match is_semisimple_element(&Matrix::Exact(y), &alg) {
                Ok(true) if dist <= RADIUS => {
                    c.max_residual = c.max_residual.max(dist);
                    found = true;
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    c.fail(format!("{name}: {}", e.code()));
                    break;
                }
            }
        }
        c.require(found, || format!("{name}: no semisimple element within {RADIUS:.0e} in {MAX_DRAWS} draws"));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_exponent_oracle() {
        assert_eq!(prime_exponents(&q(12, 35)), Some(vec![2, 1, -1, -1, 0, 0]));
        assert_eq!(prime_exponents(&qi(17)), None);
        let rels = brute_force_relations(&[prime_exponents(&qi(2)).unwrap(), prime_exponents(&qi(4)).unwrap()]);
        assert!(rels.contains(&vec![-2, 1]));
        assert!(rels.iter().all(|k| k[0] + 2 * k[1] == 0));
        assert_eq!(rels.len(), 6);
    }
}
