//! C ABI for nashkit.
//!
//! Matrices and algebras cross the boundary as opaque handles created from
//! JSON (the same schema as the command-line tool) and released with the
//! matching `*_free` function. Every fallible call returns an [`NkStatus`];
//! on failure, [`nk_last_error`] holds a message for the calling thread.
//! Strings returned through `char**` out-parameters are owned by the caller
//! and must be released with [`nk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nashkit::cartan::{iwasawa_kan, polar_kak};
use nashkit::explog::{self, Domain};
use nashkit::jordan::{additive_jordan, classify, multiplicative_jordan, sn_split, ElementClass, Setting};
use nashkit::json::{algebra_from_json, algebra_to_json, matrix_from_json, matrix_to_json, mats_to_json};
use nashkit::liealg::{levi_complement, radical, unipotent_radical, LieAlgebra};
use nashkit::replica::replica;
use nashkit::selftest::selftest;
use nashkit::{Mat, Matrix, NashError, Q};
use serde_json::{json, Value};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    MalformedInput = 10,
    DimensionMismatch = 11,
    ZeroPolynomial = 20,
    NotInvertible = 21,
    NotNilpotent = 22,
    NotUnipotent = 23,
    NotHyperbolic = 24,
    NotExponentialElement = 25,
    NotAbelian = 26,
    NotInAlgebra = 27,
    NotNilpotentAlgebra = 28,
    NotSolvable = 29,
    NotSplit = 30,
    NotThetaStable = 31,
    NotSimultaneouslyDiagonalizable = 32,
    NotPositiveRational = 33,
    IrrationalSpectrum = 34,
    ExactRequired = 35,
    LiftFailed = 36,
    PostconditionFailed = 37,
    ClusterAmbiguity = 40,
    NumericalFailure = 41,
    Panic = 99,
}

impl From<&NashError> for NkStatus {
    fn from(e: &NashError) -> Self {
        match e {
            NashError::MalformedInput(_) => NkStatus::MalformedInput,
            NashError::DimensionMismatch(_) => NkStatus::DimensionMismatch,
            NashError::ZeroPolynomial => NkStatus::ZeroPolynomial,
            NashError::NotInvertible => NkStatus::NotInvertible,
            NashError::NotNilpotent => NkStatus::NotNilpotent,
            NashError::NotUnipotent => NkStatus::NotUnipotent,
            NashError::NotHyperbolic(_) => NkStatus::NotHyperbolic,
            NashError::NotExponentialElement => NkStatus::NotExponentialElement,
            NashError::NotAbelian => NkStatus::NotAbelian,
            NashError::NotInAlgebra => NkStatus::NotInAlgebra,
            NashError::NotNilpotentAlgebra => NkStatus::NotNilpotentAlgebra,
            NashError::NotSolvable => NkStatus::NotSolvable,
            NashError::NotSplit(_) => NkStatus::NotSplit,
            NashError::NotThetaStable => NkStatus::NotThetaStable,
            NashError::NotSimultaneouslyDiagonalizable => NkStatus::NotSimultaneouslyDiagonalizable,
            NashError::NotPositiveRational(_) => NkStatus::NotPositiveRational,
            NashError::IrrationalSpectrum => NkStatus::IrrationalSpectrum,
            NashError::ExactRequired => NkStatus::ExactRequired,
            NashError::LiftFailed(_) => NkStatus::LiftFailed,
            NashError::PostconditionFailed(_) => NkStatus::PostconditionFailed,
            NashError::ClusterAmbiguity { .. } => NkStatus::ClusterAmbiguity,
            NashError::NumericalFailure(_) => NkStatus::NumericalFailure,
        }
    }
}

/// Whether an element is read in the group or in the Lie algebra.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkSetting {
    Group = 0,
    Algebra = 1,
}

/// Domain of the exponential / logarithm.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkDomain {
    Nilpotent = 0,
    Hyperbolic = 1,
    Exponential = 2,
}

/// Class predicates of an element.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NkElementClass {
    pub elliptic: bool,
    pub hyperbolic: bool,
    pub unipotent: bool,
    pub semisimple: bool,
    pub exponential: bool,
}

impl From<ElementClass> for NkElementClass {
    fn from(c: ElementClass) -> Self {
        NkElementClass {
            elliptic: c.elliptic,
            hyperbolic: c.hyperbolic,
            unipotent: c.unipotent,
            semisimple: c.semisimple,
            exponential: c.exponential,
        }
    }
}

/// Opaque square matrix, exact or approximate.
pub struct NkMatrix {
    inner: Matrix,
}

enum Track {
    Exact(LieAlgebra<Q>),
    Approx(LieAlgebra<f64>),
}

/// Opaque matrix Lie algebra.
pub struct NkAlgebra {
    inner: Track,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Status(NkStatus, String),
    Nash(NashError),
}

impl From<NashError> for Failure {
    fn from(e: NashError) -> Self {
        Failure::Nash(e)
    }
}

type FfiResult<T> = Result<T, Failure>;

/// Runs `f`, recording the error message and converting panics.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> NkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            NkStatus::Ok
        }
        Ok(Err(Failure::Nash(e))) => {
            set_last_error(&e.to_string());
            NkStatus::from(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(&msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic");
            NkStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(NkStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(NkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn matrix_arg<'a>(p: *const NkMatrix, what: &str) -> FfiResult<&'a Matrix> {
    p.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn algebra_arg<'a>(p: *const NkAlgebra) -> FfiResult<&'a Track> {
    p.as_ref().map(|a| &a.inner).ok_or_else(|| null("algebra"))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_matrix(out: *mut *mut NkMatrix, m: Matrix, what: &str) -> FfiResult<()> {
    put(out, Box::into_raw(Box::new(NkMatrix { inner: m })), what)
}

unsafe fn put_string(out: *mut *mut c_char, v: &Value) -> FfiResult<()> {
    let s = CString::new(v.to_string()).expect("JSON has no interior nul");
    put(out, s.into_raw(), "output string")
}

fn parse_json(text: &str) -> FfiResult<Value> {
    serde_json::from_str(text).map_err(|e| Failure::Nash(NashError::MalformedInput(e.to_string())))
}

/// Message for the last failed call on this thread (empty after a
/// successful call). The pointer stays valid until the next call on the
/// same thread.
#[no_mangle]
pub extern "C" fn nk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix from its JSON encoding; `tol` applies to approximate
/// matrices.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_from_json(json: *const c_char, tol: f64, out: *mut *mut NkMatrix) -> NkStatus {
    guard(|| {
        let v = parse_json(str_arg(json, "json")?)?;
        put_matrix(out, matrix_from_json(&v, tol)?, "out")
    })
}

/// Builds an approximate `n × n` matrix from `n*n` row-major entries.
///
/// # Safety
/// `entries` must point to `n*n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_new_approx(
    n: usize,
    entries: *const f64,
    tol: f64,
    out: *mut *mut NkMatrix,
) -> NkStatus {
    guard(|| {
        if entries.is_null() && n > 0 {
            return Err(null("entries"));
        }
        let data = if n == 0 { Vec::new() } else { std::slice::from_raw_parts(entries, n * n).to_vec() };
        put_matrix(out, Matrix::approx(Mat::from_vec(n, n, data), tol)?, "out")
    })
}

/// Builds an exact `n × n` matrix from row-major numerators and
/// denominators.
///
/// # Safety
/// `num` and `den` must each point to `n*n` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_new_exact(
    n: usize,
    num: *const i64,
    den: *const i64,
    out: *mut *mut NkMatrix,
) -> NkStatus {
    guard(|| {
        if n > 0 && (num.is_null() || den.is_null()) {
            return Err(null("entries"));
        }
        let (num, den) = if n == 0 {
            (&[][..], &[][..])
        } else {
            (std::slice::from_raw_parts(num, n * n), std::slice::from_raw_parts(den, n * n))
        };
        if den.contains(&0) {
            return Err(NashError::MalformedInput("zero denominator".into()).into());
        }
        let data = num.iter().zip(den).map(|(&a, &b)| Q::new(a.into(), b.into())).collect();
        put_matrix(out, Matrix::exact(Mat::from_vec(n, n, data))?, "out")
    })
}

/// Releases a matrix handle.
///
/// # Safety
/// `m` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_free(m: *mut NkMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Side length of the matrix (0 for a null handle).
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_size(m: *const NkMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.n())
}

/// Whether the matrix holds exact rationals.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_is_exact(m: *const NkMatrix) -> bool {
    m.as_ref().is_some_and(|m| m.inner.is_exact())
}

/// Copies the entries, rounded to doubles, into `out` (row-major, `n*n`).
///
/// # Safety
/// `m` must be a live handle; `out` must have room for `n*n` doubles.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_entries(m: *const NkMatrix, out: *mut f64) -> NkStatus {
    guard(|| {
        let m = matrix_arg(m, "matrix")?.to_f64();
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, m.data().len()).copy_from_slice(m.data());
        Ok(())
    })
}

/// JSON encoding of the matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_matrix_to_json(m: *const NkMatrix, out: *mut *mut c_char) -> NkStatus {
    guard(|| put_string(out, &matrix_to_json(matrix_arg(m, "matrix")?)))
}

/// Elliptic, hyperbolic and unipotent parts. `additive` selects
/// `x = e + h + u` instead of `x = e·h·u`.
///
/// # Safety
/// `x` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_jordan(
    x: *const NkMatrix,
    additive: bool,
    e: *mut *mut NkMatrix,
    h: *mut *mut NkMatrix,
    u: *mut *mut NkMatrix,
) -> NkStatus {
    guard(|| {
        let x = matrix_arg(x, "x")?;
        if e.is_null() || h.is_null() || u.is_null() {
            return Err(null("out"));
        }
        let t = if additive { additive_jordan(x)? } else { multiplicative_jordan(x)? };
        put_matrix(e, t.e, "e")?;
        put_matrix(h, t.h, "h")?;
        put_matrix(u, t.u, "u")
    })
}

/// Semisimple and nilpotent parts, `x = s + n`.
///
/// # Safety
/// `x` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_sn_split(x: *const NkMatrix, s: *mut *mut NkMatrix, n: *mut *mut NkMatrix) -> NkStatus {
    guard(|| {
        let x = matrix_arg(x, "x")?;
        if s.is_null() || n.is_null() {
            return Err(null("out"));
        }
        let (sm, nm) = sn_split(x)?;
        put_matrix(s, sm, "s")?;
        put_matrix(n, nm, "n")
    })
}

/// Class predicates of `x`.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_classify(x: *const NkMatrix, setting: NkSetting, out: *mut NkElementClass) -> NkStatus {
    guard(|| {
        let setting = match setting {
            NkSetting::Group => Setting::Group,
            NkSetting::Algebra => Setting::Algebra,
        };
        put(out, classify(matrix_arg(x, "x")?, setting)?.into(), "out")
    })
}

fn domain(d: NkDomain) -> Domain {
    match d {
        NkDomain::Nilpotent => Domain::Nilpotent,
        NkDomain::Hyperbolic => Domain::Hyperbolic,
        NkDomain::Exponential => Domain::Exponential,
    }
}

/// Exponential of `x` on the given domain.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_exp(x: *const NkMatrix, d: NkDomain, out: *mut *mut NkMatrix) -> NkStatus {
    guard(|| put_matrix(out, explog::exp(matrix_arg(x, "x")?, domain(d))?, "out"))
}

/// Logarithm of `x` on the given domain.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_log(x: *const NkMatrix, d: NkDomain, out: *mut *mut NkMatrix) -> NkStatus {
    guard(|| put_matrix(out, explog::log(matrix_arg(x, "x")?, domain(d))?, "out"))
}

/// `x = k·exp(X)` with `k` orthogonal and `X` symmetric.
///
/// # Safety
/// `x` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_polar_kak(x: *const NkMatrix, k: *mut *mut NkMatrix, big_x: *mut *mut NkMatrix) -> NkStatus {
    guard(|| {
        let x = matrix_arg(x, "x")?;
        if k.is_null() || big_x.is_null() {
            return Err(null("out"));
        }
        let (km, xm) = polar_kak(x)?;
        put_matrix(k, km, "k")?;
        put_matrix(big_x, xm, "X")
    })
}

/// `x = k·a·n` with `k` orthogonal, `a` positive diagonal, `n` unit upper
/// triangular.
///
/// # Safety
/// `x` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_iwasawa_kan(
    x: *const NkMatrix,
    k: *mut *mut NkMatrix,
    a: *mut *mut NkMatrix,
    n: *mut *mut NkMatrix,
) -> NkStatus {
    guard(|| {
        let x = matrix_arg(x, "x")?;
        if k.is_null() || a.is_null() || n.is_null() {
            return Err(null("out"));
        }
        let t = iwasawa_kan(x)?;
        let tol = x.tol();
        put_matrix(k, Matrix::Approx { m: t.k, tol }, "k")?;
        put_matrix(a, Matrix::Approx { m: t.a, tol }, "a")?;
        put_matrix(n, Matrix::Approx { m: t.n, tol }, "n")
    })
}

/// Replica of a hyperbolic or unipotent element, as JSON
/// (`{"kind", "dimension", "lattice"}`).
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_replica_json(x: *const NkMatrix, out: *mut *mut c_char) -> NkStatus {
    guard(|| {
        let d = replica(matrix_arg(x, "x")?)?;
        let kind = serde_json::to_value(d.kind).expect("plain enum");
        put_string(out, &json!({ "kind": kind, "dimension": d.dimension, "lattice": d.relation_lattice }))
    })
}

/// Parses an algebra (`{"generators": [...]}` or `{"basis": [...]}`); exact
/// if every matrix is exact.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_from_json(json: *const c_char, tol: f64, out: *mut *mut NkAlgebra) -> NkStatus {
    guard(|| {
        let v = parse_json(str_arg(json, "json")?)?;
        let (n, input) = algebra_from_json(&v, tol)?;
        let inner = if input.all_exact() {
            Track::Exact(input.build(n, tol)?)
        } else {
            Track::Approx(input.build(n, tol)?)
        };
        put(out, Box::into_raw(Box::new(NkAlgebra { inner })), "out")
    })
}

/// Releases an algebra handle.
///
/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_free(a: *mut NkAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra (0 for a null handle).
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_dim(a: *const NkAlgebra) -> usize {
    match a.as_ref().map(|a| &a.inner) {
        Some(Track::Exact(g)) => g.dim(),
        Some(Track::Approx(g)) => g.dim(),
        None => 0,
    }
}

/// JSON encoding (`{"n", "basis"}`) of the algebra.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_to_json(a: *const NkAlgebra, out: *mut *mut c_char) -> NkStatus {
    guard(|| {
        let v = match algebra_arg(a)? {
            Track::Exact(g) => algebra_to_json(g),
            Track::Approx(g) => algebra_to_json(g),
        };
        put_string(out, &v)
    })
}

/// Nondegeneracy of the trace form.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_is_reductive(a: *const NkAlgebra, out: *mut bool) -> NkStatus {
    guard(|| {
        let r = match algebra_arg(a)? {
            Track::Exact(g) => g.is_reductive(),
            Track::Approx(g) => g.is_reductive(),
        };
        put(out, r, "out")
    })
}

fn exact_only(t: &Track) -> FfiResult<&LieAlgebra<Q>> {
    match t {
        Track::Exact(g) => Ok(g),
        Track::Approx(_) => Err(NashError::ExactRequired.into()),
    }
}

/// Solvable radical as JSON (`{"dim", "basis"}`). Exact algebras only.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_radical_json(a: *const NkAlgebra, out: *mut *mut c_char) -> NkStatus {
    guard(|| {
        let r = radical(exact_only(algebra_arg(a)?)?)?;
        put_string(out, &json!({ "dim": r.len(), "basis": mats_to_json(&r) }))
    })
}

/// Unipotent radical as JSON (`{"dim", "basis"}`). Exact algebras only.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_unipotent_radical_json(a: *const NkAlgebra, out: *mut *mut c_char) -> NkStatus {
    guard(|| {
        let r = unipotent_radical(exact_only(algebra_arg(a)?)?)?;
        put_string(out, &json!({ "dim": r.len(), "basis": mats_to_json(&r) }))
    })
}

/// Levi decomposition as JSON (`{"levi": [...], "unipotent": [...]}`).
/// Exact algebras only.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_algebra_levi_json(a: *const NkAlgebra, out: *mut *mut c_char) -> NkStatus {
    guard(|| {
        let d = levi_complement(exact_only(algebra_arg(a)?)?)?;
        put_string(out, &json!({ "levi": mats_to_json(&d.levi), "unipotent": mats_to_json(&d.unipotent) }))
    })
}

/// Runs every acceptance criterion; writes the JSON report and whether all
/// passed.
///
/// # Safety
/// The out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_selftest(seed: u64, report: *mut *mut c_char, passed: *mut bool) -> NkStatus {
    guard(|| {
        if report.is_null() || passed.is_null() {
            return Err(null("out"));
        }
        let r = selftest(seed);
        put(passed, r.passed, "passed")?;
        put_string(report, &serde_json::to_value(&r).expect("plain struct"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn every_error_has_a_distinct_status() {
        let errors = [
            NashError::MalformedInput(String::new()),
            NashError::DimensionMismatch(String::new()),
            NashError::ZeroPolynomial,
            NashError::NotInvertible,
            NashError::NotNilpotent,
            NashError::NotUnipotent,
            NashError::NotHyperbolic(String::new()),
            NashError::NotExponentialElement,
            NashError::NotAbelian,
            NashError::NotInAlgebra,
            NashError::NotNilpotentAlgebra,
            NashError::NotSolvable,
            NashError::NotSplit(String::new()),
            NashError::NotThetaStable,
            NashError::NotSimultaneouslyDiagonalizable,
            NashError::NotPositiveRational(String::new()),
            NashError::IrrationalSpectrum,
            NashError::ExactRequired,
            NashError::LiftFailed(0),
            NashError::PostconditionFailed(String::new()),
            NashError::ClusterAmbiguity { gap: 0.0, radius: 0.0 },
            NashError::NumericalFailure(String::new()),
        ];
        let mut codes: Vec<i32> = errors.iter().map(|e| NkStatus::from(e) as i32).collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), errors.len());
    }

    #[test]
    fn null_handles_are_rejected() {
        let mut out = ptr::null_mut();
        let s = unsafe { nk_exp(ptr::null(), NkDomain::Nilpotent, &mut out) };
        assert_eq!(s, NkStatus::NullArgument);
        assert!(out.is_null());
    }
}
