use std::ffi::{c_char, CStr, CString};
use std::ptr;

use nashkit_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> serde_json::Value {
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    nk_string_free(s);
    v
}

unsafe fn last_error() -> String {
    CStr::from_ptr(nk_last_error()).to_str().unwrap().to_owned()
}

unsafe fn matrix(json: &str) -> *mut NkMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(nk_matrix_from_json(cstr(json).as_ptr(), 1e-8, &mut m), NkStatus::Ok);
    m
}

#[test]
fn jordan_parts_of_a_rotation_scaling() {
    unsafe {
        let x = matrix(r#"{"mode":"exact","entries":[["0","-2"],["2","0"]]}"#);
        let (mut e, mut h, mut u) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(nk_jordan(x, false, &mut e, &mut h, &mut u), NkStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(nk_matrix_to_json(h, &mut out), NkStatus::Ok);
        assert_eq!(take(out)["entries"], serde_json::json!([["2/1", "0/1"], ["0/1", "2/1"]]));
        let mut class = NkElementClass::default();
        assert_eq!(nk_classify(e, NkSetting::Group, &mut class), NkStatus::Ok);
        assert!(class.elliptic && !class.hyperbolic);
        for m in [x, e, h, u] {
            nk_matrix_free(m);
        }
    }
}

#[test]
fn exact_and_float_constructors() {
    unsafe {
        let mut m = ptr::null_mut();
        let (num, den) = ([1i64, 1, 0, 1], [2i64, 3, 1, 1]);
        assert_eq!(nk_matrix_new_exact(2, num.as_ptr(), den.as_ptr(), &mut m), NkStatus::Ok);
        assert!(nk_matrix_is_exact(m));
        let mut entries = [0.0; 4];
        assert_eq!(nk_matrix_entries(m, entries.as_mut_ptr()), NkStatus::Ok);
        assert_eq!(entries, [0.5, 1.0 / 3.0, 0.0, 1.0]);
        nk_matrix_free(m);

        let bad = [1i64, 0, 0, 0];
        assert_eq!(nk_matrix_new_exact(2, num.as_ptr(), bad.as_ptr(), &mut m), NkStatus::MalformedInput);

        let x = [2.0, 1.0, 0.0, 0.5];
        assert_eq!(nk_matrix_new_approx(2, x.as_ptr(), 1e-8, &mut m), NkStatus::Ok);
        assert_eq!(nk_matrix_size(m), 2);
        assert!(!nk_matrix_is_exact(m));
        let (mut k, mut a, mut n) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(nk_iwasawa_kan(m, &mut k, &mut a, &mut n), NkStatus::Ok);
        let mut nv = [0.0; 4];
        nk_matrix_entries(n, nv.as_mut_ptr());
        assert_eq!((nv[0], nv[2], nv[3]), (1.0, 0.0, 1.0));
        for h in [m, k, a, n] {
            nk_matrix_free(h);
        }
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(nk_matrix_from_json(cstr("{").as_ptr(), 1e-8, &mut m), NkStatus::MalformedInput);
        assert!(m.is_null());
        assert!(last_error().starts_with("malformed input"));

        let s = matrix(r#"{"mode":"exact","entries":[["1","2"],["2","4"]]}"#);
        let (mut k, mut big_x) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(nk_polar_kak(s, &mut k, &mut big_x), NkStatus::NotInvertible);
        assert_eq!(last_error(), "matrix is not invertible");
        let mut out = ptr::null_mut();
        assert_eq!(nk_log(s, NkDomain::Nilpotent, &mut out), NkStatus::NotUnipotent);
        nk_matrix_free(s);

        let mut text = ptr::null_mut();
        assert_eq!(nk_matrix_to_json(ptr::null(), &mut text), NkStatus::NullArgument);
        assert_eq!(nk_matrix_size(ptr::null()), 0);
        nk_matrix_free(ptr::null_mut());
        nk_string_free(ptr::null_mut());
    }
}

#[test]
fn algebra_queries() {
    unsafe {
        let json = r#"{"generators":[
            {"mode":"exact","entries":[["1","1"],["0","0"]]},
            {"mode":"exact","entries":[["0","1"],["0","0"]]}]}"#;
        let mut g = ptr::null_mut();
        assert_eq!(nk_algebra_from_json(cstr(json).as_ptr(), 1e-8, &mut g), NkStatus::Ok);
        assert_eq!(nk_algebra_dim(g), 2);
        let mut reductive = true;
        assert_eq!(nk_algebra_is_reductive(g, &mut reductive), NkStatus::Ok);
        assert!(!reductive);
        let mut out = ptr::null_mut();
        assert_eq!(nk_algebra_unipotent_radical_json(g, &mut out), NkStatus::Ok);
        assert_eq!(take(out)["dim"], 1);
        assert_eq!(nk_algebra_levi_json(g, &mut out), NkStatus::Ok);
        let levi = take(out);
        assert_eq!(levi["levi"].as_array().unwrap().len() + levi["unipotent"].as_array().unwrap().len(), 2);
        assert_eq!(nk_algebra_radical_json(g, &mut out), NkStatus::Ok);
        assert_eq!(take(out)["dim"], 2);
        nk_algebra_free(g);

        let approx = r#"{"basis":[{"mode":"approx","entries":[[0.0,1.0],[0.0,0.0]]}]}"#;
        assert_eq!(nk_algebra_from_json(cstr(approx).as_ptr(), 1e-8, &mut g), NkStatus::Ok);
        assert_eq!(nk_algebra_levi_json(g, &mut out), NkStatus::ExactRequired);
        assert_eq!(nk_algebra_to_json(g, &mut out), NkStatus::Ok);
        assert_eq!(take(out)["basis"].as_array().unwrap().len(), 1);
        nk_algebra_free(g);
    }
}

#[test]
fn replica_lattice() {
    unsafe {
        let x = matrix(r#"{"mode":"exact","entries":[["2","0","0"],["0","4","0"],["0","0","8"]]}"#);
        let mut out = ptr::null_mut();
        assert_eq!(nk_replica_json(x, &mut out), NkStatus::Ok);
        let v = take(out);
        assert_eq!(v["dimension"], 1);
        assert_eq!(v["kind"], "hyperbolic");
        nk_matrix_free(x);
    }
}
