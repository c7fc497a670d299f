//! Exercises the C entry points from Rust: handle lifecycle, verdict
//! codes, JSON payloads, and error reporting.

use std::ffi::{CStr, CString};
use std::ptr;

use liefat_capi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    liefat_string_free(p);
    s
}

unsafe fn build(json: &str) -> *mut LiefatProblem {
    let mut handle: *mut LiefatProblem = ptr::null_mut();
    let status = liefat_problem_from_json(cstr(json).as_ptr(), &mut handle);
    assert_eq!(status, LiefatStatus::Ok, "{:?}", CStr::from_ptr(liefat_last_error()));
    assert!(!handle.is_null());
    handle
}

#[test]
fn twistor_certification_through_the_c_abi() {
    unsafe {
        let p = build(r#"{"family":"C","rank":2,"subalgebra":{"kind":"d-type"}}"#);
        let mut verdict = -1;
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        let status = liefat_twistor(p, &mut verdict, &mut out);
        assert_eq!(status, LiefatStatus::Ok);
        assert_eq!(verdict, 0);
        let json = take_string(out);
        assert!(json.contains("certified_fat"));
        assert!(json.contains("SO(4)/U(2)"));
        liefat_problem_free(p);
    }
}

#[test]
fn fat_check_vector_override_and_verdicts() {
    unsafe {
        let p = build(
            r#"{"family":"C","rank":2,
                "subalgebra":{"kind":"centralizer","sigma":[1]},
                "vector":["1/2","1/2"]}"#,
        );
        let mut verdict = -1;
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        // spec payload: fat
        assert_eq!(liefat_fat_check(p, ptr::null(), &mut verdict, &mut out), LiefatStatus::Ok);
        assert_eq!(verdict, 0);
        assert!(take_string(out).contains("\"verdict\":\"fat\""));
        // override with the zero vector: not fat
        let zero = cstr("0,0");
        assert_eq!(liefat_fat_check(p, zero.as_ptr(), &mut verdict, &mut out), LiefatStatus::Ok);
        assert_eq!(verdict, 1);
        assert!(take_string(out).contains("not_fat"));
        // wrong arity: domain error with message
        let bad = cstr("1/2");
        assert_eq!(
            liefat_fat_check(p, bad.as_ptr(), &mut verdict, &mut out),
            LiefatStatus::DomainError
        );
        let msg = CStr::from_ptr(liefat_last_error()).to_str().unwrap();
        assert!(msg.contains("dimension"), "{msg}");
        liefat_problem_free(p);
    }
}

#[test]
fn translate_and_oracle_via_spec_payloads() {
    unsafe {
        let p = build(
            r#"{"family":"C","rank":2,
                "subalgebra":{"kind":"centralizer","sigma":[1]},
                "polytope":{"vertices":[[1,1],[1,-1],[-1,1],[-1,-1]]},
                "sigma":[1]}"#,
        );
        let mut verdict = -1;
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(liefat_translate(p, &mut verdict, &mut out), LiefatStatus::Ok);
        assert_eq!(verdict, 0);
        let json = take_string(out);
        assert!(json.contains("\"c_star\":\"2/1\""), "{json}");

        assert_eq!(liefat_oracle(p, 100, 7, 20, &mut verdict, &mut out), LiefatStatus::Ok);
        assert_eq!(verdict, 0);
        let json = take_string(out);
        assert!(json.contains("\"all_agree\":true"));

        assert_eq!(
            liefat_oracle(p, 0, 7, 20, &mut verdict, &mut out),
            LiefatStatus::ParseError
        );
        liefat_problem_free(p);
    }
}

#[test]
fn reports_and_catalog() {
    unsafe {
        let p = build(r#"{"family":"C","rank":2,"subalgebra":{"kind":"d-type"}}"#);
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(liefat_roots_json(p, &mut out), LiefatStatus::Ok);
        assert!(take_string(out).contains("\"cartan_matrix\""));
        assert_eq!(liefat_decompose_json(p, &mut out), LiefatStatus::Ok);
        assert!(take_string(out).contains("\"dim_m\":4"));
        liefat_problem_free(p);

        let mut verdict = -1;
        let name = cstr("sp6-so6-twistor");
        assert_eq!(liefat_catalog_run(name.as_ptr(), &mut verdict, &mut out), LiefatStatus::Ok);
        assert_eq!(verdict, 0);
        assert!(take_string(out).contains("certified_fat"));
    }
}

#[test]
fn error_paths_are_reported() {
    unsafe {
        let mut handle: *mut LiefatProblem = ptr::null_mut();
        // malformed JSON
        let bad = cstr("{broken");
        assert_eq!(
            liefat_problem_from_json(bad.as_ptr(), &mut handle),
            LiefatStatus::ParseError
        );
        assert!(!CStr::from_ptr(liefat_last_error()).to_bytes().is_empty());
        // null pointers
        assert_eq!(
            liefat_problem_from_json(ptr::null(), &mut handle),
            LiefatStatus::NullPointer
        );
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(liefat_roots_json(ptr::null(), &mut out), LiefatStatus::NullPointer);
        // frees ignore null
        liefat_problem_free(ptr::null_mut());
        liefat_string_free(ptr::null_mut());
        // version is a valid static string
        let v = CStr::from_ptr(liefat_version()).to_str().unwrap();
        assert!(!v.is_empty());
    }
}
