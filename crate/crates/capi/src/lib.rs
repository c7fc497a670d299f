//! C ABI for the liefat certification library.
//!
//! Problems are opaque handles built from the same JSON problem specs the
//! CLI consumes. Results come back as JSON strings (rationals as `"p/q"`),
//! statuses as error codes, and positive/negative verdicts through an
//! `int32_t` out-parameter mirroring the CLI exit codes (0 positive,
//! 1 negative). Strings returned through `char **` belong to the library
//! and must be released with [`liefat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use liefat::chevalley::CompactLieAlgebra;
use liefat::error::Error;
use liefat::fatness::{fat_check, translate_polytope};
use liefat::oracle::run_oracle;
use liefat::problem::{DecompositionReport, ProblemSpec};
use liefat::rational::parse_rat_vec;
use liefat::reductive::{decompose, x_sigma};
use liefat::root_system::CartanVector;
use liefat::twistor::{certify_twistor, FailureReason};

/// Opaque problem handle: a parsed spec together with the constructed
/// compact algebra.
pub struct LiefatProblem {
    spec: ProblemSpec,
    algebra: CompactLieAlgebra,
}

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiefatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LiefatStatus {
    match e {
        Error::Parse(_) => LiefatStatus::ParseError,
        _ => LiefatStatus::DomainError,
    }
}

fn fail(e: &Error) -> LiefatStatus {
    set_error(&e.to_string());
    status_of(e)
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, LiefatStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(LiefatStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        LiefatStatus::InvalidUtf8
    })
}

fn write_json<T: serde::Serialize>(doc: &T, out: *mut *mut c_char) -> LiefatStatus {
    let text = match serde_json::to_string(doc) {
        Ok(t) => t,
        Err(e) => {
            set_error(&format!("serialization failed: {e}"));
            return LiefatStatus::DomainError;
        }
    };
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            LiefatStatus::Ok
        }
        Err(_) => {
            set_error("serialized JSON contained a NUL byte");
            LiefatStatus::DomainError
        }
    }
}

fn guarded<F: FnOnce() -> LiefatStatus>(f: F) -> LiefatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            LiefatStatus::DomainError
        }
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn liefat_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn liefat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a problem handle from a JSON spec. On success `*out` owns the
/// handle; release it with [`liefat_problem_free`].
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liefat_problem_from_json(
    json: *const c_char,
    out: *mut *mut LiefatProblem,
) -> LiefatStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LiefatStatus::NullPointer;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let spec = match ProblemSpec::from_json(text) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let rs = match spec.root_system() {
            Ok(rs) => rs,
            Err(e) => return fail(&e),
        };
        let algebra = match liefat::chevalley::compact_real_form(&rs) {
            Ok(l) => l,
            Err(e) => return fail(&e),
        };
        *out = Box::into_raw(Box::new(LiefatProblem { spec, algebra }));
        LiefatStatus::Ok
    })
}

/// Releases a problem handle. A null pointer is ignored.
///
/// # Safety
/// `p` must have come from [`liefat_problem_from_json`] and not already be
/// freed.
#[no_mangle]
pub unsafe extern "C" fn liefat_problem_free(p: *mut LiefatProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Frees a string returned by this library. A null pointer is ignored.
///
/// # Safety
/// `s` must have been returned through a `char **` out-parameter of this
/// library and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn liefat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn problem_ref<'a>(p: *const LiefatProblem) -> Result<&'a LiefatProblem, LiefatStatus> {
    if p.is_null() {
        set_error("null problem handle");
        return Err(LiefatStatus::NullPointer);
    }
    Ok(&*p)
}

fn set_verdict(verdict: *mut i32, value: i32) {
    if !verdict.is_null() {
        unsafe { *verdict = value };
    }
}

/// Serializes the problem's root system.
///
/// # Safety
/// `p` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liefat_roots_json(
    p: *const LiefatProblem,
    out_json: *mut *mut c_char,
) -> LiefatStatus {
    guarded(|| {
        let p = match problem_ref(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        write_json(p.algebra.root_system(), out_json)
    })
}

/// Builds the reductive decomposition and serializes its report.
///
/// # Safety
/// `p` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liefat_decompose_json(
    p: *const LiefatProblem,
    out_json: *mut *mut c_char,
) -> LiefatStatus {
    guarded(|| {
        let p = match problem_ref(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let sub = match p.spec.subalgebra_spec(p.algebra.root_system()) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let d = match decompose(&p.algebra, &sub) {
            Ok(d) => d,
            Err(e) => return fail(&e),
        };
        write_json(&DecompositionReport::from_decomposition(&d), out_json)
    })
}

/// Runs the combined wall + curvature fatness test. `vector_csv` may be
/// null, in which case the spec's `vector` payload is used. `*verdict`
/// becomes 0 for fat, 1 for not fat.
///
/// # Safety
/// `p` must be a live handle; `out_json` a valid pointer; `vector_csv`
/// null or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn liefat_fat_check(
    p: *const LiefatProblem,
    vector_csv: *const c_char,
    verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> LiefatStatus {
    guarded(|| {
        let p = match problem_ref(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let u = if vector_csv.is_null() {
            match &p.spec.vector {
                Some(v) => v.clone(),
                None => return fail(&Error::Parse("problem spec has no \"vector\"".into())),
            }
        } else {
            let text = match read_str(vector_csv) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_rat_vec(text) {
                Ok(v) => CartanVector::new(v),
                Err(e) => return fail(&e),
            }
        };
        let sub = match p.spec.subalgebra_spec(p.algebra.root_system()) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let d = match decompose(&p.algebra, &sub) {
            Ok(d) => d,
            Err(e) => return fail(&e),
        };
        match fat_check(&u, &d) {
            Ok(cert) => {
                set_verdict(verdict, if cert.is_fat() { 0 } else { 1 });
                write_json(&cert, out_json)
            }
            Err(e) => fail(&e),
        }
    })
}

/// Runs the full twistor certification. `*verdict` becomes 0 when
/// certified and 1 otherwise.
///
/// # Safety
/// `p` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liefat_twistor(
    p: *const LiefatProblem,
    verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> LiefatStatus {
    guarded(|| {
        let p = match problem_ref(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let sub = match p.spec.subalgebra_spec(p.algebra.root_system()) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let cert = certify_twistor(&p.algebra, &sub);
        if cert.failure_reason == Some(FailureReason::InvalidSpec) {
            return fail(&Error::InvalidSubsystem(
                cert.detail.unwrap_or_else(|| "invalid subalgebra".into()),
            ));
        }
        set_verdict(verdict, if cert.is_certified() { 0 } else { 1 });
        write_json(&cert, out_json)
    })
}

/// Computes the translation threshold for the spec's polytope along
/// `x_sigma` of the spec's `sigma` payload. A blocked direction is a
/// negative verdict (1) with an error document, like the CLI.
///
/// # Safety
/// `p` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liefat_translate(
    p: *const LiefatProblem,
    verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> LiefatStatus {
    guarded(|| {
        let p = match problem_ref(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let polytope = match &p.spec.polytope {
            Some(pt) => pt.clone(),
            None => return fail(&Error::Parse("problem spec has no \"polytope\"".into())),
        };
        let sigma = match &p.spec.sigma {
            Some(s) => s.iter().copied().collect(),
            None => return fail(&Error::Parse("problem spec has no \"sigma\"".into())),
        };
        let sub = match p.spec.subalgebra_spec(p.algebra.root_system()) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let d = match decompose(&p.algebra, &sub) {
            Ok(d) => d,
            Err(e) => return fail(&e),
        };
        let direction = match x_sigma(p.algebra.root_system(), &sigma) {
            Ok(x) => x,
            Err(e) => return fail(&e),
        };
        match translate_polytope(&polytope, &direction, &d) {
            Ok(report) => {
                set_verdict(verdict, 0);
                write_json(&report, out_json)
            }
            Err(e @ Error::NoEscapeDirection(_)) => {
                set_verdict(verdict, 1);
                write_json(&serde_json::json!({ "error": e.to_string() }), out_json)
            }
            Err(e) => fail(&e),
        }
    })
}

/// Replays the wall-versus-determinant oracle on seeded samples.
/// `*verdict` becomes 0 on full agreement, 1 otherwise.
///
/// # Safety
/// `p` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liefat_oracle(
    p: *const LiefatProblem,
    samples: u64,
    seed: u64,
    bound: u64,
    verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> LiefatStatus {
    guarded(|| {
        let p = match problem_ref(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if samples == 0 {
            return fail(&Error::Parse("samples must be at least 1".into()));
        }
        let sub = match p.spec.subalgebra_spec(p.algebra.root_system()) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let d = match decompose(&p.algebra, &sub) {
            Ok(d) => d,
            Err(e) => return fail(&e),
        };
        match run_oracle(&d, samples, seed, bound) {
            Ok(report) => {
                set_verdict(verdict, if report.all_agree { 0 } else { 1 });
                write_json(&report, out_json)
            }
            Err(e) => fail(&e),
        }
    })
}

/// Runs a built-in catalog entry by name; `*verdict` is 0 when the actual
/// verdict string equals the frozen expectation.
///
/// # Safety
/// `name` must be NUL-terminated; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liefat_catalog_run(
    name: *const c_char,
    verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> LiefatStatus {
    guarded(|| {
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let Some(entry) = liefat::catalog::entries().into_iter().find(|e| e.name == name) else {
            return fail(&Error::Parse(format!("unknown catalog entry {name:?}")));
        };
        match liefat::catalog::run_entry(&entry) {
            Ok(actual) => {
                set_verdict(verdict, if actual == entry.expected_verdict { 0 } else { 1 });
                write_json(
                    &serde_json::json!({
                        "name": entry.name,
                        "expected_verdict": entry.expected_verdict,
                        "actual_verdict": actual,
                    }),
                    out_json,
                )
            }
            Err(e) => fail(&e),
        }
    })
}
