//! C ABI for `triangle-forge`.
//!
//! Sequences, two-sided sequences and triangles cross the boundary as opaque
//! handles that the caller releases with the matching `*_free` function.
//! Every fallible call returns a [`TfStatus`]; on failure a description is
//! available from [`tf_last_error_message`] on the same thread. Strings
//! returned through `out` parameters are owned by the caller and released
//! with [`tf_string_free`]. Rationals travel as `p/q` text.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use triangle_forge::rat::parse_nonneg;
use triangle_forge::triangle::{
    bivariate_rows, convolution_array, delannoy_as_convolution, delannoy_recursion, pascal,
};
use triangle_forge::{random_log_concave, verify, DelannoyParams, Error, FiniteSeq, Report, Triangle, TwoSidedSeq};

/// Result codes for every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    HypothesisNotMet = 5,
    Internal = 6,
}

/// Which construction of the weighted Delannoy triangle to run.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfDelannoyMethod {
    Recursion = 0,
    Convolution = 1,
    Series = 2,
}

/// Finite-support sequence handle.
pub struct TfSeq(FiniteSeq);

/// Two-sided sequence handle.
pub struct TfTwoSided(TwoSidedSeq);

/// Triangle handle.
pub struct TfTriangle(Triangle);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: TfStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::BadRational(_)
            | Error::BadSequence(..)
            | Error::BadTail(..)
            | Error::BadTriangle(_)
            | Error::Json(_) => TfStatus::Parse,
            Error::NegativeTerm(_) | Error::NegativeSupport(_) | Error::InvalidParameter(_) | Error::NullSequence => {
                TfStatus::InvalidArgument
            }
            Error::NotLogConcave(_) => TfStatus::HypothesisNotMet,
            Error::Io(_) => TfStatus::Internal,
        };
        Failure { status, message: e.to_string() }
    }
}

fn fail(status: TfStatus, message: &str) -> Failure {
    Failure { status, message: message.to_string() }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, records any failure, and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TfStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TfStatus::Ok,
        Ok(Err(e)) => {
            set_last_error(&e.message);
            e.status
        }
        Err(_) => {
            set_last_error("internal panic");
            TfStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(TfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(TfStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(TfStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(TfStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| fail(TfStatus::Internal, "string contains NUL"))?;
    if out.is_null() {
        return Err(fail(TfStatus::NullPointer, "null output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_report(report: Report, passed: *mut bool, json: *mut *mut c_char) -> Result<(), Failure> {
    put(passed, report.passed())?;
    if !json.is_null() {
        put_string(json, report.to_json())?;
    }
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- finite sequences ----

/// Parses `offset:v0,v1,...` or `zero`.
///
/// # Safety
/// `literal` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_parse(literal: *const c_char, out: *mut *mut TfSeq) -> TfStatus {
    guard(|| {
        let seq: FiniteSeq = text(literal)?.parse()?;
        put(out, Box::into_raw(Box::new(TfSeq(seq))))
    })
}

/// # Safety
/// `seq` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_free(seq: *mut TfSeq) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_to_string(seq: *const TfSeq, out: *mut *mut c_char) -> TfStatus {
    guard(|| put_string(out, handle(seq)?.0.to_string()))
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_conv(a: *const TfSeq, b: *const TfSeq, out: *mut *mut TfSeq) -> TfStatus {
    guard(|| {
        let c = handle(a)?.0.conv(&handle(b)?.0);
        put(out, Box::into_raw(Box::new(TfSeq(c))))
    })
}

/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_conv_power(q: *const TfSeq, k: u32, out: *mut *mut TfSeq) -> TfStatus {
    guard(|| put(out, Box::into_raw(Box::new(TfSeq(handle(q)?.0.conv_power(k))))))
}

/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_is_log_concave(seq: *const TfSeq, out: *mut bool) -> TfStatus {
    guard(|| put(out, handle(seq)?.0.is_log_concave()))
}

/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_is_unimodal(seq: *const TfSeq, out: *mut bool) -> TfStatus {
    guard(|| put(out, handle(seq)?.0.is_unimodal()))
}

/// Seeded positive log-concave sequence of length `len`.
///
/// # Safety
/// `ratio_bound` must be a NUL-terminated rational; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_seq_random_log_concave(
    len: usize,
    seed: u64,
    ratio_bound: *const c_char,
    out: *mut *mut TfSeq,
) -> TfStatus {
    guard(|| {
        let bound = parse_nonneg(text(ratio_bound)?)?;
        let seq = random_log_concave(len, seed, &bound)?;
        put(out, Box::into_raw(Box::new(TfSeq(seq))))
    })
}

// ---- two-sided sequences ----

/// Parses `L<ratio>|<core>|R<ratio>`.
///
/// # Safety
/// `literal` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tail_parse(literal: *const c_char, out: *mut *mut TfTwoSided) -> TfStatus {
    guard(|| {
        let s: TwoSidedSeq = text(literal)?.parse()?;
        put(out, Box::into_raw(Box::new(TfTwoSided(s))))
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tf_tail_free(s: *mut TfTwoSided) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tail_is_log_concave(s: *const TfTwoSided, out: *mut bool) -> TfStatus {
    guard(|| put(out, handle(s)?.0.is_log_concave()))
}

/// Writes `finite <value>` or `divergent <+inf|-inf|both>` for the
/// convolution term at `p`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tail_convolution_term(
    a: *const TfTwoSided,
    b: *const TfTwoSided,
    p: i64,
    out: *mut *mut c_char,
) -> TfStatus {
    guard(|| {
        let verdict = triangle_forge::convolution_term(&handle(a)?.0, &handle(b)?.0, p);
        put_string(out, verdict.to_string())
    })
}

// ---- triangles ----

unsafe fn put_triangle(out: *mut *mut TfTriangle, t: Triangle) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(TfTriangle(t))))
}

/// Weighted Delannoy triangle with rows `0..=depth`.
///
/// # Safety
/// `b`, `c`, `d` must be NUL-terminated rationals; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_delannoy(
    method: TfDelannoyMethod,
    b: *const c_char,
    c: *const c_char,
    d: *const c_char,
    depth: u32,
    out: *mut *mut TfTriangle,
) -> TfStatus {
    guard(|| {
        let p = DelannoyParams::new(parse_nonneg(text(b)?)?, parse_nonneg(text(c)?)?, parse_nonneg(text(d)?)?)?;
        let n = depth as usize;
        let t = match method {
            TfDelannoyMethod::Recursion => delannoy_recursion(&p, n),
            TfDelannoyMethod::Convolution => delannoy_as_convolution(&p, n),
            TfDelannoyMethod::Series => bivariate_rows(&p, n),
        };
        put_triangle(out, t)
    })
}

/// `T(n,k) = (a * q^{*(n-k)})_k`.
///
/// # Safety
/// `a`, `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_convolution_array(
    a: *const TfSeq,
    q: *const TfSeq,
    depth: u32,
    out: *mut *mut TfTriangle,
) -> TfStatus {
    guard(|| put_triangle(out, convolution_array(&handle(a)?.0, &handle(q)?.0, depth as usize)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_pascal(depth: u32, out: *mut *mut TfTriangle) -> TfStatus {
    guard(|| put_triangle(out, pascal(depth as usize)))
}

/// Reads the triangle JSON document produced by `tf_triangle_to_json`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_from_json(json: *const c_char, out: *mut *mut TfTriangle) -> TfStatus {
    guard(|| put_triangle(out, Triangle::from_json(text(json)?)?))
}

/// # Safety
/// `t` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_free(t: *mut TfTriangle) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Index of the last row.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_depth(t: *const TfTriangle, out: *mut usize) -> TfStatus {
    guard(|| put(out, handle(t)?.0.depth()))
}

/// Entry `T(n,k)` as text; zero outside the triangle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_entry(t: *const TfTriangle, n: usize, k: i64, out: *mut *mut c_char) -> TfStatus {
    guard(|| put_string(out, handle(t)?.0.entry(n, k).to_string()))
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_to_json(t: *const TfTriangle, out: *mut *mut c_char) -> TfStatus {
    guard(|| put_string(out, handle(t)?.0.to_json()))
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_triangle_to_csv(t: *const TfTriangle, out: *mut *mut c_char) -> TfStatus {
    guard(|| put_string(out, handle(t)?.0.to_csv()))
}

// ---- verification ----

/// Checks every row for log-concavity. `report_json` may be NULL.
///
/// # Safety
/// `t` must be a live handle; `passed` must be writable; `report_json` must
/// be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tf_verify_rows_log_concave(
    t: *const TfTriangle,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> TfStatus {
    guard(|| put_report(verify::check_rows_log_concave(&handle(t)?.0), passed, report_json))
}

/// `c_n^2 >= d_{n-1} b_{n+1}` over `1 <= k <= max_k`, `1 <= n <= max_n`.
/// Fails with `HypothesisNotMet` if `a` or `q` is not log-concave.
///
/// # Safety
/// `a`, `q` must be live handles; `passed` must be writable; `report_json`
/// must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tf_verify_lemma31(
    a: *const TfSeq,
    q: *const TfSeq,
    max_k: u32,
    max_n: u32,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> TfStatus {
    guard(|| {
        let r = verify::check_lemma31(&handle(a)?.0, &handle(q)?.0, max_k, max_n.into())?;
        put_report(r, passed, report_json)
    })
}

/// Pairing inequality over `[-window, window]^2`; a negative window selects
/// one covering both supports.
///
/// # Safety
/// `a`, `b` must be live handles; `passed` must be writable; `report_json`
/// must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tf_verify_menon_pairing(
    a: *const TfSeq,
    b: *const TfSeq,
    window: i64,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> TfStatus {
    guard(|| {
        let (a, b) = (&handle(a)?.0, &handle(b)?.0);
        let window = if window < 0 { verify::covering_window(a, b) } else { window };
        put_report(verify::menon_pairing_check(a, b, window)?, passed, report_json)
    })
}
