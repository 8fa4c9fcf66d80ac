//! C ABI for `hpdual`.
//!
//! Tuples and duality runs cross the boundary as opaque handles released with
//! their `*_free` function. Every fallible call returns an [`HpStatus`] and
//! writes its result through an out-pointer; the message of the last failure
//! on the calling thread is available from [`hp_last_error`]. Strings returned
//! to the caller are NUL-terminated UTF-8 and must be released with
//! [`hp_string_free`].
//!
//! The generated header lives at `include/hpdual.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hpdual::io::{duality_json, normality_json, parse_tuple, serialize_tuple};
use hpdual::pipeline::{run_duality, DualityRun};
use hpdual::{check_general_position, random_tuple, Error, SeriesTuple};

/// Status codes; the nonzero values match the CLI exit codes where both exist.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpStatus {
    Ok = 0,
    Internal = 1,
    InvalidInput = 2,
    NotNormal = 3,
    InsufficientTruncation = 4,
    NullPointer = 5,
    OutOfRange = 6,
}

/// Which matrix of a duality run to read.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpMatrix {
    M1 = 0,
    M2 = 1,
    Product = 2,
}

/// Opaque tuple of series.
pub struct HpTuple {
    inner: SeriesTuple,
}

/// Opaque result of solving all systems at one `n` and checking `M1 M2 = I`.
pub struct HpDuality {
    tuple: SeriesTuple,
    run: DualityRun,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> HpStatus {
    match err {
        Error::Parse { .. }
        | Error::Schema(_)
        | Error::LeadingZero { .. }
        | Error::InvalidArgument(_) => HpStatus::InvalidInput,
        Error::NotNormal { .. } => HpStatus::NotNormal,
        Error::InsufficientTruncation { .. } => HpStatus::InsufficientTruncation,
        Error::DimensionMismatch { .. } | Error::MixedInputs(_) => HpStatus::Internal,
    }
}

fn fail(err: Error) -> HpStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

fn null_arg(name: &str) -> HpStatus {
    set_last_error(format!("{name} is NULL"));
    HpStatus::NullPointer
}

/// Runs `body`, turning a panic into `Internal`.
fn guard(body: impl FnOnce() -> HpStatus) -> HpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == HpStatus::Ok {
                set_last_error("");
            }
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            HpStatus::Internal
        }
    }
}

fn into_c_string(s: String, out: *mut *mut c_char) -> HpStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for NULL before reaching here.
            unsafe { *out = c.into_raw() };
            HpStatus::Ok
        }
        Err(_) => {
            set_last_error("string contains an interior NUL");
            HpStatus::Internal
        }
    }
}

/// Message describing the last failed call on this thread; empty after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a tuple document.
///
/// # Safety
/// `json` must be NULL or a valid NUL-terminated string; `out` must be NULL or
/// point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn hp_tuple_from_json(
    json: *const c_char,
    out: *mut *mut HpTuple,
) -> HpStatus {
    guard(|| {
        if json.is_null() {
            return null_arg("json");
        }
        if out.is_null() {
            return null_arg("out");
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(e) => {
                set_last_error(format!("document is not UTF-8: {e}"));
                return HpStatus::InvalidInput;
            }
        };
        match parse_tuple(text) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(HpTuple { inner })) };
                HpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Seeded random tuple of `m + 1` series with `num_coeffs` coefficients.
///
/// # Safety
/// `out` must be NULL or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn hp_tuple_random(
    seed: u64,
    m: usize,
    num_coeffs: usize,
    height: u32,
    out: *mut *mut HpTuple,
) -> HpStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match random_tuple(seed, m, num_coeffs, height) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(HpTuple { inner })) };
                HpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// `m` of the tuple (it has `m + 1` series); 0 for NULL.
///
/// # Safety
/// `tuple` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hp_tuple_m(tuple: *const HpTuple) -> usize {
    match unsafe { tuple.as_ref() } {
        Some(t) => t.inner.m(),
        None => 0,
    }
}

/// Serializes the tuple as a document accepted by [`hp_tuple_from_json`].
///
/// # Safety
/// `tuple` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hp_tuple_to_json(
    tuple: *const HpTuple,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| {
        let Some(t) = (unsafe { tuple.as_ref() }) else {
            return null_arg("tuple");
        };
        if out.is_null() {
            return null_arg("out");
        }
        into_c_string(serialize_tuple(&t.inner), out)
    })
}

/// # Safety
/// `tuple` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_tuple_free(tuple: *mut HpTuple) {
    if !tuple.is_null() {
        drop(unsafe { Box::from_raw(tuple) });
    }
}

/// Normality verdicts of the `2(m+1)` systems used at `n`, as JSON. Returns
/// `Ok` whether or not the tuple is in general position; read
/// `general_position_at_n` from the document.
///
/// # Safety
/// `tuple` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hp_normality_json(
    tuple: *const HpTuple,
    n: usize,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| {
        let Some(t) = (unsafe { tuple.as_ref() }) else {
            return null_arg("tuple");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match check_general_position(&t.inner, n) {
            Ok(report) => into_c_string(normality_json(&report).to_string(), out),
            Err(e) => fail(e),
        }
    })
}

/// Solves every type I and type II system at `n` and checks `M1 M2 = I`.
/// `NotNormal` is returned when some system is degenerate.
///
/// # Safety
/// `tuple` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hp_duality_run(
    tuple: *const HpTuple,
    n: usize,
    out: *mut *mut HpDuality,
) -> HpStatus {
    guard(|| {
        let Some(t) = (unsafe { tuple.as_ref() }) else {
            return null_arg("tuple");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match run_duality(&t.inner, n) {
            Ok(run) => {
                let handle = HpDuality {
                    tuple: t.inner.clone(),
                    run,
                };
                unsafe { *out = Box::into_raw(Box::new(handle)) };
                HpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Whether `M1 M2` is exactly the identity; false for NULL.
///
/// # Safety
/// `run` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hp_duality_holds(run: *const HpDuality) -> bool {
    unsafe { run.as_ref() }.is_some_and(|d| d.run.holds())
}

/// Matrix dimension `m + 1`; 0 for NULL.
///
/// # Safety
/// `run` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hp_duality_dim(run: *const HpDuality) -> usize {
    unsafe { run.as_ref() }.map_or(0, |d| d.run.m1.dim())
}

/// One matrix entry as text, ascending powers, e.g. `"1 - 1*z"`.
///
/// # Safety
/// `run` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hp_duality_entry(
    run: *const HpDuality,
    which: HpMatrix,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| {
        let Some(d) = (unsafe { run.as_ref() }) else {
            return null_arg("run");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let m = match which {
            HpMatrix::M1 => &d.run.m1,
            HpMatrix::M2 => &d.run.m2,
            HpMatrix::Product => &d.run.report.product,
        };
        if row >= m.dim() || col >= m.dim() {
            set_last_error(format!(
                "entry ({row}, {col}) outside a {0}x{0} matrix",
                m.dim()
            ));
            return HpStatus::OutOfRange;
        }
        into_c_string(m.get(row, col).to_string(), out)
    })
}

/// Full run as JSON: solutions, residual orders, `M1`, `M2`, product,
/// determinants and per-entry verdicts. Rationals are strings.
///
/// # Safety
/// `run` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hp_duality_to_json(
    run: *const HpDuality,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| {
        let Some(d) = (unsafe { run.as_ref() }) else {
            return null_arg("run");
        };
        if out.is_null() {
            return null_arg("out");
        }
        into_c_string(duality_json(&d.tuple, &d.run).to_string(), out)
    })
}

/// # Safety
/// `run` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_duality_free(run: *mut HpDuality) {
    if !run.is_null() {
        drop(unsafe { Box::from_raw(run) });
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
