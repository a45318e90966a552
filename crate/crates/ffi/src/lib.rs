//! C ABI over `toric_a1`.
//!
//! Fans and reports are opaque heap handles released with their `_free`
//! function. Every fallible call returns a `ToricStatus`; on failure the
//! message is kept per thread and read back with `toric_last_error`.
//! Strings handed out by this library must be released with `toric_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toric_a1::fan::{self, FanError};
use toric_a1::homotopy::{self, HomotopyError};
use toric_a1::{Fan, HomotopyReport, RaySet};

/// Result codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToricStatus {
    Ok = 0,
    Validation = 1,
    Malformed = 2,
    Internal = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
}

/// Opaque fan handle.
pub struct ToricFan(Fan);

/// Opaque homotopy report handle.
pub struct ToricReport(HomotopyReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(ToricStatus, String);

impl From<FanError> for Failure {
    fn from(e: FanError) -> Failure {
        let status = match e {
            FanError::RayCollision(_) | FanError::Invalid(_) => ToricStatus::Validation,
            _ => ToricStatus::Malformed,
        };
        Failure(status, e.to_string())
    }
}

impl From<HomotopyError> for Failure {
    fn from(e: HomotopyError) -> Failure {
        let status = match e {
            HomotopyError::NotSmoothProper(_) => ToricStatus::Validation,
            HomotopyError::Cox(_) => ToricStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null() -> Failure {
    Failure(ToricStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, records any failure, and converts panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ToricStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ToricStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ToricStatus::Internal
        }
    }
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Failure(ToricStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn fan_ref<'a>(f: *const ToricFan) -> Result<&'a Fan, Failure> {
    f.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn report_ref<'a>(r: *const ToricReport) -> Result<&'a HomotopyReport, Failure> {
    r.as_ref().map(|h| &h.0).ok_or_else(null)
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn toric_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// call into this library on the same thread. Do not free.
#[no_mangle]
pub extern "C" fn toric_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn toric_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses fan JSON. Shape errors give `MALFORMED`; the fan is not validated.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_from_json(json: *const c_char, out: *mut *mut ToricFan) -> ToricStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Failure(ToricStatus::InvalidUtf8, "input is not UTF-8".into()))?;
        put(out, ToricFan(Fan::from_json(text)?))
    })
}

/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_projective_space(n: usize, out: *mut *mut ToricFan) -> ToricStatus {
    guard(|| put(out, ToricFan(fan::projective_space(n)?)))
}

/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_hirzebruch(a: u64, out: *mut *mut ToricFan) -> ToricStatus {
    guard(|| put(out, ToricFan(fan::hirzebruch(a)?)))
}

/// # Safety
/// `a` must point to `len` readable values (it may be NULL when `len` is 0)
/// and `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_kleinschmidt(
    d: usize,
    a: *const u64,
    len: usize,
    out: *mut *mut ToricFan,
) -> ToricStatus {
    guard(|| {
        let params: &[u64] = if len == 0 {
            &[]
        } else if a.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(a, len)
        };
        put(out, ToricFan(fan::kleinschmidt(d, params)?))
    })
}

/// Star subdivision at the cone with the given ray indices.
///
/// # Safety
/// `fan` must be a live handle, `cone` must point to `len` readable indices
/// and `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_star_subdivision(
    fan: *const ToricFan,
    cone: *const usize,
    len: usize,
    out: *mut *mut ToricFan,
) -> ToricStatus {
    guard(|| {
        let f = fan_ref(fan)?;
        if cone.is_null() && len > 0 {
            return Err(null());
        }
        let idx: &[usize] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(cone, len)
        };
        if idx.iter().any(|&i| i >= f.num_rays()) {
            return Err(Failure(ToricStatus::Malformed, "cone index out of range".into()));
        }
        let sigma = RaySet::from_indices(idx.iter().copied());
        if sigma.len() != idx.len() {
            return Err(Failure(ToricStatus::Malformed, "cone repeats a ray index".into()));
        }
        put(out, ToricFan(fan::star_subdivision(f, sigma)?))
    })
}

/// Ambient dimension, or 0 for NULL.
///
/// # Safety
/// `fan` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_dim(fan: *const ToricFan) -> usize {
    fan.as_ref().map_or(0, |f| f.0.dim())
}

/// Number of rays, or 0 for NULL.
///
/// # Safety
/// `fan` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_num_rays(fan: *const ToricFan) -> usize {
    fan.as_ref().map_or(0, |f| f.0.num_rays())
}

/// Canonical fan JSON.
///
/// # Safety
/// `fan` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_to_json(fan: *const ToricFan, out: *mut *mut c_char) -> ToricStatus {
    guard(|| put_string(out, fan_ref(fan)?.to_json()))
}

/// Validation report as JSON. Returns `VALIDATION` when the fan is not a
/// smooth fan; the report is written either way.
///
/// # Safety
/// `fan` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_validate(fan: *const ToricFan, out: *mut *mut c_char) -> ToricStatus {
    guard(|| {
        let report = fan::validate(fan_ref(fan)?);
        put_string(out, report.to_json())?;
        if report.is_valid_fan && report.is_smooth {
            Ok(())
        } else {
            Err(Failure(ToricStatus::Validation, report.summary()))
        }
    })
}

/// # Safety
/// `fan` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn toric_fan_free(fan: *mut ToricFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Homotopy report for a smooth complete fan.
///
/// # Safety
/// `fan` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_analyze(fan: *const ToricFan, out: *mut *mut ToricReport) -> ToricStatus {
    guard(|| put(out, ToricReport(homotopy::analyze(fan_ref(fan)?)?)))
}

/// π1 in the group-expression grammar.
///
/// # Safety
/// `report` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_report_pi1(report: *const ToricReport, out: *mut *mut c_char) -> ToricStatus {
    guard(|| put_string(out, report_ref(report)?.pi1.to_string()))
}

/// Group in degree `i`, or `MALFORMED` when the report leaves it undetermined.
///
/// # Safety
/// `report` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_report_group(
    report: *const ToricReport,
    i: usize,
    out: *mut *mut c_char,
) -> ToricStatus {
    guard(|| match report_ref(report)?.group_in_degree(i) {
        Some(g) => put_string(out, g.to_string()),
        None => Err(Failure(ToricStatus::Malformed, format!("pi_{i} is not determined"))),
    })
}

/// Picard rank, or 0 for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn toric_report_pic_rank(report: *const ToricReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.pic_rank)
}

/// Full report as pretty JSON.
///
/// # Safety
/// `report` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn toric_report_to_json(report: *const ToricReport, out: *mut *mut c_char) -> ToricStatus {
    guard(|| put_string(out, report_ref(report)?.to_json()))
}

/// # Safety
/// `report` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn toric_report_free(report: *mut ToricReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
