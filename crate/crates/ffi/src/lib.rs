//! C ABI over `roommate-core`.
//!
//! Instances and verdicts are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`RmStatus`]; on failure the
//! message is available from [`rm_last_error`] on the same thread. Strings
//! handed out by this library must be released with [`rm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use roommate_core::error::Error;
use roommate_core::instance::{parse_instance, symmetrize, Instance};
use roommate_core::interventions::{clone, stabilize_by_removal};
use roommate_core::rational::exact;
use roommate_core::report::{RemovalReport, Report};
use roommate_core::roommate::DEFAULT_NODE_LIMIT;
use roommate_core::stability::{decide_stability_with_limit, StabilityVerdict};

/// Result code of every fallible call. The first four values match the exit
/// statuses of the command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmStatus {
    Ok = 0,
    /// Malformed or invalid input, or a precondition not met.
    Validation = 1,
    /// The integer search exhausted its node budget.
    ResourceExhausted = 2,
    Io = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

pub struct RmInstance {
    inner: Instance,
}

pub struct RmVerdict {
    instance: Instance,
    verdict: StabilityVerdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: RmStatus,
    message: String,
}

impl Failure {
    fn new(status: RmStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Io(_) => RmStatus::Io,
            Error::NodeLimit(_) => RmStatus::ResourceExhausted,
            _ => RmStatus::Validation,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard<F>(f: F) -> RmStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            RmStatus::Ok
        }
        Ok(Err(fail)) => {
            set_last_error(Some(fail.message));
            fail.status
        }
        Err(_) => {
            set_last_error(Some("internal panic".into()));
            RmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(RmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::new(RmStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(RmStatus::NullPointer, "null handle"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(RmStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(RmStatus::NullPointer, "null output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure::new(RmStatus::Validation, "string contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

/// Message describing the last failed call on this thread, or NULL after a
/// successful call. Valid until the next call into this library.
#[no_mangle]
pub extern "C" fn rm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_from_json(json: *const c_char, out: *mut *mut RmInstance) -> RmStatus {
    guard(|| {
        let inst = parse_instance(read_str(json)?)?;
        store(out, RmInstance { inner: inst })
    })
}

/// Reads and parses an instance file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_from_file(path: *const c_char, out: *mut *mut RmInstance) -> RmStatus {
    guard(|| {
        let path = read_str(path)?;
        let text = std::fs::read_to_string(path).map_err(|e| Failure::new(RmStatus::Io, format!("{path}: {e}")))?;
        let inst = parse_instance(&text)?;
        store(out, RmInstance { inner: inst })
    })
}

/// # Safety
/// `inst` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_free(inst: *mut RmInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of types, or 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_num_types(inst: *const RmInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.num_types())
}

/// Total number of individuals, or 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_population(inst: *const RmInstance) -> u64 {
    inst.as_ref().map_or(0, |i| i.inner.population())
}

/// Whether partners' roles are interchangeable. False for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_is_exchangeable(inst: *const RmInstance) -> bool {
    inst.as_ref().is_some_and(|i| i.inner.exchangeable)
}

/// Serializes the instance back to its JSON document form.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_to_json(inst: *const RmInstance, out: *mut *mut c_char) -> RmStatus {
    guard(|| store_string(out, deref(inst)?.inner.to_json()))
}

/// New instance with every count multiplied by `factor`.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_clone(
    inst: *const RmInstance,
    factor: u64,
    out: *mut *mut RmInstance,
) -> RmStatus {
    guard(|| {
        let c = clone(&deref(inst)?.inner, factor)?;
        store(out, RmInstance { inner: c })
    })
}

/// New exchangeable instance with surplus `max(Φ_xy, Φ_yx)`.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_instance_symmetrize(inst: *const RmInstance, out: *mut *mut RmInstance) -> RmStatus {
    guard(|| {
        let inst = deref(inst)?;
        inst.inner.ensure_valid()?;
        let (sym, _) = symmetrize(&inst.inner);
        store(out, RmInstance { inner: sym })
    })
}

/// Decides stability with the default search budget.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_decide_stability(inst: *const RmInstance, out: *mut *mut RmVerdict) -> RmStatus {
    rm_decide_stability_with_limit(inst, DEFAULT_NODE_LIMIT, out)
}

/// Decides stability, failing with `RM_STATUS_RESOURCE_EXHAUSTED` once the
/// integer search visits more than `node_limit` nodes.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_decide_stability_with_limit(
    inst: *const RmInstance,
    node_limit: u64,
    out: *mut *mut RmVerdict,
) -> RmStatus {
    guard(|| {
        let inst = deref(inst)?;
        let verdict = decide_stability_with_limit(&inst.inner, node_limit)?;
        store(out, RmVerdict { instance: inst.inner.clone(), verdict })
    })
}

/// # Safety
/// `v` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_verdict_free(v: *mut RmVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// False for a NULL handle.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rm_verdict_is_stable(v: *const RmVerdict) -> bool {
    v.as_ref().is_some_and(|v| v.verdict.stable)
}

/// Integer optimum as an exact `p/q` string.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_verdict_w_p(v: *const RmVerdict, out: *mut *mut c_char) -> RmStatus {
    guard(|| store_string(out, exact(&deref(v)?.verdict.w_p)))
}

/// Fractional optimum as an exact `p/q` string.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_verdict_w_f(v: *const RmVerdict, out: *mut *mut c_char) -> RmStatus {
    guard(|| store_string(out, exact(&deref(v)?.verdict.w_f)))
}

/// `w_f − w_p` as an exact `p/q` string.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_verdict_gap(v: *const RmVerdict, out: *mut *mut c_char) -> RmStatus {
    guard(|| store_string(out, exact(&deref(v)?.verdict.gap)))
}

/// Full stability report (same layout as the command-line tool, without
/// provenance).
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_verdict_to_json(v: *const RmVerdict, out: *mut *mut c_char) -> RmStatus {
    guard(|| {
        let v = deref(v)?;
        let report = Report::new("stability", &v.instance).with_verdict(&v.verdict);
        store_string(out, report.to_json())
    })
}

/// Removal plan (removed individuals, compensation, reduced verdict) as JSON.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_stabilize_to_json(inst: *const RmInstance, out: *mut *mut c_char) -> RmStatus {
    guard(|| {
        let plan = stabilize_by_removal(&deref(inst)?.inner)?;
        let json = serde_json::to_string_pretty(&RemovalReport::from(&plan))
            .map_err(|e| Failure::new(RmStatus::Validation, e.to_string()))?;
        store_string(out, json)
    })
}
