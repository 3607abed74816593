//! C ABI over `nglie`.
//!
//! Specs live behind an opaque [`NgSpec`] handle. Every entry point returns
//! an [`NgStatus`]; text results (brackets, JSON reports) are written to an
//! out-pointer as heap strings that the caller releases with
//! [`ng_string_free`]. On any status other than `NG_OK` (and
//! `NG_VERIFY_FAILED`, which still produces a report), a message is
//! available from [`ng_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use nglie::family::{Family, WindowSpec};
use nglie::verify::TrialConfig;
use nglie::{iso, specfile, Error};

/// Result of every exported call. Values match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NgStatus {
    NgOk = 0,
    /// A law check ran and found a counterexample; the report is still
    /// returned.
    NgVerifyFailed = 1,
    /// The spec or group element violates a side condition.
    NgSpecViolation = 2,
    /// Malformed input: TOML, element syntax, unknown law or preset.
    NgParseError = 3,
    NgIoError = 4,
    NgNullPointer = 5,
    /// A Rust panic was caught at the boundary.
    NgPanic = 6,
}

/// Opaque handle to a constructed algebra family.
pub struct NgSpec {
    family: Family,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(NgStatus);

fn fail(status: NgStatus, msg: impl Into<String>) -> Failure {
    set_error(msg);
    Failure(status)
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Io(_) => NgStatus::NgIoError,
            Error::Shape(_) | Error::Singular(_) => NgStatus::NgSpecViolation,
            _ => NgStatus::NgParseError,
        };
        fail(status, e.to_string())
    }
}

/// Runs `f` with panics and failures mapped onto a status.
fn guard(f: impl FnOnce() -> Result<NgStatus, Failure>) -> NgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status))) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            NgStatus::NgPanic
        }
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(NgStatus::NgNullPointer, format!("`{what}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(NgStatus::NgParseError, format!("`{what}` is not UTF-8")))
}

/// # Safety
/// `p` must be null or a handle from `ng_spec_load`/`ng_spec_from_str`.
unsafe fn read_spec<'a>(p: *const NgSpec) -> Result<&'a NgSpec, Failure> {
    p.as_ref()
        .ok_or_else(|| fail(NgStatus::NgNullPointer, "`spec` is null"))
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(NgStatus::NgNullPointer, "output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| fail(NgStatus::NgPanic, "result contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

fn require_valid(spec: &NgSpec) -> Result<(), Failure> {
    let violations = spec.family.validate();
    if violations.is_empty() {
        return Ok(());
    }
    let text = violations
        .iter()
        .map(|v| format!("{}: {}", v.code, v.message))
        .collect::<Vec<_>>()
        .join("; ");
    Err(fail(NgStatus::NgSpecViolation, text))
}

fn publish(out: *mut *mut NgSpec, family: Family) -> Result<NgStatus, Failure> {
    if out.is_null() {
        return Err(fail(NgStatus::NgNullPointer, "output pointer is null"));
    }
    // SAFETY: checked non-null above; the caller promises it is writable.
    unsafe { *out = Box::into_raw(Box::new(NgSpec { family })) };
    Ok(NgStatus::NgOk)
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ng_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ng_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Loads a TOML spec file. The handle is written to `out` even when the
/// spec violates side conditions; use [`ng_spec_validate`] to inspect them.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ng_spec_load(path: *const c_char, out: *mut *mut NgSpec) -> NgStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        publish(out, specfile::load(Path::new(path))?)
    })
}

/// Builds a spec from TOML text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ng_spec_from_str(text: *const c_char, out: *mut *mut NgSpec) -> NgStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        publish(out, specfile::SpecFile::parse(text)?.build()?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `spec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ng_spec_free(spec: *mut NgSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Releases a string returned through an out-pointer. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ng_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the violations as a JSON array to `out`. Returns
/// `NG_SPEC_VIOLATION` when the array is non-empty.
///
/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ng_spec_validate(spec: *const NgSpec, out: *mut *mut c_char) -> NgStatus {
    guard(|| {
        let spec = read_spec(spec)?;
        let violations = spec.family.validate();
        let json = serde_json::to_string(&violations).expect("violations serialize");
        write_string(out, json)?;
        if violations.is_empty() {
            Ok(NgStatus::NgOk)
        } else {
            set_error(format!("{} violation(s)", violations.len()));
            Ok(NgStatus::NgSpecViolation)
        }
    })
}

/// Writes the canonical text of `[left, right]` to `out`.
///
/// # Safety
/// `spec` must be a live handle, `left`/`right` NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ng_bracket(
    spec: *const NgSpec,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> NgStatus {
    guard(|| {
        let spec = read_spec(spec)?;
        let (left, right) = (read_str(left, "left")?, read_str(right, "right")?);
        require_valid(spec)?;
        write_string(out, spec.family.bracket_text(left, right)?)?;
        Ok(NgStatus::NgOk)
    })
}

/// Runs a seeded law check with the default sampling budget and writes the
/// JSON report to `out`.
///
/// # Safety
/// `spec` must be a live handle, `law` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ng_verify(
    spec: *const NgSpec,
    law: *const c_char,
    seed: u64,
    trials: usize,
    out: *mut *mut c_char,
) -> NgStatus {
    guard(|| {
        let spec = read_spec(spec)?;
        let law = read_str(law, "law")?;
        require_valid(spec)?;
        let report = spec.family.verify(law, &TrialConfig::new(seed, trials))?;
        write_string(out, report.to_json())?;
        if report.passed {
            Ok(NgStatus::NgOk)
        } else {
            set_error(format!("law `{law}` failed"));
            Ok(NgStatus::NgVerifyFailed)
        }
    })
}

/// Writes structure constants over the monomial window as JSON.
///
/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ng_export_sc(
    spec: *const NgSpec,
    gen_bound: i64,
    nat_bound: u32,
    out: *mut *mut c_char,
) -> NgStatus {
    guard(|| {
        let spec = read_spec(spec)?;
        require_valid(spec)?;
        let window = WindowSpec {
            coeff_bound: gen_bound,
            nat_bound,
        };
        write_string(out, spec.family.export_sc(window)?.to_json())?;
        Ok(NgStatus::NgOk)
    })
}

/// Applies the group element (TOML text) to a lattice (TOML text) and
/// writes the JSON report; `target` may be null.
///
/// # Safety
/// `group`/`gamma` must be NUL-terminated, `target` null or NUL-terminated,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ng_iso_act(
    group: *const c_char,
    gamma: *const c_char,
    target: *const c_char,
    out: *mut *mut c_char,
) -> NgStatus {
    guard(|| {
        let g = iso::parse_group(read_str(group, "group")?)?;
        let lattice = iso::parse_lattice(read_str(gamma, "gamma")?)?;
        let target = if target.is_null() {
            None
        } else {
            Some(iso::parse_lattice(read_str(target, "target")?)?)
        };
        let report = iso::iso_act(&g, &lattice, target.as_ref())?;
        write_string(out, serde_json::to_string(&report).expect("reports serialize"))?;
        Ok(NgStatus::NgOk)
    })
}
