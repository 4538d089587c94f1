//! C ABI over `pteg-core`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! [`PtegStatus`]; on failure `pteg_last_error()` describes what went wrong.
//! Strings handed out by the library are released with `pteg_string_free`.
//! Numbers travel as JSON documents or decimal strings so that no precision
//! is lost.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pteg_core::pteg::{self, ConsistencyReport, Pteg, Semantics};
use pteg_core::{io, rational, Error, MaxPlusMatrix};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtegStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A document or number could not be parsed or failed validation.
    InvalidInput = 3,
    /// The net has no consistent trajectory, so no witness exists.
    Inconsistent = 4,
    /// The operation is undefined for this argument (for example a Kleene
    /// star of a matrix with `+inf` entries).
    Unsupported = 5,
    /// The library panicked; this is a bug.
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtegSemantics {
    Loose = 0,
    Strict = 1,
}

impl From<PtegSemantics> for Semantics {
    fn from(s: PtegSemantics) -> Self {
        match s {
            PtegSemantics::Loose => Semantics::Loose,
            PtegSemantics::Strict => Semantics::Strict,
        }
    }
}

/// A parsed P-time event graph.
pub struct PtegNet(Pteg);

/// The outcome of a consistency check.
pub struct PtegReport {
    net: Pteg,
    report: ConsistencyReport,
}

/// A square matrix over the extended reals.
pub struct PtegMatrix(MaxPlusMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn classify(e: &Error) -> PtegStatus {
    match e {
        Error::Inconsistent(_) => PtegStatus::Inconsistent,
        Error::PosInfEntry { .. } | Error::NotInNonegset { .. } | Error::IterationLimit { .. } => {
            PtegStatus::Unsupported
        }
        _ => PtegStatus::InvalidInput,
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), (PtegStatus, String)>) -> PtegStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PtegStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error: the library panicked".into());
            PtegStatus::Internal
        }
    }
}

fn core<T>(r: pteg_core::Result<T>) -> Result<T, (PtegStatus, String)> {
    r.map_err(|e| (classify(&e), e.to_string()))
}

fn null(what: &str) -> (PtegStatus, String) {
    (PtegStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PtegStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (PtegStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// # Safety
/// `r` must be null or point to an initialized `T`.
unsafe fn deref<'a, T>(r: *const T, what: &str) -> Result<&'a T, (PtegStatus, String)> {
    r.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (PtegStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (PtegStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

/// Message describing the last failed call on this thread, or null. Valid
/// until the next call into the library from the same thread; do not free.
#[no_mangle]
pub extern "C" fn pteg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn pteg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pteg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a net document (`{"transitions": [...], "places": [...]}`).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_net_from_json(json: *const c_char, out: *mut *mut PtegNet) -> PtegStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let net = core(io::parse_net(text))?;
        put(out, PtegNet(net))
    })
}

/// # Safety
/// `net` must be null or a handle from `pteg_net_from_json`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pteg_net_free(net: *mut PtegNet) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Number of transitions of `net`, 0 if `net` is null.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pteg_net_transition_count(net: *const PtegNet) -> usize {
    net.as_ref().map_or(0, |n| n.0.n())
}

/// Serializes `net` back to its JSON document.
///
/// # Safety
/// `net` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_net_to_json(net: *const PtegNet, out: *mut *mut c_char) -> PtegStatus {
    guard(|| {
        let net = deref(net, "net")?;
        put_string(out, io::net_to_json(&net.0))
    })
}

/// Decides consistency of `net` under `semantics`.
///
/// # Safety
/// `net` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_check(
    net: *const PtegNet,
    semantics: PtegSemantics,
    out: *mut *mut PtegReport,
) -> PtegStatus {
    guard(|| {
        let net = deref(net, "net")?;
        let report = core(pteg::check(&net.0, semantics.into()))?;
        put(
            out,
            PtegReport {
                net: net.0.clone(),
                report,
            },
        )
    })
}

/// # Safety
/// `report` must be null or a handle from `pteg_check`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pteg_report_free(report: *mut PtegReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Whether the checked net is consistent; false if `report` is null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pteg_report_is_consistent(report: *const PtegReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.consistent)
}

/// The report as JSON, with its certificate (1-based indices).
///
/// # Safety
/// `report` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_report_to_json(report: *const PtegReport, out: *mut *mut c_char) -> PtegStatus {
    guard(|| {
        let r = deref(report, "report")?;
        put_string(out, io::to_json_string(&io::check_report(&r.net, &r.report)))
    })
}

/// Earliest schedule of the first `length` firings as a trajectory
/// document. `t0` is a decimal or `p/q` string; null means 0. Returns
/// `PTEG_STATUS_INCONSISTENT` when no consistent trajectory exists.
///
/// # Safety
/// `net` must be a live handle, `t0` null or a nul-terminated string, and
/// `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_witness_json(
    net: *const PtegNet,
    semantics: PtegSemantics,
    length: usize,
    t0: *const c_char,
    out: *mut *mut c_char,
) -> PtegStatus {
    guard(|| {
        let net = deref(net, "net")?;
        let t0 = if t0.is_null() {
            rational::int(0)
        } else {
            core(rational::parse_rational(read_str(t0, "t0")?))?
        };
        let w = core(pteg::witness_prefix(&net.0, semantics.into(), length, &t0))?;
        put_string(out, io::trajectory_to_json(&w))
    })
}

/// Checks a trajectory document against `net`. Writes the number of
/// violations to `violations` and, when `details` is not null, a JSON array
/// describing them.
///
/// # Safety
/// `net` must be a live handle, `trajectory` a nul-terminated string,
/// `violations` valid for a write, and `details` null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_validate_json(
    net: *const PtegNet,
    semantics: PtegSemantics,
    trajectory: *const c_char,
    violations: *mut usize,
    details: *mut *mut c_char,
) -> PtegStatus {
    guard(|| {
        let net = deref(net, "net")?;
        let traj = core(io::parse_trajectory(read_str(trajectory, "trajectory")?))?;
        if violations.is_null() {
            return Err(null("violations"));
        }
        let found = core(pteg::validate_trajectory(&net.0, semantics.into(), &traj))?;
        *violations = found.len();
        if !details.is_null() {
            let list: Vec<_> = found.iter().map(io::violation_value).collect();
            put_string(details, io::to_json_string(&list))?;
        }
        Ok(())
    })
}

/// Parses a matrix document (`{"n": ..., "entries": [[...]]}`).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_matrix_from_json(json: *const c_char, out: *mut *mut PtegMatrix) -> PtegStatus {
    guard(|| {
        let m = core(io::parse_matrix(read_str(json, "json")?))?;
        put(out, PtegMatrix(m))
    })
}

/// # Safety
/// `m` must be null or a matrix handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pteg_matrix_free(m: *mut PtegMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of `m`, 0 if `m` is null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pteg_matrix_dim(m: *const PtegMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

/// Entry `(row, col)` (0-based) as a string: a rational, `inf` or `-inf`.
///
/// # Safety
/// `m` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_matrix_entry(
    m: *const PtegMatrix,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> PtegStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        if row >= m.0.n() || col >= m.0.n() {
            return Err((PtegStatus::InvalidInput, format!("entry ({row}, {col}) is out of range")));
        }
        put_string(out, m.0.get(row, col).to_string())
    })
}

/// Kleene star `A* = E ⊕ A ⊕ A² ⊕ ...`; entries reached through a positive
/// circuit are `+inf`. Matrices with `+inf` entries are rejected.
///
/// # Safety
/// `m` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_matrix_kleene_star(m: *const PtegMatrix, out: *mut *mut PtegMatrix) -> PtegStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        put(out, PtegMatrix(core(m.0.kleene_star())?))
    })
}

/// Writes whether `m` has no positive circuit, i.e. whether `x ≥ A ⊗ x`
/// has a real solution.
///
/// # Safety
/// `m` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_matrix_in_nonegset(m: *const PtegMatrix, out: *mut bool) -> PtegStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = core(m.0.in_nonegset())?.is_member();
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn pteg_matrix_to_json(m: *const PtegMatrix, out: *mut *mut c_char) -> PtegStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        put_string(out, io::matrix_to_json(&m.0))
    })
}
