//! C ABI for `stepwalk`.
//!
//! Objects cross the boundary as opaque handles; results come back as owned,
//! NUL-terminated JSON strings that the caller releases with [`sw_string_free`].
//! Every entry point returns an [`SwStatus`]. On failure the message is kept per
//! thread and can be read with [`sw_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stepwalk::classify::classify_constrained;
use stepwalk::enumerate::count_walks;
use stepwalk::job::{run_job, JobSpec};
use stepwalk::{ConstraintSpec, Error, LatticePoint, StepSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    BudgetExceeded = 4,
    Network = 5,
    Postcondition = 6,
    Io = 7,
    Panic = 8,
}

impl From<&Error> for SwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => SwStatus::BudgetExceeded,
            Error::Network(_) => SwStatus::Network,
            Error::Postcondition(_) | Error::Hierarchy(_) => SwStatus::Postcondition,
            Error::Io(_) => SwStatus::Io,
            _ => SwStatus::InvalidInput,
        }
    }
}

/// Opaque finite step set.
pub struct SwStepSet(StepSet);

/// Opaque walk constraint.
pub struct SwConstraint(ConstraintSpec);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn fail(status: SwStatus, msg: impl Into<String>) -> SwStatus {
    set_error(msg);
    status
}

/// Run `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SwStatus>) -> SwStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(SwStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: Error) -> SwStatus {
    let status = SwStatus::from(&e);
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SwStatus> {
    if p.is_null() {
        return Err(fail(SwStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SwStatus::InvalidUtf8, "string is not UTF-8"))
}

fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), SwStatus> {
    let text = serde_json::to_string(value).map_err(|e| fail(SwStatus::InvalidInput, e.to_string()))?;
    let c = CString::new(text).map_err(|_| fail(SwStatus::InvalidInput, "NUL in output"))?;
    // SAFETY: caller checked `out` for null
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn check_out<T>(out: *mut *mut T) -> Result<(), SwStatus> {
    if out.is_null() {
        return Err(fail(SwStatus::NullPointer, "null output pointer"));
    }
    // SAFETY: non-null, caller promises it is writable
    unsafe { *out = ptr::null_mut() };
    Ok(())
}

/// Library version as a static string. Do not free.
#[no_mangle]
pub extern "C" fn sw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn sw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a step set from `len` points stored as interleaved `x, y` pairs.
///
/// # Safety
/// `xy` must point to `2 * len` readable integers (it may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn sw_stepset_new(
    xy: *const i64,
    len: usize,
    out: *mut *mut SwStepSet,
) -> SwStatus {
    guard(|| {
        check_out(out)?;
        let coords: &[i64] = if len == 0 {
            &[]
        } else if xy.is_null() {
            return Err(fail(SwStatus::NullPointer, "null coordinates"));
        } else {
            std::slice::from_raw_parts(xy, 2 * len)
        };
        let pairs: Vec<(i64, i64)> = coords.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let set = StepSet::from_pairs(&pairs).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(SwStepSet(set)));
        Ok(())
    })
}

/// Build a step set from a JSON array of `[x, y]` pairs.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_stepset_from_json(
    json: *const c_char,
    out: *mut *mut SwStepSet,
) -> SwStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(json)?;
        let pairs: Vec<(i64, i64)> =
            serde_json::from_str(text).map_err(|e| fail(SwStatus::InvalidInput, e.to_string()))?;
        let set = StepSet::from_pairs(&pairs).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(SwStepSet(set)));
        Ok(())
    })
}

/// Number of distinct steps, or 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sw_stepset_len(set: *const SwStepSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.as_slice().len())
}

/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_stepset_free(set: *mut SwStepSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Parse a constraint: a name such as `quadrant` or `below-diagonal`,
/// `halfplanes:a,b;c,d`, or a JSON object.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_constraint_parse(
    text: *const c_char,
    out: *mut *mut SwConstraint,
) -> SwStatus {
    guard(|| {
        check_out(out)?;
        let c = stepwalk::cli::parse_constraint(read_str(text)?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(SwConstraint(c)));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_constraint_free(c: *mut SwConstraint) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

unsafe fn constraint_or_plane(c: *const SwConstraint) -> ConstraintSpec {
    c.as_ref().map_or(ConstraintSpec::FullPlane, |c| c.0.clone())
}

/// Classify `set` under `constraint` (null means the whole plane). Searches are cut
/// at `bound` steps. Writes a JSON report to `*out`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_classify(
    set: *const SwStepSet,
    constraint: *const SwConstraint,
    bound: usize,
    out: *mut *mut c_char,
) -> SwStatus {
    guard(|| {
        check_out(out)?;
        let set = set.as_ref().ok_or_else(|| fail(SwStatus::NullPointer, "null step set"))?;
        let c = constraint_or_plane(constraint);
        let report = classify_constrained(set.0.as_slice(), &c, bound).map_err(lib_err)?;
        write_json(out, &report)
    })
}

/// Count walks from the origin to `(x, y)`. `max_len` of 0 means no length bound.
/// Writes `{"kind": ..., "value": ...}` to `*out`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_count(
    set: *const SwStepSet,
    constraint: *const SwConstraint,
    x: i64,
    y: i64,
    max_len: usize,
    out: *mut *mut c_char,
) -> SwStatus {
    guard(|| {
        check_out(out)?;
        let set = set.as_ref().ok_or_else(|| fail(SwStatus::NullPointer, "null step set"))?;
        let c = constraint_or_plane(constraint);
        let limit = (max_len > 0).then_some(max_len);
        let n = count_walks(set.0.as_slice(), LatticePoint::new(x, y), &c, limit).map_err(lib_err)?;
        write_json(out, &n)
    })
}

/// Run a complete job given as JSON, the same format the command line accepts
/// with `--job`. Writes the JSON result to `*out`. Output files named in the job
/// are not written.
///
/// # Safety
/// `job` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_run_job(job: *const c_char, out: *mut *mut c_char) -> SwStatus {
    guard(|| {
        check_out(out)?;
        let spec = JobSpec::from_json(read_str(job)?).map_err(lib_err)?;
        let result = run_job(&spec).map_err(lib_err)?;
        write_json(out, &result.json)
    })
}
