//! C ABI over `li2poly`.
//!
//! Every fallible entry point returns an [`Li2Status`]. On failure a
//! description is kept per thread and can be read with
//! [`li2_last_error_message`]. Polytopes are opaque handles owned by the
//! caller and released with [`li2_polytope_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use li2poly::{closed_forms, constructors, faces, geometry, hvector, Error, HPolytope};

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Li2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Infeasible = 4,
    Unbounded = 5,
    NotPointed = 6,
    Redundant = 7,
    NotSimple = 8,
    CapExceeded = 9,
    Overflow = 10,
    BufferTooSmall = 11,
    InvalidUtf8 = 12,
    Panic = 13,
}

/// Opaque polytope handle.
pub struct Li2Polytope {
    inner: HPolytope,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn status_of(e: &Error) -> Li2Status {
    match e {
        Error::Parse { .. } => Li2Status::Parse,
        Error::InvalidArgument(_) | Error::Divisibility { .. } => Li2Status::InvalidArgument,
        Error::Infeasible => Li2Status::Infeasible,
        Error::Unbounded => Li2Status::Unbounded,
        Error::NotPointed => Li2Status::NotPointed,
        Error::Redundant(_) => Li2Status::Redundant,
        Error::NotSimple => Li2Status::NotSimple,
        Error::CapExceeded(_) => Li2Status::CapExceeded,
        Error::Overflow(_) | Error::RedrawLimit(_) => Li2Status::Overflow,
    }
}

fn fail(status: Li2Status, message: &str) -> Li2Status {
    set_last_error(message);
    status
}

/// Runs `body`, turning library errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Li2Status>) -> Li2Status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            Li2Status::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(Li2Status::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, Li2Status>;
}

impl<T> OrStatus<T> for li2poly::Result<T> {
    fn or_status(self) -> Result<T, Li2Status> {
        self.map_err(|e| fail(status_of(&e), &e.to_string()))
    }
}

unsafe fn handle<'a>(p: *const Li2Polytope) -> Result<&'a HPolytope, Li2Status> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| fail(Li2Status::NullPointer, "null polytope handle"))
}

unsafe fn emit(out: *mut *mut Li2Polytope, p: HPolytope) -> Result<(), Li2Status> {
    if out.is_null() {
        return Err(fail(Li2Status::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(Li2Polytope { inner: p }));
    Ok(())
}

/// Copies `values` into `buf` after narrowing to `i64`. `*len` always receives
/// the full length, so a call with `cap = 0` can size the buffer.
unsafe fn write_counts(values: &[i128], buf: *mut i64, cap: usize, len: *mut usize) -> Result<(), Li2Status> {
    if len.is_null() {
        return Err(fail(Li2Status::NullPointer, "null length pointer"));
    }
    *len = values.len();
    if cap < values.len() {
        return Err(fail(Li2Status::BufferTooSmall, &format!("buffer holds {cap}, need {}", values.len())));
    }
    if buf.is_null() {
        return Err(fail(Li2Status::NullPointer, "null buffer"));
    }
    for (i, &v) in values.iter().enumerate() {
        *buf.add(i) = i64::try_from(v).map_err(|_| fail(Li2Status::Overflow, "count does not fit in int64_t"))?;
    }
    Ok(())
}

/// Message for the most recent failure on this thread; empty after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn li2_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses an H-representation from a NUL-terminated string.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_parse(text: *const c_char, out: *mut *mut Li2Polytope) -> Li2Status {
    guard(|| {
        if text.is_null() {
            return Err(fail(Li2Status::NullPointer, "null text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|_| fail(Li2Status::InvalidUtf8, "text is not UTF-8"))?;
        emit(out, HPolytope::parse(text).or_status()?)
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_pstar(n: u32, d: u32, out: *mut *mut Li2Polytope) -> Li2Status {
    guard(|| emit(out, constructors::pstar(n as usize, d as usize).or_status()?))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_dual_cyclic(n: u32, d: u32, out: *mut *mut Li2Polytope) -> Li2Status {
    guard(|| emit(out, constructors::dual_cyclic(n as usize, d as usize).or_status()?))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_prism3(n: u32, out: *mut *mut Li2Polytope) -> Li2Status {
    guard(|| emit(out, constructors::prism3(n as usize).or_status()?))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_polygon(m: u32, out: *mut *mut Li2Polytope) -> Li2Status {
    guard(|| emit(out, constructors::convex_polygon(m as usize).or_status()?))
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_free(p: *mut Li2Polytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_dim(p: *const Li2Polytope) -> usize {
    p.as_ref().map_or(0, |h| h.inner.dim())
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_num_constraints(p: *const Li2Polytope) -> usize {
    p.as_ref().map_or(0, |h| h.inner.num_constraints())
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_is_bounded(p: *const Li2Polytope, out: *mut bool) -> Li2Status {
    guard(|| {
        let p = handle(p)?;
        if out.is_null() {
            return Err(fail(Li2Status::NullPointer, "null output pointer"));
        }
        *out = geometry::is_bounded(p);
        Ok(())
    })
}

/// Serializes to the H-representation text format. Release the result with
/// [`li2_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_to_hrep(p: *const Li2Polytope, out: *mut *mut c_char) -> Li2Status {
    guard(|| {
        let p = handle(p)?;
        if out.is_null() {
            return Err(fail(Li2Status::NullPointer, "null output pointer"));
        }
        let text = CString::new(p.to_hrep()).expect("serialized text has no NUL");
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn li2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Enumerates faces and writes `f_0 .. f_d` to `buf`.
///
/// # Safety
/// `p` must be a live handle, `buf` must hold `cap` values, `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_f_vector(
    p: *const Li2Polytope,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> Li2Status {
    guard(|| {
        let f = faces::f_vector(handle(p)?).or_status()?;
        write_counts(f.as_slice(), buf, cap, len)
    })
}

/// Indegree h-vector `h_0 .. h_d` under the objective drawn for `seed`.
///
/// # Safety
/// As for [`li2_polytope_f_vector`].
#[no_mangle]
pub unsafe extern "C" fn li2_polytope_h_vector(
    p: *const Li2Polytope,
    seed: u64,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> Li2Status {
    guard(|| {
        let h = hvector::indegree_hvector(handle(p)?, seed).or_status()?;
        write_counts(h.as_slice(), buf, cap, len)
    })
}

unsafe fn write_scalar(value: li2poly::Result<i128>, out: *mut i64) -> Result<(), Li2Status> {
    let value = value.or_status()?;
    if out.is_null() {
        return Err(fail(Li2Status::NullPointer, "null output pointer"));
    }
    *out = i64::try_from(value).map_err(|_| fail(Li2Status::Overflow, "count does not fit in int64_t"))?;
    Ok(())
}

/// Number of `k`-faces of the dual cyclic polytope `c*(n, d)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_fk_dual_cyclic(n: u32, d: u32, k: u32, out: *mut i64) -> Li2Status {
    guard(|| write_scalar(closed_forms::fk_dual_cyclic(n as usize, d as usize, k as usize), out))
}

/// Number of `k`-faces of `P*(n, d)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn li2_fk_pstar(n: u32, d: u32, k: u32, out: *mut i64) -> Li2Status {
    guard(|| write_scalar(closed_forms::fk_pstar(n as usize, d as usize, k as usize), out))
}
