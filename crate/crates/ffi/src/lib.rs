//! C ABI over `splitstar`.
//!
//! Covers are opaque `SsCover` handles. Strings returned to the caller are
//! owned by the caller and released with [`ss_string_free`]. Every call
//! returns an [`SsStatus`]; on failure [`ss_last_error_message`] describes
//! the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use splitstar::cli::CoverDocument;
use splitstar::dcc::{dcc_construct, DccRequest};
use splitstar::permutation::Permutation;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidRequest = 4,
    Internal = 5,
}

/// A constructed cover.
pub struct SsCover {
    doc: CoverDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Fail(SsStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SsStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(SsStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn give(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Fail(SsStatus::Internal, e.to_string()))
}

fn cycle(cover: &SsCover, which: u8) -> Result<&[Permutation], Fail> {
    match which {
        1 => Ok(&cover.doc.c1),
        2 => Ok(&cover.doc.c2),
        _ => Err(Fail(SsStatus::InvalidRequest, format!("cycle {which} is not 1 or 2"))),
    }
}

/// Constructs a cover of `S_n^2` with `|c1| = ell`, `u` in `c1` and `v` in
/// `c2`. On success `*out` owns a handle for [`ss_cover_free`].
///
/// # Safety
/// `u` and `v` must be null or NUL-terminated strings; `out` must be null
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn ss_dcc_construct(
    n: usize,
    u: *const c_char,
    v: *const c_char,
    ell: usize,
    out: *mut *mut SsCover,
) -> SsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(SsStatus::NullArgument, "out is null".into()));
        }
        *out = ptr::null_mut();
        let parse = |s: &str, what: &str| {
            Permutation::parse(s, n).map_err(|e| Fail(SsStatus::ParseError, format!("{what}: {e}")))
        };
        let u = parse(text(u, "u")?, "u")?;
        let v = parse(text(v, "v")?, "v")?;
        let req = DccRequest::new(n, u, v, ell).map_err(|e| Fail(SsStatus::InvalidRequest, e.to_string()))?;
        let (cover, trace) = dcc_construct(&req).map_err(|e| Fail(SsStatus::Internal, e.to_string()))?;
        let doc = CoverDocument::new(&req, &cover, &trace);
        *out = Box::into_raw(Box::new(SsCover { doc }));
        Ok(())
    })
}

/// Length of cycle `which` (1 or 2).
///
/// # Safety
/// `cover` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cover_len(cover: *const SsCover, which: u8, out: *mut usize) -> SsStatus {
    guard(|| {
        if cover.is_null() || out.is_null() {
            return Err(Fail(SsStatus::NullArgument, "cover or out is null".into()));
        }
        *out = cycle(&*cover, which)?.len();
        Ok(())
    })
}

/// Vertex `index` of cycle `which` as text, freed with [`ss_string_free`].
///
/// # Safety
/// `cover` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cover_vertex(
    cover: *const SsCover,
    which: u8,
    index: usize,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        if cover.is_null() || out.is_null() {
            return Err(Fail(SsStatus::NullArgument, "cover or out is null".into()));
        }
        *out = ptr::null_mut();
        let c = cycle(&*cover, which)?;
        let x = c.get(index).ok_or_else(|| {
            Fail(
                SsStatus::InvalidRequest,
                format!("index {index} out of range {}", c.len()),
            )
        })?;
        *out = give(x.to_string())?;
        Ok(())
    })
}

/// The cover as a JSON document, freed with [`ss_string_free`].
///
/// # Safety
/// `cover` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cover_to_json(cover: *const SsCover, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        if cover.is_null() || out.is_null() {
            return Err(Fail(SsStatus::NullArgument, "cover or out is null".into()));
        }
        *out = ptr::null_mut();
        let json = serde_json::to_string(&(*cover).doc).map_err(|e| Fail(SsStatus::Internal, e.to_string()))?;
        *out = give(json)?;
        Ok(())
    })
}

/// Validates a JSON cover document. `*ok` is 1 when it is a valid cover
/// and 0 otherwise; the violations are then in [`ss_last_error_message`].
///
/// # Safety
/// `json` must be null or a NUL-terminated string; `ok` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ss_validate_json(json: *const c_char, ok: *mut i32) -> SsStatus {
    let mut report = String::new();
    let status = guard(|| {
        if ok.is_null() {
            return Err(Fail(SsStatus::NullArgument, "ok is null".into()));
        }
        *ok = 0;
        let doc: CoverDocument =
            serde_json::from_str(text(json, "json")?).map_err(|e| Fail(SsStatus::ParseError, e.to_string()))?;
        if !(3..=splitstar::dcc::MAX_DCC_DIM).contains(&doc.n) {
            return Err(Fail(
                SsStatus::InvalidRequest,
                format!("dimension {} unsupported", doc.n),
            ));
        }
        let r = doc.validate();
        *ok = i32::from(r.ok);
        report = r.to_string();
        Ok(())
    });
    if status == SsStatus::Ok && !report.is_empty() && report != "ok" {
        set_error(report);
    }
    status
}

/// Releases a cover handle. Null is ignored.
///
/// # Safety
/// `cover` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_cover_free(cover: *mut SsCover) {
    if !cover.is_null() {
        drop(Box::from_raw(cover));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last call on this thread; empty after success. Valid
/// until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
