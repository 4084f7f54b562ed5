//! C ABI over the `qminor` engine.
//!
//! Every fallible entry point returns a [`QmStatus`]. On anything other than
//! `QM_STATUS_OK` a message is stored per thread and can be read with
//! [`qm_last_error_message`] until the next failing call on that thread.
//! Strings handed out by this library must be released with
//! [`qm_string_free`]; relations with [`qm_relation_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qminor::commutation::{commute, Relation};
use qminor::minors::MinorSpec;
use qminor::rewrite::{congruent, normal_form};
use qminor::verify::verify_relation;
use qminor::{Error, Tensor};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    VerificationFailed = 5,
    Json = 6,
    Io = 7,
    Panic = 8,
}

/// Opaque handle to a generated or loaded relation.
pub struct QmRelation {
    inner: Relation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> QmStatus {
    match err {
        Error::Parse(_) => QmStatus::Parse,
        Error::VerificationFailed { .. } => QmStatus::VerificationFailed,
        Error::Json(_) => QmStatus::Json,
        Error::Io(_) => QmStatus::Io,
        _ => QmStatus::InvalidInput,
    }
}

struct Fail(QmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QmStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(QmStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn null_out(what: &str) -> Fail {
    Fail(QmStatus::NullPointer, format!("{what} is null"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

fn parse_tensor(s: &str) -> Result<Tensor, Fail> {
    s.parse::<Tensor>()
        .map_err(|e| Fail(QmStatus::Parse, e.to_string()))
}

/// Version string of the library. Static; do not free.
#[no_mangle]
pub extern "C" fn qm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Generates the relation between the minors `lhs` and `rhs` of the
/// `n x n` matrix, e.g. `"[3 4|1 3]"`, and stores a new handle in `*out`.
///
/// # Safety
/// `lhs` and `rhs` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_commute(
    n: u32,
    lhs: *const c_char,
    rhs: *const c_char,
    out: *mut *mut QmRelation,
) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let parse = |s: &str| {
            s.parse::<MinorSpec>()
                .map_err(|e| Fail(QmStatus::Parse, e.to_string()))
        };
        let a = parse(read_str(lhs, "lhs")?)?;
        let b = parse(read_str(rhs, "rhs")?)?;
        let inner = commute(&a, &b, n)?;
        *out = Box::into_raw(Box::new(QmRelation { inner }));
        Ok(())
    })
}

/// Loads a relation from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_relation_from_json(
    json: *const c_char,
    out: *mut *mut QmRelation,
) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let inner = Relation::from_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(QmRelation { inner }));
        Ok(())
    })
}

/// Releases a relation. NULL is accepted.
///
/// # Safety
/// `rel` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qm_relation_free(rel: *mut QmRelation) {
    if !rel.is_null() {
        drop(Box::from_raw(rel));
    }
}

/// Whether the relation was checked against the normal form when built.
/// Returns false for NULL.
///
/// # Safety
/// `rel` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qm_relation_verified(rel: *const QmRelation) -> bool {
    rel.as_ref().is_some_and(|r| r.inner.verified)
}

/// Number of terms on the right-hand side. Returns 0 for NULL.
///
/// # Safety
/// `rel` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qm_relation_term_count(rel: *const QmRelation) -> usize {
    rel.as_ref().map_or(0, |r| r.inner.terms.len())
}

enum Render {
    Plain,
    Json,
    Latex,
}

unsafe fn render(rel: *const QmRelation, out: *mut *mut c_char, how: Render) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let rel = &rel.as_ref().ok_or_else(|| null_out("rel"))?.inner;
        let s = match how {
            Render::Plain => rel.to_string(),
            Render::Json => rel.to_json(),
            Render::Latex => rel.to_latex(),
        };
        *out = into_c_string(s);
        Ok(())
    })
}

/// Renders the relation as plain text into `*out`.
///
/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_relation_to_string(
    rel: *const QmRelation,
    out: *mut *mut c_char,
) -> QmStatus {
    render(rel, out, Render::Plain)
}

/// Renders the relation as JSON into `*out`.
///
/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_relation_to_json(
    rel: *const QmRelation,
    out: *mut *mut c_char,
) -> QmStatus {
    render(rel, out, Render::Json)
}

/// Renders the relation as LaTeX into `*out`.
///
/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_relation_to_latex(
    rel: *const QmRelation,
    out: *mut *mut c_char,
) -> QmStatus {
    render(rel, out, Render::Latex)
}

/// Releases a string returned by this library. NULL is accepted.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Normal form of a tensor such as `"a21.a12 - q*a11.a22"`.
///
/// # Safety
/// `tensor` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_normal_form(tensor: *const c_char, out: *mut *mut c_char) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let t = parse_tensor(read_str(tensor, "tensor")?)?;
        *out = into_c_string(normal_form(&t).to_string());
        Ok(())
    })
}

/// Sets `*out` to whether the two tensors agree modulo the defining
/// relations.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_congruent(
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        let a = parse_tensor(read_str(a, "a")?)?;
        let b = parse_tensor(read_str(b, "b")?)?;
        *out = congruent(&a, &b);
        Ok(())
    })
}

/// Checks a relation given as JSON against the normal form; `*out` is true
/// when the residual vanishes.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_verify_json(json: *const c_char, out: *mut bool) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        let rel = Relation::from_json(read_str(json, "json")?)?;
        *out = verify_relation(&rel, rel.n).is_zero();
        Ok(())
    })
}
