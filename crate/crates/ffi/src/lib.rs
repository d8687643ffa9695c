//! C ABI over the `pipedream` library.
//!
//! Objects cross the boundary as opaque handles created by `pd_*_parse` or
//! `pd_*_new`-style calls and released with the matching `pd_*_free`.
//! Every fallible call returns a [`PdStatus`]; on failure a description is
//! available from [`pd_last_error`] until the next call on the same thread.
//! Strings returned through `char **` are owned by the caller and must be
//! released with [`pd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pipedream::degree::{psw_degree, rrw_degree};
use pipedream::moves::enumerate_pipes;
use pipedream::polynomial::{groth_bpd, schubert_bpd};
use pipedream::support::{sweep, Property, Status, SweepOptions};
use pipedream::{Bpd, Error, Permutation, SparsePoly};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidBpd = 4,
    NotVexillary = 5,
    OutOfRange = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// Opaque permutation handle.
pub struct PdPermutation(Permutation);

/// Opaque polynomial handle.
pub struct PdPolynomial(SparsePoly);

/// Opaque pipe dream handle.
pub struct PdBpd(Bpd);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PdStatus {
    match e {
        Error::EmptyPermutation
        | Error::ValueOutOfRange { .. }
        | Error::RepeatedValue { .. }
        | Error::Parse(_)
        | Error::Json(_)
        | Error::UnknownProperty(_) => PdStatus::Parse,
        Error::NotSquare { .. }
        | Error::UnknownTile { .. }
        | Error::BumpInInput { .. }
        | Error::Edge(_) => PdStatus::InvalidBpd,
        Error::NotVexillary(_) => PdStatus::NotVexillary,
        Error::OracleBound { .. } | Error::DegreeOutOfRange { .. } | Error::EmptyComponent(_) => {
            PdStatus::OutOfRange
        }
        Error::Io(_) => PdStatus::Internal,
    }
}

struct Fail(PdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(PdStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), Fail>>(body: F) -> PdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PdStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PdStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(PdStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(PdStatus::Internal, "interior nul".into()))?;
    write_out(out, c.into_raw())
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next `pd_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses "2,1,4,3" or "2143".
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_parse(
    text: *const c_char,
    out: *mut *mut PdPermutation,
) -> PdStatus {
    guard(|| {
        let p: Permutation = read_str(text, "text")?.parse()?;
        write_out(out, Box::into_raw(Box::new(PdPermutation(p))))
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_free(p: *mut PdPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Comma-separated one-line notation.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_to_string(
    p: *const PdPermutation,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| write_string(out, borrow(p, "permutation")?.0.to_string()))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_size(p: *const PdPermutation, out: *mut usize) -> PdStatus {
    guard(|| write_out(out, borrow(p, "permutation")?.0.n()))
}

/// Number of inversions.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_length(
    p: *const PdPermutation,
    out: *mut usize,
) -> PdStatus {
    guard(|| write_out(out, borrow(p, "permutation")?.0.length()))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_is_vexillary(
    p: *const PdPermutation,
    out: *mut bool,
) -> PdStatus {
    guard(|| write_out(out, borrow(p, "permutation")?.0.is_vexillary()))
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdCode {
    Lehmer = 0,
    Rajchgot = 1,
}

/// Copies a code into `buf`, which must hold at least n entries. `len`
/// receives n either way, so callers may size the buffer with a first
/// call.
///
/// # Safety
/// `p` must be a live handle; `buf` must hold `cap` entries (or be NULL
/// when `cap` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_code(
    p: *const PdPermutation,
    which: PdCode,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> PdStatus {
    guard(|| {
        let p = &borrow(p, "permutation")?.0;
        let code = match which {
            PdCode::Lehmer => p.lehmer_code(),
            PdCode::Rajchgot => p.rajchgot_code(),
        };
        write_out(len, code.len())?;
        if cap < code.len() {
            return Err(Fail(
                PdStatus::BufferTooSmall,
                format!("buffer holds {cap} entries, code needs {}", code.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(code.entries().as_ptr(), buf, code.len());
        Ok(())
    })
}

/// Degree of the Grothendieck polynomial from the Rajchgot code.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_psw_degree(p: *const PdPermutation, out: *mut usize) -> PdStatus {
    guard(|| write_out(out, psw_degree(&borrow(p, "permutation")?.0)))
}

/// Degree from the vexillary shape formula; `PD_STATUS_NOT_VEXILLARY`
/// otherwise.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_rrw_degree(p: *const PdPermutation, out: *mut usize) -> PdStatus {
    guard(|| write_out(out, rrw_degree(&borrow(p, "permutation")?.0)?))
}

/// Number of bumpless pipe dreams of the permutation.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_pipes_count(p: *const PdPermutation, out: *mut usize) -> PdStatus {
    guard(|| write_out(out, enumerate_pipes(&borrow(p, "permutation")?.0).len()))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_grothendieck(
    p: *const PdPermutation,
    out: *mut *mut PdPolynomial,
) -> PdStatus {
    guard(|| {
        let f = groth_bpd(&borrow(p, "permutation")?.0);
        write_out(out, Box::into_raw(Box::new(PdPolynomial(f))))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_schubert(
    p: *const PdPermutation,
    out: *mut *mut PdPolynomial,
) -> PdStatus {
    guard(|| {
        let f = schubert_bpd(&borrow(p, "permutation")?.0);
        write_out(out, Box::into_raw(Box::new(PdPolynomial(f))))
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pd_polynomial_free(f: *mut PdPolynomial) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Total degree; −1 for the zero polynomial.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_polynomial_degree(f: *const PdPolynomial, out: *mut i64) -> PdStatus {
    guard(|| write_out(out, borrow(f, "polynomial")?.0.degree()))
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_polynomial_term_count(
    f: *const PdPolynomial,
    out: *mut usize,
) -> PdStatus {
    guard(|| write_out(out, borrow(f, "polynomial")?.0.len()))
}

/// Text form, e.g. "x1 + x2 - x1*x2".
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_polynomial_to_string(
    f: *const PdPolynomial,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| write_string(out, borrow(f, "polynomial")?.0.to_string()))
}

/// JSON array of `{"coeff": int, "exp": [int]}` in graded-lex order.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_polynomial_to_json(
    f: *const PdPolynomial,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        let terms = borrow(f, "polynomial")?.0.to_json();
        let text =
            serde_json::to_string(&terms).map_err(|e| Fail(PdStatus::Internal, e.to_string()))?;
        write_string(out, text)
    })
}

/// Parses a pipe dream from ASCII rows or from `{"n":..,"rows":[..]}`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_bpd_parse(text: *const c_char, out: *mut *mut PdBpd) -> PdStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let b = if text.trim_start().starts_with('{') {
            Bpd::from_json(text)?
        } else {
            Bpd::parse_ascii(text)?
        };
        write_out(out, Box::into_raw(Box::new(PdBpd(b))))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_bpd_rothe(p: *const PdPermutation, out: *mut *mut PdBpd) -> PdStatus {
    guard(|| {
        let b = Bpd::rothe(&borrow(p, "permutation")?.0);
        write_out(out, Box::into_raw(Box::new(PdBpd(b))))
    })
}

/// # Safety
/// `b` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pd_bpd_free(b: *mut PdBpd) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_bpd_permutation(
    b: *const PdBpd,
    out: *mut *mut PdPermutation,
) -> PdStatus {
    guard(|| {
        let p = borrow(b, "pipe dream")?.0.permutation_of();
        write_out(out, Box::into_raw(Box::new(PdPermutation(p))))
    })
}

/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_bpd_is_reduced(b: *const PdBpd, out: *mut bool) -> PdStatus {
    guard(|| write_out(out, borrow(b, "pipe dream")?.0.is_reduced()))
}

/// ASCII rows, one per line; with `resolved`, redundant crossings are
/// drawn as bumps.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_bpd_render(
    b: *const PdBpd,
    resolved: bool,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        let b = &borrow(b, "pipe dream")?.0;
        let text = if resolved {
            b.resolve_to_bumps().to_ascii()
        } else {
            b.render_ascii()
        };
        write_string(out, text)
    })
}

/// Checks a named property ("elbow-bound", "up-by-one", ...) over S_n.
/// `failures` receives the number of permutations that violate it.
///
/// # Safety
/// `property` must be a NUL-terminated string; `failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_verify(
    property: *const c_char,
    n: usize,
    vexillary_only: bool,
    threads: usize,
    failures: *mut usize,
) -> PdStatus {
    guard(|| {
        let property: Property = read_str(property, "property")?.parse()?;
        if n == 0 {
            return Err(Fail(PdStatus::OutOfRange, "n must be positive".into()));
        }
        let opts = SweepOptions {
            n,
            vexillary_only,
            threads,
        };
        let reports = sweep(property, opts, &|_, _| {})?;
        let count = reports.iter().filter(|r| r.status == Status::Fail).count();
        write_out(failures, count)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> String {
        let out = CStr::from_ptr(s).to_str().unwrap().to_string();
        pd_string_free(s);
        out
    }

    #[test]
    fn status_mapping_is_total() {
        assert_eq!(
            status_of(&Error::NotVexillary("x".into())),
            PdStatus::NotVexillary
        );
        assert_eq!(status_of(&Error::Edge("x".into())), PdStatus::InvalidBpd);
        assert_eq!(status_of(&Error::EmptyPermutation), PdStatus::Parse);
    }

    #[test]
    fn guard_catches_panics() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, PdStatus::Internal);
        let msg = unsafe { CStr::from_ptr(pd_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
        assert_eq!(guard(|| Ok(())), PdStatus::Ok);
        assert!(pd_last_error().is_null());
    }

    #[test]
    fn permutation_round_trip() {
        unsafe {
            let mut p = ptr::null_mut();
            assert_eq!(
                pd_permutation_parse(cstr("2143").as_ptr(), &mut p),
                PdStatus::Ok
            );
            let mut s = ptr::null_mut();
            assert_eq!(pd_permutation_to_string(p, &mut s), PdStatus::Ok);
            assert_eq!(take(s), "2,1,4,3");
            let mut vex = true;
            assert_eq!(pd_permutation_is_vexillary(p, &mut vex), PdStatus::Ok);
            assert!(!vex);
            pd_permutation_free(p);
        }
    }
}
