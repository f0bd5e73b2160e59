//! C interface to `fanodist`.
//!
//! Matrices and forms are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`FdStatus`]; on failure a description is available from
//! [`fd_last_error`] until the next call on the same thread. Strings
//! returned through out-parameters must be released with
//! [`fd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fanodist::cohomology::{bott, dolgachev_h0, CohomologyQuery, WeightedSpace};
use fanodist::distribution::{class_symbolic, class_via_rank, form_from_skew};
use fanodist::skew::SkewMatrix;
use fanodist::{parse_form, Error, Form, Rational};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    NullPointer,
    InvalidUtf8,
    Parse,
    NotSkew,
    Dimension,
    VarcountMismatch,
    OddSize,
    ZeroMatrix,
    ZeroForm,
    InvalidWeights,
    Hypothesis,
    SizeLimit,
    Degenerate,
    InvalidArgument,
    Panic,
}

impl From<&Error> for FdStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::VarcountMismatch { .. } => FdStatus::VarcountMismatch,
            Error::Dimension(_) => FdStatus::Dimension,
            Error::NotSkew { .. } => FdStatus::NotSkew,
            Error::OddSize(_) => FdStatus::OddSize,
            Error::ZeroMatrix => FdStatus::ZeroMatrix,
            Error::ZeroForm => FdStatus::ZeroForm,
            Error::Parse { .. } => FdStatus::Parse,
            Error::InvalidWeights(_) => FdStatus::InvalidWeights,
            Error::Hypothesis(_) => FdStatus::Hypothesis,
            Error::SizeLimit(_) => FdStatus::SizeLimit,
            Error::Degenerate(_) => FdStatus::Degenerate,
            Error::InvalidArgument(_) => FdStatus::InvalidArgument,
        }
    }
}

/// Opaque skew-symmetric matrix.
pub struct FdSkewMatrix(SkewMatrix);

/// Opaque twisted differential form.
pub struct FdForm(Form);

/// Position of a skew matrix in the secant stratification.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FdStratum {
    pub rank: usize,
    pub class_k: usize,
    pub stratum: usize,
    pub vanished_pfaffian_size: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(FdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(FdStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FdStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FdStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FdStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            FdStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(FdStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s)
        .expect("library strings contain no nul")
        .into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a skew matrix from JSON (array of rows of rational strings or
/// integers).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_skew_from_json(
    json: *const c_char,
    out: *mut *mut FdSkewMatrix,
) -> FdStatus {
    guard(|| {
        let m = SkewMatrix::from_json(str_arg(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(FdSkewMatrix(m))), "out")
    })
}

/// Builds a skew matrix from `size * size` row-major integers.
///
/// # Safety
/// `entries` must point to `size * size` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fd_skew_from_ints(
    size: usize,
    entries: *const i64,
    out: *mut *mut FdSkewMatrix,
) -> FdStatus {
    guard(|| {
        if entries.is_null() && size > 0 {
            return Err(null("entries"));
        }
        let data = if size == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(entries, size * size)
        };
        let rows = data
            .chunks(size.max(1))
            .map(|row| {
                row.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let m = SkewMatrix::from_rows(rows)?;
        write_out(out, Box::into_raw(Box::new(FdSkewMatrix(m))), "out")
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_skew_free(m: *mut FdSkewMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_skew_size(m: *const FdSkewMatrix, out: *mut usize) -> FdStatus {
    guard(|| write_out(out, ref_arg(m, "matrix")?.0.size(), "out"))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_skew_rank(m: *const FdSkewMatrix, out: *mut usize) -> FdStatus {
    guard(|| write_out(out, ref_arg(m, "matrix")?.0.rank(), "out"))
}

/// Pfaffian as a rational string such as `"-3/7"`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_skew_pfaffian(
    m: *const FdSkewMatrix,
    out: *mut *mut c_char,
) -> FdStatus {
    guard(|| {
        let pf = ref_arg(m, "matrix")?.0.pfaffian()?;
        write_out(out, string_out(pf.to_string()), "out")
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_class_via_rank(
    m: *const FdSkewMatrix,
    out: *mut FdStratum,
) -> FdStatus {
    guard(|| {
        let r = class_via_rank(&ref_arg(m, "matrix")?.0)?;
        let s = FdStratum {
            rank: r.rank,
            class_k: r.class_k,
            stratum: r.stratum,
            vanished_pfaffian_size: r.vanished_pfaffian_size,
        };
        write_out(out, s, "out")
    })
}

/// `ω = Σ a_ij (z_i dz_j − z_j dz_i)`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_form_from_skew(
    m: *const FdSkewMatrix,
    out: *mut *mut FdForm,
) -> FdStatus {
    guard(|| {
        let w = form_from_skew(&ref_arg(m, "matrix")?.0);
        write_out(out, Box::into_raw(Box::new(FdForm(w))), "out")
    })
}

/// Parses a form in the text grammar, e.g. `z0 dz1 - z1 dz0`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_form_parse(
    text: *const c_char,
    dim: usize,
    out: *mut *mut FdForm,
) -> FdStatus {
    guard(|| {
        let w = parse_form(str_arg(text, "text")?, dim)?;
        write_out(out, Box::into_raw(Box::new(FdForm(w))), "out")
    })
}

/// # Safety
/// `w` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_form_free(w: *mut FdForm) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_form_to_string(w: *const FdForm, out: *mut *mut c_char) -> FdStatus {
    guard(|| write_out(out, string_out(ref_arg(w, "form")?.0.to_string()), "out"))
}

/// Class of a 1-form; `-1` for the zero form.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_form_class(w: *const FdForm, out: *mut i64) -> FdStatus {
    guard(|| {
        let class = class_symbolic(&ref_arg(w, "form")?.0)?.class();
        write_out(out, class.map_or(-1, |k| k as i64), "out")
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_form_wedge(
    a: *const FdForm,
    b: *const FdForm,
    out: *mut *mut FdForm,
) -> FdStatus {
    guard(|| {
        let w = ref_arg(a, "a")?.0.wedge(&ref_arg(b, "b")?.0)?;
        write_out(out, Box::into_raw(Box::new(FdForm(w))), "out")
    })
}

/// Exterior derivative.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_form_d(w: *const FdForm, out: *mut *mut FdForm) -> FdStatus {
    guard(|| {
        let d = ref_arg(w, "form")?.0.exterior_d();
        write_out(out, Box::into_raw(Box::new(FdForm(d))), "out")
    })
}

/// `h^p(Pⁿ, Ω^q(t))` as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_bott(
    n: i64,
    p: i64,
    q: i64,
    t: i64,
    out: *mut *mut c_char,
) -> FdStatus {
    guard(|| {
        let v = bott(n, CohomologyQuery::new(p, q, t)?)?.value;
        write_out(out, string_out(v.to_string()), "out")
    })
}

/// `h⁰(P(a), Ω̄^q(t))` as a decimal string.
///
/// # Safety
/// `weights` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fd_wps_h0(
    weights: *const u32,
    len: usize,
    q: i64,
    t: i64,
    out: *mut *mut c_char,
) -> FdStatus {
    guard(|| {
        if weights.is_null() {
            return Err(null("weights"));
        }
        let space = WeightedSpace::new(std::slice::from_raw_parts(weights, len).to_vec())?;
        let v = dolgachev_h0(&space, q, t)?.value;
        write_out(out, string_out(v.to_string()), "out")
    })
}
