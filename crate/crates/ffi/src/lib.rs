//! C ABI for `hypforms`.
//!
//! Forms cross the boundary as opaque `HypForm` handles. Every fallible
//! function returns a `HypStatus` and writes its result through an out
//! pointer; on failure the out pointer is untouched and `hyp_last_error`
//! describes the error for the calling thread. Strings returned to C are
//! owned by the caller and released with `hyp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypforms::asymptotics::{render_curves, RenderOptions};
use hypforms::certify::{is_hyperbolic, is_hyperbolic_polar};
use hypforms::families::{arnold, representatives};
use hypforms::index::classify;
use hypforms::parse::parse_form;
use hypforms::{BinaryForm, Error};

/// Opaque handle to an exact binary form.
pub struct HypForm(BinaryForm);

/// Result code of every fallible call. `Ok` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotHyperbolic = 5,
    Internal = 6,
    Panic = 7,
}

/// Component of a hyperbolic form.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypComponent {
    pub degree: usize,
    /// `2 - factor_count`.
    pub index: i64,
    /// Position of `index` in the admissible list, highest index first.
    pub component_rank: usize,
    /// Distinct real lines through the origin.
    pub factor_count: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    // interior NULs cannot cross into C
    let msg = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> HypStatus {
    match e {
        Error::Parse { .. } | Error::EmptyInput | Error::MixedDegree { .. } => {
            HypStatus::ParseError
        }
        Error::NotHyperbolic => HypStatus::NotHyperbolic,
        Error::Internal(_) => HypStatus::Internal,
        _ => HypStatus::InvalidArgument,
    }
}

/// Runs `body`, translating errors and panics into a status and the
/// thread's last error.
fn guard(body: impl FnOnce() -> Result<(), (HypStatus, String)>) -> HypStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HypStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside hypforms".into());
            HypStatus::Panic
        }
    }
}

fn lib<T>(r: hypforms::Result<T>) -> Result<T, (HypStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (HypStatus, String) {
    (HypStatus::NullPointer, format!("{what} is NULL"))
}

/// # Safety
/// `p` is NULL or valid for reads of `T`.
unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, (HypStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `p` is NULL or valid for writes of `T`.
unsafe fn put<T>(p: *mut T, v: T, what: &str) -> Result<(), (HypStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, (HypStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (HypStatus::Internal, "string contains NUL".into()))
}

/// Message of the last failed call on this thread, or NULL after a success.
/// Valid until the next `hyp_*` call on the same thread.
#[no_mangle]
pub extern "C" fn hyp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` is NULL or came from this library and was not freed before.
#[no_mangle]
pub unsafe extern "C" fn hyp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses text such as `x^3 - x*y^2` or `(x^2-y^2)*(x^4+y^4)`.
///
/// # Safety
/// `text` is NULL or a NUL-terminated string; `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_form_parse(text: *const c_char, out: *mut *mut HypForm) -> HypStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (HypStatus::InvalidUtf8, e.to_string()))?;
        let f = lib(parse_form(text))?;
        put(out, Box::into_raw(Box::new(HypForm(f))), "out")
    })
}

/// Releases a form. NULL is ignored.
///
/// # Safety
/// `form` is NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hyp_form_free(form: *mut HypForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Total degree of `form`.
///
/// # Safety
/// `form` is NULL or a live handle; `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_form_degree(form: *const HypForm, out: *mut usize) -> HypStatus {
    guard(|| put(out, get(form, "form")?.0.degree(), "out"))
}

/// Canonical text of `form`; free with `hyp_string_free`.
///
/// # Safety
/// `form` is NULL or a live handle; `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_form_to_string(
    form: *const HypForm,
    out: *mut *mut c_char,
) -> HypStatus {
    guard(|| {
        let s = into_c_string(get(form, "form")?.0.to_string())?;
        put(out, s, "out").inspect_err(|_| drop(CString::from_raw(s)))
    })
}

/// Exact Hessian certificate: `*out` is true iff the Hessian is negative
/// away from the origin.
///
/// # Safety
/// `form` is NULL or a live handle; `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_is_hyperbolic(form: *const HypForm, out: *mut bool) -> HypStatus {
    guard(|| {
        put(
            out,
            lib(is_hyperbolic(&get(form, "form")?.0))?.is_hyperbolic(),
            "out",
        )
    })
}

/// Exact polar-form certificate; agrees with `hyp_is_hyperbolic`.
///
/// # Safety
/// `form` is NULL or a live handle; `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_is_hyperbolic_polar(
    form: *const HypForm,
    out: *mut bool,
) -> HypStatus {
    guard(|| {
        put(
            out,
            lib(is_hyperbolic_polar(&get(form, "form")?.0))?.is_hyperbolic(),
            "out",
        )
    })
}

/// Component of a hyperbolic form; `HYP_STATUS_NOT_HYPERBOLIC` otherwise.
///
/// # Safety
/// `form` is NULL or a live handle; `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_classify(form: *const HypForm, out: *mut HypComponent) -> HypStatus {
    guard(|| {
        let r = lib(classify(&get(form, "form")?.0))?;
        let c = HypComponent {
            degree: r.degree,
            index: r.index,
            component_rank: r.component_rank,
            factor_count: r.factor_count,
        };
        put(out, c, "out")
    })
}

/// `Re (x + iy)^m (x^2 + y^2)^((degree - m) / 2)`, hyperbolic for
/// `m <= degree < m^2` with `degree - m` even.
///
/// # Safety
/// `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_arnold(degree: usize, m: usize, out: *mut *mut HypForm) -> HypStatus {
    guard(|| {
        let f = lib(arnold(degree, m))?.form;
        put(out, Box::into_raw(Box::new(HypForm(f))), "out")
    })
}

/// Number of components in degree `degree` (one representative each).
///
/// # Safety
/// `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_representative_count(degree: usize, out: *mut usize) -> HypStatus {
    guard(|| put(out, lib(representatives(degree))?.len(), "out"))
}

/// Representative of the component with rank `rank` in degree `degree`.
///
/// # Safety
/// `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_representative(
    degree: usize,
    rank: usize,
    out: *mut *mut HypForm,
) -> HypStatus {
    guard(|| {
        let reps = lib(representatives(degree))?;
        let n = reps.len();
        let m = reps.into_iter().nth(rank).ok_or_else(|| {
            (
                HypStatus::InvalidArgument,
                format!("rank {rank} >= {n} components"),
            )
        })?;
        put(out, Box::into_raw(Box::new(HypForm(m.form))), "out")
    })
}

/// SVG of the asymptotic curves of a hyperbolic form with default render
/// options; free with `hyp_string_free`.
///
/// # Safety
/// `form` is NULL or a live handle; `out` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hyp_render_svg(form: *const HypForm, out: *mut *mut c_char) -> HypStatus {
    guard(|| {
        let opts = RenderOptions::default();
        let svg = lib(render_curves(&get(form, "form")?.0, &opts))?.to_svg(opts.stride);
        let s = into_c_string(svg)?;
        put(out, s, "out").inspect_err(|_| drop(CString::from_raw(s)))
    })
}
