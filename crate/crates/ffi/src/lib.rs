//! C interface to `hallsod`.
//!
//! Every fallible call returns a [`HallsodStatus`]; on failure the message is
//! available from [`hallsod_last_error`] on the same thread. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`hallsod_string_free`]. Handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hallsod::cli::{load_quiver, parse_delta, parse_dims, parse_weight};
use hallsod::polytope::WPolytope;
use hallsod::rational::{fmt_q, parse_q};
use hallsod::shuffle::{parse_element, KernelMode, Point, ShuffleElement};
use hallsod::{pbw, standard_form, Error, Quiver};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HallsodStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownQuiver = 4,
    InvalidInput = 5,
    Pole = 6,
    Io = 7,
    Panic = 8,
}

/// A quiver. Opaque.
pub struct HallsodQuiver(Quiver);

/// A symmetric rational function in the shuffle algebra. Opaque.
pub struct HallsodElement(ShuffleElement);

/// Which kernel the shuffle product uses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HallsodKernel {
    Formal = 0,
    A2 = 1,
    Degenerate = 2,
}

impl From<HallsodKernel> for KernelMode {
    fn from(k: HallsodKernel) -> Self {
        match k {
            HallsodKernel::Formal => KernelMode::Formal,
            HallsodKernel::A2 => KernelMode::A2,
            HallsodKernel::Degenerate => KernelMode::Degenerate,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(HallsodStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => HallsodStatus::Parse,
            Error::UnknownQuiver(_) => HallsodStatus::UnknownQuiver,
            Error::Pole(_) => HallsodStatus::Pole,
            Error::Io(_) => HallsodStatus::Io,
            _ => HallsodStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HallsodStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HallsodStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HallsodStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HallsodStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HallsodStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(HallsodStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(HallsodStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(HallsodStatus::InvalidInput, "interior NUL".into()))?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hallsod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hallsod_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hallsod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a quiver by built-in name (`jordan`, `doubled-jordan`,
/// `tripled-jordan`) or JSON file path.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hallsod_quiver_load(name: *const c_char, out: *mut *mut HallsodQuiver) -> HallsodStatus {
    guard(|| {
        let q = load_quiver(text(name, "name")?)?;
        put(out, Box::into_raw(Box::new(HallsodQuiver(q))))
    })
}

/// Parses a quiver from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hallsod_quiver_from_json(json: *const c_char, out: *mut *mut HallsodQuiver) -> HallsodStatus {
    guard(|| {
        let q = Quiver::from_json(text(json, "json")?)?;
        put(out, Box::into_raw(Box::new(HallsodQuiver(q))))
    })
}

/// # Safety
/// `q` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hallsod_quiver_free(q: *mut HallsodQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of vertices of `q`.
///
/// # Safety
/// `q` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hallsod_quiver_vertex_count(q: *const HallsodQuiver, out: *mut usize) -> HallsodStatus {
    guard(|| put(out, deref(q, "quiver")?.0.vertex_count()))
}

/// r-invariant of `weight` (comma separated, `;` between vertex blocks) as
/// JSON `{"r": "p/q", "lambda": [...] | null}`.
///
/// # Safety
/// Strings must be NUL-terminated; `q` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hallsod_r_invariant(
    q: *const HallsodQuiver,
    dims: *const c_char,
    weight: *const c_char,
    out_json: *mut *mut c_char,
) -> HallsodStatus {
    guard(|| {
        let quiver = &deref(q, "quiver")?.0;
        let d = parse_dims(text(dims, "dims")?)?;
        let chi = parse_weight(text(weight, "weight")?, &d)?;
        let poly = WPolytope::new(quiver, &d)?;
        let r = poly.r_invariant(&chi)?;
        let lambda = if r > hallsod::Q::default() && chi.is_dominant(&d) {
            Some(poly.face_at(&chi, &r)?.coords().to_vec())
        } else {
            None
        };
        let v = serde_json::json!({ "r": fmt_q(&r), "lambda": lambda });
        put_string(out_json, v.to_string())
    })
}

/// Standard form of `chi + rho + delta * tau_d` as JSON.
///
/// # Safety
/// Strings must be NUL-terminated; `q` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hallsod_decompose(
    q: *const HallsodQuiver,
    dims: *const c_char,
    weight: *const c_char,
    delta: *const c_char,
    out_json: *mut *mut c_char,
) -> HallsodStatus {
    guard(|| {
        let quiver = &deref(q, "quiver")?.0;
        let d = parse_dims(text(dims, "dims")?)?;
        let chi = parse_weight(text(weight, "weight")?, &d)?;
        let delta = parse_delta(text(delta, "delta")?, &d)?;
        let form = standard_form::decompose(quiver, &d, &chi, &delta)?;
        put_string(out_json, form.to_json().to_string())
    })
}

/// Number of dominant weights of total `w` in the window of the tripled
/// Jordan quiver at dimension `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hallsod_window_count(d: u32, w: i64, out: *mut usize) -> HallsodStatus {
    guard(|| put(out, pbw::window_count(d, w)?))
}

/// Parses a shuffle element such as `"[2] z1 + z2"`.
///
/// # Safety
/// `s` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hallsod_element_parse(s: *const c_char, out: *mut *mut HallsodElement) -> HallsodStatus {
    guard(|| {
        let e = parse_element(text(s, "element")?)?;
        put(out, Box::into_raw(Box::new(HallsodElement(e))))
    })
}

/// # Safety
/// `e` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hallsod_element_free(e: *mut HallsodElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hallsod_element_degree(e: *const HallsodElement, out: *mut usize) -> HallsodStatus {
    guard(|| put(out, deref(e, "element")?.0.degree()))
}

/// Shuffle product `a * b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hallsod_element_mul(
    a: *const HallsodElement,
    b: *const HallsodElement,
    kernel: HallsodKernel,
    out: *mut *mut HallsodElement,
) -> HallsodStatus {
    guard(|| {
        let prod = deref(a, "a")?.0.mul(&deref(b, "b")?.0, kernel.into());
        put(out, Box::into_raw(Box::new(HallsodElement(prod))))
    })
}

/// Canonical text form, parseable by [`hallsod_element_parse`].
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hallsod_element_to_string(e: *const HallsodElement, out: *mut *mut c_char) -> HallsodStatus {
    guard(|| put_string(out, deref(e, "element")?.0.to_string()))
}

/// Exact value at `q1`, `q2` and comma-separated `z`, written as `"p/q"`.
///
/// # Safety
/// Strings must be NUL-terminated; `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hallsod_element_eval(
    e: *const HallsodElement,
    q1: *const c_char,
    q2: *const c_char,
    z: *const c_char,
    out: *mut *mut c_char,
) -> HallsodStatus {
    guard(|| {
        let e = &deref(e, "element")?.0;
        let z = text(z, "z")?;
        let zs = if z.trim().is_empty() {
            vec![]
        } else {
            z.split(',').map(|x| parse_q(x.trim())).collect::<hallsod::Result<Vec<_>>>()?
        };
        let point = Point::a2(parse_q(text(q1, "q1")?)?, parse_q(text(q2, "q2")?)?, zs);
        let v = e.eval(&point)?;
        put_string(out, fmt_q(&v))
    })
}
