use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hallsod_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { hallsod_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hallsod_last_error()) }.to_str().unwrap().to_owned()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn tripled() -> *mut HallsodQuiver {
    let mut q = ptr::null_mut();
    let name = c("tripled-jordan");
    assert_eq!(unsafe { hallsod_quiver_load(name.as_ptr(), &mut q) }, HallsodStatus::Ok);
    q
}

#[test]
fn r_invariant_and_decompose() {
    let q = tripled();
    let mut n = 0usize;
    assert_eq!(unsafe { hallsod_quiver_vertex_count(q, &mut n) }, HallsodStatus::Ok);
    assert_eq!(n, 1);
    let (d, w) = (c("2"), c("5,-5"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hallsod_r_invariant(q, d.as_ptr(), w.as_ptr(), &mut out) }, HallsodStatus::Ok);
    assert_eq!(take(out), r#"{"lambda":[-1,1],"r":"5/3"}"#);
    let delta = c("0");
    assert_eq!(
        unsafe { hallsod_decompose(q, d.as_ptr(), w.as_ptr(), delta.as_ptr(), &mut out) },
        HallsodStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["nodes"][0]["r"], "11/6");
    unsafe { hallsod_quiver_free(q) };
}

#[test]
fn error_codes() {
    let mut q = ptr::null_mut();
    let name = c("no-such-quiver");
    assert_eq!(unsafe { hallsod_quiver_load(name.as_ptr(), &mut q) }, HallsodStatus::UnknownQuiver);
    assert!(last_error().contains("no-such-quiver"));
    assert!(q.is_null());
    assert_eq!(unsafe { hallsod_quiver_load(ptr::null(), &mut q) }, HallsodStatus::NullPointer);

    let q = tripled();
    assert!(last_error().is_empty());
    let (d, w) = (c("2"), c("1,x"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hallsod_r_invariant(q, d.as_ptr(), w.as_ptr(), &mut out) }, HallsodStatus::Parse);
    let w = c("1");
    assert_eq!(unsafe { hallsod_r_invariant(q, d.as_ptr(), w.as_ptr(), &mut out) }, HallsodStatus::InvalidInput);
    assert!(out.is_null());
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { hallsod_r_invariant(q, bad.as_ptr().cast(), w.as_ptr(), &mut out) },
        HallsodStatus::InvalidUtf8
    );
    assert_eq!(unsafe { hallsod_quiver_vertex_count(ptr::null(), ptr::null_mut()) }, HallsodStatus::NullPointer);
    unsafe { hallsod_quiver_free(q) };
    unsafe { hallsod_quiver_free(ptr::null_mut()) };
}

#[test]
fn quiver_json() {
    let mut q = ptr::null_mut();
    let json = c(r#"{"vertices":["a","b"],"edges":[[0,1],[1,0]]}"#);
    assert_eq!(unsafe { hallsod_quiver_from_json(json.as_ptr(), &mut q) }, HallsodStatus::Ok);
    let mut n = 0usize;
    unsafe { hallsod_quiver_vertex_count(q, &mut n) };
    assert_eq!(n, 2);
    unsafe { hallsod_quiver_free(q) };
    let json = c("{");
    assert_eq!(unsafe { hallsod_quiver_from_json(json.as_ptr(), &mut q) }, HallsodStatus::Parse);
}

#[test]
fn window_counts() {
    let mut m = 0usize;
    for (w, expect) in [(0, 2), (1, 1), (-3, 1), (4, 2)] {
        assert_eq!(unsafe { hallsod_window_count(2, w, &mut m) }, HallsodStatus::Ok);
        assert_eq!(m, expect);
    }
    assert_eq!(unsafe { hallsod_window_count(0, 0, &mut m) }, HallsodStatus::InvalidInput);
}

#[test]
fn shuffle_elements() {
    let one = c("[1] 1");
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { hallsod_element_parse(one.as_ptr(), &mut a) }, HallsodStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { hallsod_element_mul(a, a, HallsodKernel::A2, &mut p) }, HallsodStatus::Ok);
    let mut n = 0usize;
    unsafe { hallsod_element_degree(p, &mut n) };
    assert_eq!(n, 2);
    let (q1, q2, z) = (c("2"), c("3"), c("5,1"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hallsod_element_eval(p, q1.as_ptr(), q2.as_ptr(), z.as_ptr(), &mut out) }, HallsodStatus::Ok);
    assert_eq!(take(out), "-12/29");
    let z = c("6,1");
    assert_eq!(unsafe { hallsod_element_eval(p, q1.as_ptr(), q2.as_ptr(), z.as_ptr(), &mut out) }, HallsodStatus::Pole);

    // text form parses back to the same element
    assert_eq!(unsafe { hallsod_element_to_string(p, &mut out) }, HallsodStatus::Ok);
    let text = take(out);
    assert!(text.starts_with("[2]"), "{text}");
    let asym = c("[2] z1");
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { hallsod_element_parse(asym.as_ptr(), &mut e) }, HallsodStatus::InvalidInput);
    unsafe {
        hallsod_element_free(p);
        hallsod_element_free(a);
        hallsod_element_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(hallsod_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
