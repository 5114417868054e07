use std::ffi::{c_char, CStr, CString};
use std::ptr;

use bourbaki_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { bk_string_free(s) };
    out
}

fn last_error() -> String {
    let p = bk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn expand_classify_and_print() {
    let text = CString::new("empty").unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { bk_assembly_expand(text.as_ptr(), &mut a) }, BkStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bk_assembly_linear(a, &mut s) }, BkStatus::Ok);
    assert_eq!(
        take(s),
        "signs: tau not not not in tau not not in box box box\nlinks: (1 11) (1 12) (6 10)\n"
    );
    let mut c = BkClassification::Neither;
    assert_eq!(unsafe { bk_assembly_classify(a, &mut c) }, BkStatus::Ok);
    assert_eq!(c, BkClassification::Term);
    unsafe { bk_assembly_free(a) };
    assert!(bk_last_error().is_null());
}

#[test]
fn parse_error_sets_message() {
    let text = CString::new("(in x").unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { bk_assembly_expand(text.as_ptr(), &mut a) }, BkStatus::Parse);
    assert!(a.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_arguments() {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { bk_assembly_expand(ptr::null(), &mut a) }, BkStatus::NullPointer);
    let text = CString::new("x").unwrap();
    assert_eq!(unsafe { bk_assembly_expand(text.as_ptr(), ptr::null_mut()) }, BkStatus::NullPointer);
    let mut c = BkClassification::Term;
    assert_eq!(unsafe { bk_assembly_classify(ptr::null(), &mut c) }, BkStatus::NullPointer);
    unsafe {
        bk_assembly_free(ptr::null_mut());
        bk_hf_free(ptr::null_mut());
        bk_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8() {
    let bytes = [0xffu8, 0];
    let mut a = ptr::null_mut();
    let status = unsafe { bk_assembly_expand(bytes.as_ptr() as *const c_char, &mut a) };
    assert_eq!(status, BkStatus::InvalidUtf8);
}

#[test]
fn numeral_counts() {
    let (mut signs, mut links) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { bk_count_numeral(2, &mut signs, &mut links) }, BkStatus::Ok);
    assert_eq!((take(signs), take(links)), ("7527".to_string(), "1968".to_string()));
    let text = CString::new("(enum x y)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bk_count_expression(text.as_ptr(), &mut out) }, BkStatus::Ok);
    let json = take(out);
    assert!(json.contains("\"signs\":\"205\"") && json.contains("\"links\":\"50\""));
}

#[test]
fn hf_sets() {
    let text = CString::new("let a = 2; union(a, {a})").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bk_hf_eval(text.as_ptr(), &mut s) }, BkStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { bk_hf_len(s, &mut n) }, BkStatus::Ok);
    assert_eq!(n, 3);
    let mut ord = false;
    assert_eq!(unsafe { bk_hf_is_ordinal(s, &mut ord) }, BkStatus::Ok);
    assert!(ord);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bk_hf_to_string(s, true, &mut out) }, BkStatus::Ok);
    assert_eq!(take(out), "3");
    unsafe { bk_hf_free(s) };
}

#[test]
fn witnesses() {
    let cb = CString::new("E: 0 1\nF: 0 1\nf: 0->1 1->0\ng: 0->0 1->1\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bk_cantor_bernstein(cb.as_ptr(), false, &mut out) }, BkStatus::Ok);
    assert!(take(out).starts_with("A: 0\n"));
    let k = CString::new("B: 0 1\nA: (0)\n").unwrap();
    assert_eq!(unsafe { bk_koenig(k.as_ptr(), true, &mut out) }, BkStatus::Ok);
    assert!(take(out).contains("\"tuple\": [\n    \"1\"\n  ]"));
    let t = CString::new("powerset: 0\nmap: 0->1 1->1\n").unwrap();
    assert_eq!(unsafe { bk_tarski(t.as_ptr(), false, &mut out) }, BkStatus::Ok);
    assert!(take(out).starts_with("v: 1\nw: 1\n"));
    let bad = CString::new("E: 0 1\nF: 0\nf: 0->0 1->0\ng: 0->0\n").unwrap();
    assert_eq!(unsafe { bk_cantor_bernstein(bad.as_ptr(), false, &mut out) }, BkStatus::Domain);
    assert!(last_error().contains("not injective"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/bourbaki.h");
    for name in [
        "bk_last_error",
        "bk_string_free",
        "bk_assembly_expand",
        "bk_assembly_free",
        "bk_assembly_linear",
        "bk_assembly_classify",
        "bk_count_expression",
        "bk_count_numeral",
        "bk_hf_eval",
        "bk_hf_free",
        "bk_hf_len",
        "bk_hf_to_string",
        "bk_hf_is_ordinal",
        "bk_cantor_bernstein",
        "bk_tarski",
        "bk_koenig",
        "typedef struct BkAssembly BkAssembly;",
        "BK_STATUS_PANIC = 5",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
