//! C interface to `bourbaki`.
//!
//! Every function returns a [`BkStatus`]. On failure the message is kept in a
//! thread-local slot readable with [`bk_last_error`]. Strings handed out by
//! the library are released with [`bk_string_free`], handles with their own
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bourbaki::count::{count_symbolic, numeral_counts};
use bourbaki::hf::{parse_set, HfSet};
use bourbaki::{expand, linearize, parse_expression, Assembly, Classification};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkClassification {
    Term = 0,
    Relation = 1,
    Neither = 2,
}

/// An expanded assembly.
pub struct BkAssembly(Assembly);

/// A hereditarily finite set.
pub struct BkHfSet(HfSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let mut bytes = message.into();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(BkStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            BkStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BkStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BkStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(BkStatus::InvalidUtf8, e.to_string()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(BkStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    out_ptr(out)?;
    let c = CString::new(s).map_err(|e| Failure(BkStatus::Domain, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn bk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse and expand an expression such as `(subset x y)`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_assembly_expand(text: *const c_char, out: *mut *mut BkAssembly) -> BkStatus {
    guard(|| {
        let text = read_str(text)?;
        out_ptr(out)?;
        let e = parse_expression(text).map_err(|e| Failure(BkStatus::Parse, e.to_string()))?;
        let a = expand(&e).map_err(|e| Failure(BkStatus::Domain, e.to_string()))?;
        *out = Box::into_raw(Box::new(BkAssembly(a)));
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a handle from [`bk_assembly_expand`].
#[no_mangle]
pub unsafe extern "C" fn bk_assembly_free(a: *mut BkAssembly) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

unsafe fn assembly<'a>(a: *const BkAssembly) -> Result<&'a Assembly, Failure> {
    a.as_ref()
        .map(|a| &a.0)
        .ok_or_else(|| Failure(BkStatus::NullPointer, "null assembly handle".into()))
}

/// The two-line linear form `signs: …` / `links: …`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_assembly_linear(a: *const BkAssembly, out: *mut *mut c_char) -> BkStatus {
    guard(|| write_string(out, linearize(assembly(a)?).to_string()))
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_assembly_classify(a: *const BkAssembly, out: *mut BkClassification) -> BkStatus {
    guard(|| {
        let c = assembly(a)?.classify();
        out_ptr(out)?;
        *out = match c {
            Classification::Term => BkClassification::Term,
            Classification::Relation => BkClassification::Relation,
            Classification::Neither => BkClassification::Neither,
        };
        Ok(())
    })
}

/// Counts of an expression as JSON with decimal-string numbers.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_count_expression(text: *const c_char, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let text = read_str(text)?;
        let e = parse_expression(text).map_err(|e| Failure(BkStatus::Parse, e.to_string()))?;
        let c = count_symbolic(&e).map_err(|e| Failure(BkStatus::Domain, e.to_string()))?;
        write_string(out, c.to_json().to_string())
    })
}

/// Sign and link counts of the numeral `n` as decimal strings.
///
/// # Safety
/// `signs` and `links` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bk_count_numeral(n: u64, signs: *mut *mut c_char, links: *mut *mut c_char) -> BkStatus {
    guard(|| {
        out_ptr(signs)?;
        out_ptr(links)?;
        let c = numeral_counts(n);
        write_string(signs, c.signs.to_string())?;
        write_string(links, c.links.to_string())
    })
}

/// Evaluate a set program whose value is a set.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_hf_eval(text: *const c_char, out: *mut *mut BkHfSet) -> BkStatus {
    guard(|| {
        let text = read_str(text)?;
        out_ptr(out)?;
        let s = parse_set(text).map_err(|e| Failure(BkStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(BkHfSet(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from [`bk_hf_eval`].
#[no_mangle]
pub unsafe extern "C" fn bk_hf_free(s: *mut BkHfSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn hf<'a>(s: *const BkHfSet) -> Result<&'a HfSet, Failure> {
    s.as_ref()
        .map(|s| &s.0)
        .ok_or_else(|| Failure(BkStatus::NullPointer, "null set handle".into()))
}

/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_hf_len(s: *const BkHfSet, out: *mut usize) -> BkStatus {
    guard(|| {
        let n = hf(s)?.len();
        out_ptr(out)?;
        *out = n;
        Ok(())
    })
}

/// Print with numerals in decimal when `compact` is nonzero.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_hf_to_string(s: *const BkHfSet, compact: bool, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let s = hf(s)?;
        write_string(out, if compact { s.compact().to_string() } else { s.to_string() })
    })
}

/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_hf_is_ordinal(s: *const BkHfSet, out: *mut bool) -> BkStatus {
    guard(|| {
        let v = bourbaki::ordinal::is_ordinal(hf(s)?);
        out_ptr(out)?;
        *out = v;
        Ok(())
    })
}

unsafe fn report(text: *const c_char, as_json: bool, out: *mut *mut c_char, f: fn(&str, bool) -> Result<String, String>) -> BkStatus {
    guard(|| {
        let text = read_str(text)?;
        out_ptr(out)?;
        let s = f(text, as_json).map_err(|e| Failure(BkStatus::Domain, e))?;
        write_string(out, s)
    })
}

/// Witness for an injection-pair instance (`E:`, `F:`, `f:`, `g:` lines).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_cantor_bernstein(text: *const c_char, as_json: bool, out: *mut *mut c_char) -> BkStatus {
    report(text, as_json, out, bourbaki::cli::cb_report)
}

/// Extremal fixed points of a monotone map instance.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_tarski(text: *const c_char, as_json: bool, out: *mut *mut c_char) -> BkStatus {
    report(text, as_json, out, bourbaki::cli::tarski_report)
}

/// Uncovered tuple of a König instance (`B:`, `A:` lines).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bk_koenig(text: *const c_char, as_json: bool, out: *mut *mut c_char) -> BkStatus {
    report(text, as_json, out, bourbaki::cli::koenig_report)
}
