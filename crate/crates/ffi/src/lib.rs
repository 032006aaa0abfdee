//! C ABI for `ucycle`.
//!
//! Every fallible function returns a [`UcStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`uc_last_error_message`] on the same thread until the next failing call.
//! Strings handed out are owned by the caller and released with
//! [`uc_string_free`]; handles are released with their matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ucycle::bounds::bound_summary;
use ucycle::cli::parse_inline_list;
use ucycle::enumerate::{exact_probability_with, ExactResult, ScanOptions};
use ucycle::universal::{construct, u_object_exists, UKind};
use ucycle::words::{Params, WordSet};
use ucycle::Error;

/// Status codes. Values 1 and 3 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UcStatus {
    Ok = 0,
    /// The word set has no u-cycle / u-word of the requested kind.
    NotUniversal = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    NullPointer = 4,
    /// An unexpected internal failure; the library state is unaffected.
    Internal = 5,
}

/// Values accepted for the `kind` arguments.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UcKind {
    Cycle = 0,
    Word = 1,
}

/// Opaque set of words of one `(n, k)`.
pub struct UcWordSet(WordSet);

/// Opaque result of an exhaustive probability computation.
pub struct UcExactResult(ExactResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Arg(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn remember(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> UcStatus {
    let (status, message) = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => return UcStatus::Ok,
        Ok(Err(Failure::Null(what))) => (UcStatus::NullPointer, format!("{what} is null")),
        Ok(Err(Failure::Arg(m))) => (UcStatus::InvalidArgument, m),
        Ok(Err(Failure::Lib(e))) => {
            let status = match e {
                Error::NotUniversal(_) => UcStatus::NotUniversal,
                Error::CapExceeded(_) => UcStatus::CapExceeded,
                _ => UcStatus::InvalidArgument,
            };
            (status, e.to_string())
        }
        Err(_) => (UcStatus::Internal, "internal error".to_string()),
    };
    remember(message);
    status
}

fn kind_of(kind: u32) -> Result<UKind, Failure> {
    match kind {
        0 => Ok(UKind::Cycle),
        1 => Ok(UKind::Word),
        other => Err(Failure::Arg(format!("unknown kind {other}; use 0 (cycle) or 1 (word)"))),
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(text: String) -> *mut c_char {
    CString::new(text).expect("library strings have no nul bytes").into_raw()
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// The message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn uc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn uc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// All `k^n` words.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn uc_wordset_full(n: u32, k: u32, out: *mut *mut UcWordSet) -> UcStatus {
    guard(|| {
        let set = WordSet::full(Params::new(n, k)?)?;
        put(out, boxed(UcWordSet(set)), "out")
    })
}

/// Words given by their integer codes (first letter most significant).
///
/// # Safety
/// `codes` must point to `len` readable values (or be null with `len == 0`);
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn uc_wordset_from_codes(
    n: u32,
    k: u32,
    codes: *const u64,
    len: usize,
    out: *mut *mut UcWordSet,
) -> UcStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else if codes.is_null() {
            return Err(Failure::Null("codes"));
        } else {
            std::slice::from_raw_parts(codes, len)
        };
        let set = WordSet::from_codes(Params::new(n, k)?, slice.iter().copied())?;
        put(out, boxed(UcWordSet(set)), "out")
    })
}

/// Words from text such as `"001,010,100"`. For `k > 10` words are written
/// as comma-separated letters and separated from each other by `;`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn uc_wordset_parse(n: u32, k: u32, text: *const c_char, out: *mut *mut UcWordSet) -> UcStatus {
    guard(|| {
        if text.is_null() {
            return Err(Failure::Null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure::Arg("text is not UTF-8".into()))?;
        let set = parse_inline_list(Params::new(n, k)?, text)?;
        put(out, boxed(UcWordSet(set)), "out")
    })
}

/// The words of `A^n` not in `set`.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn uc_wordset_complement(set: *const UcWordSet, out: *mut *mut UcWordSet) -> UcStatus {
    guard(|| {
        let set = &borrow(set, "set")?.0;
        let rest = WordSet::complement_of(set.params(), set)?;
        put(out, boxed(UcWordSet(rest)), "out")
    })
}

/// Number of words in `set`; 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn uc_wordset_len(set: *const UcWordSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `set` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn uc_wordset_free(set: *mut UcWordSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Whether `set` has a u-cycle (`kind` 0) or u-word (`kind` 1).
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn uc_exists(set: *const UcWordSet, kind: u32, out: *mut bool) -> UcStatus {
    guard(|| {
        let set = &borrow(set, "set")?.0;
        let exists = u_object_exists(kind_of(kind)?, set)?;
        put(out, exists, "out")
    })
}

/// Builds the canonical u-cycle or u-word. Returns `NotUniversal` with a
/// diagnostic in the last error message when none exists.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for writing. The string
/// written to `out` must be released with [`uc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn uc_construct(set: *const UcWordSet, kind: u32, out: *mut *mut c_char) -> UcStatus {
    guard(|| {
        let set = &borrow(set, "set")?.0;
        let witness = construct(kind_of(kind)?, set)?;
        put(out, c_string(witness.text()), "out")
    })
}

/// Exact probability by exhaustive scan. `workers == 0` uses the default
/// worker count (the `UCYCLE_WORKERS` variable, else all cores).
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn uc_exact_probability(
    n: u32,
    k: u32,
    s: u64,
    kind: u32,
    workers: u32,
    out: *mut *mut UcExactResult,
) -> UcStatus {
    guard(|| {
        let opts = if workers == 0 {
            ScanOptions::default()
        } else {
            ScanOptions::with_workers(workers as usize)
        };
        let r = exact_probability_with(n, k, s, kind_of(kind)?, &opts)?;
        put(out, boxed(UcExactResult(r)), "out")
    })
}

unsafe fn result_string(
    result: *const UcExactResult,
    out: *mut *mut c_char,
    f: impl FnOnce(&ExactResult) -> String,
) -> UcStatus {
    guard(|| {
        let r = &borrow(result, "result")?.0;
        put(out, c_string(f(r)), "out")
    })
}

/// Number of favorable removal sets, in decimal.
///
/// # Safety
/// `result` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn uc_exact_result_favorable(result: *const UcExactResult, out: *mut *mut c_char) -> UcStatus {
    result_string(result, out, |r| r.favorable.to_string())
}

/// Number of removal sets, in decimal.
///
/// # Safety
/// `result` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn uc_exact_result_total(result: *const UcExactResult, out: *mut *mut c_char) -> UcStatus {
    result_string(result, out, |r| r.total.to_string())
}

/// The probability as a reduced fraction `"p/q"` (or `"0"`, `"1"`).
///
/// # Safety
/// `result` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn uc_exact_result_probability(result: *const UcExactResult, out: *mut *mut c_char) -> UcStatus {
    result_string(result, out, |r| r.probability.to_string())
}

/// The result as a JSON object, identical to the command-line output.
///
/// # Safety
/// `result` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn uc_exact_result_json(result: *const UcExactResult, out: *mut *mut c_char) -> UcStatus {
    result_string(result, out, |r| serde_json::to_string(r).expect("result serializes"))
}

/// # Safety
/// `result` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn uc_exact_result_free(result: *mut UcExactResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Every closed-form bound and exact small-`s` value at `(n, k, s)` as JSON.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn uc_bounds_json(n: u32, k: u32, s: u64, out: *mut *mut c_char) -> UcStatus {
    guard(|| {
        let summary = bound_summary(n, k, s)?;
        put(out, c_string(serde_json::to_string(&summary).expect("summary serializes")), "out")
    })
}
