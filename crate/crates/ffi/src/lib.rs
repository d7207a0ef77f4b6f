//! C ABI over the `fdfa` library.
//!
//! Families live behind an opaque [`FdfaFamily`] handle. Every call returns an
//! [`FdfaStatus`]; on failure `fdfa_last_error()` describes the problem. Strings
//! handed out by the library must be released with `fdfa_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fdfa::almost_saturation::AlmostStatus;
use fdfa::{
    check_almost_saturated, check_fdwa_saturated, check_regular, check_saturated, fdwa_to_nba, gen_family,
    parse_faf, serialize_document, serialize_faf, AnyFamily, Document, Error, ReferenceSet, Representation,
    RegularityStatus, SaturationMode,
};

/// Opaque family handle.
pub struct FdfaFamily {
    inner: AnyFamily,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdfaStatus {
    /// Success, or the checked property holds.
    Ok = 0,
    /// The checked property is refuted; a witness was written if requested.
    Refuted = 1,
    NullArgument = 2,
    InvalidUtf8 = 3,
    ParseError = 4,
    InvalidInput = 5,
    Precondition = 6,
    CapExceeded = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: FdfaStatus, msg: impl Into<String>) -> FdfaStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> FdfaStatus {
    let status = match e {
        Error::Parse { .. } => FdfaStatus::ParseError,
        Error::Precondition(_) => FdfaStatus::Precondition,
        Error::CapExceeded(_) => FdfaStatus::CapExceeded,
        Error::Input(_) | Error::Protocol(_) => FdfaStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

/// Run `f`, turning panics into `FdfaStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<FdfaStatus, FdfaStatus>) -> FdfaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(FdfaStatus::Panic, format!("internal error: {msg}"))
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, FdfaStatus> {
    if p.is_null() {
        return Err(fail(FdfaStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(FdfaStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn family_arg<'a>(p: *const FdfaFamily) -> Result<&'a AnyFamily, FdfaStatus> {
    if p.is_null() {
        return Err(fail(FdfaStatus::NullArgument, "family is null"));
    }
    Ok(&(*p).inner)
}

fn out_null<T>(p: *mut T, what: &str) -> Result<(), FdfaStatus> {
    if p.is_null() {
        Err(fail(FdfaStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// Store `s` in `*out` if `out` is non-null.
unsafe fn put_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        *out = CString::new(s).map_or(ptr::null_mut(), CString::into_raw);
    }
}

unsafe fn clear_string(out: *mut *mut c_char) {
    if !out.is_null() {
        *out = ptr::null_mut();
    }
}

fn to_fdfa(f: &AnyFamily) -> Result<fdfa::Fdfa, FdfaStatus> {
    match f {
        AnyFamily::Fdfa(f) => Ok(f.clone()),
        AnyFamily::Fdwa(w) => Ok(w.as_fdfa()),
        other => Err(fail(FdfaStatus::Precondition, format!("expected fdfa or fdwa, got {}", other.kind().name()))),
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn fdfa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fdfa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse FAF text into a new family handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fdfa_family_parse(text: *const c_char, out: *mut *mut FdfaFamily) -> FdfaStatus {
    guard(|| {
        out_null(out, "out")?;
        *out = ptr::null_mut();
        let text = str_arg(text, "text")?;
        let f = parse_faf(text).map_err(from_error)?;
        *out = Box::into_raw(Box::new(FdfaFamily { inner: f }));
        Ok(FdfaStatus::Ok)
    })
}

/// Build one of the named generator families.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fdfa_family_generate(name: *const c_char, n: usize, out: *mut *mut FdfaFamily) -> FdfaStatus {
    guard(|| {
        out_null(out, "out")?;
        *out = ptr::null_mut();
        let name = str_arg(name, "name")?;
        let f = gen_family(name, n).map_err(from_error)?;
        *out = Box::into_raw(Box::new(FdfaFamily { inner: f }));
        Ok(FdfaStatus::Ok)
    })
}

/// # Safety
/// `f` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fdfa_family_free(f: *mut FdfaFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Serialize to FAF text; free the result with `fdfa_string_free`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fdfa_family_serialize(f: *const FdfaFamily, out: *mut *mut c_char) -> FdfaStatus {
    guard(|| {
        out_null(out, "out")?;
        *out = ptr::null_mut();
        let f = family_arg(f)?;
        put_string(out, serialize_faf(f).map_err(from_error)?);
        Ok(FdfaStatus::Ok)
    })
}

/// Number of leading states and the largest progress automaton.
///
/// # Safety
/// `f` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fdfa_family_size(f: *const FdfaFamily, leading: *mut usize, progress: *mut usize) -> FdfaStatus {
    guard(|| {
        out_null(leading, "leading")?;
        out_null(progress, "progress")?;
        let (l, p) = family_arg(f)?.size();
        *leading = l;
        *progress = p;
        Ok(FdfaStatus::Ok)
    })
}

/// Whether the family accepts the lasso `(u, x)` under its own semantics
/// (normalized, or duo-normalized for duo families). Words use the family's
/// word syntax; the empty string is ε.
///
/// # Safety
/// `f` must be a live handle, `u` and `x` nul-terminated strings, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fdfa_family_accepts(
    f: *const FdfaFamily,
    u: *const c_char,
    x: *const c_char,
    out: *mut bool,
) -> FdfaStatus {
    guard(|| {
        out_null(out, "out")?;
        let f = family_arg(f)?;
        let al = f.alphabet();
        let u = al.parse(str_arg(u, "u")?).map_err(from_error)?;
        let x = al.parse(str_arg(x, "x")?).map_err(from_error)?;
        let r = Representation::new(u, x).map_err(from_error)?;
        *out = f.accepts(&r, ReferenceSet::Normalized);
        Ok(FdfaStatus::Ok)
    })
}

/// Saturation (`full` false) or full saturation (`full` true).
/// Returns `Ok` or `Refuted`; on refutation `*witness_json` (if non-null) receives
/// the counterexample as JSON.
///
/// # Safety
/// `f` must be a live handle; `witness_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn fdfa_check_saturated(
    f: *const FdfaFamily,
    full: bool,
    witness_json: *mut *mut c_char,
) -> FdfaStatus {
    guard(|| {
        clear_string(witness_json);
        let f = family_arg(f)?;
        let mode = if full { SaturationMode::FullySaturated } else { SaturationMode::Saturated };
        let v = check_saturated(&to_fdfa(f)?, mode);
        Ok(match v.witness {
            None => FdfaStatus::Ok,
            Some(c) => {
                put_string(witness_json, c.to_json(f.alphabet()).to_string());
                FdfaStatus::Refuted
            }
        })
    })
}

/// Saturation of an FDWA family.
///
/// # Safety
/// As for `fdfa_check_saturated`.
#[no_mangle]
pub unsafe extern "C" fn fdfa_check_fdwa_saturated(f: *const FdfaFamily, witness_json: *mut *mut c_char) -> FdfaStatus {
    guard(|| {
        clear_string(witness_json);
        let f = family_arg(f)?;
        let AnyFamily::Fdwa(w) = f else {
            return Err(fail(FdfaStatus::Precondition, format!("expected fdwa, got {}", f.kind().name())));
        };
        Ok(match check_fdwa_saturated(w).witness {
            None => FdfaStatus::Ok,
            Some(c) => {
                put_string(witness_json, c.to_json(f.alphabet()).to_string());
                FdfaStatus::Refuted
            }
        })
    })
}

/// Almost saturation, exploring at most `cap` transformations.
///
/// # Safety
/// As for `fdfa_check_saturated`.
#[no_mangle]
pub unsafe extern "C" fn fdfa_check_almost_saturated(
    f: *const FdfaFamily,
    cap: usize,
    witness_json: *mut *mut c_char,
) -> FdfaStatus {
    guard(|| {
        clear_string(witness_json);
        let f = family_arg(f)?;
        let v = check_almost_saturated(&to_fdfa(f)?, cap).map_err(from_error)?;
        Ok(match v.status {
            AlmostStatus::AlmostSaturated => FdfaStatus::Ok,
            AlmostStatus::CapExceeded => fail(FdfaStatus::CapExceeded, format!("cap of {cap} exceeded")),
            AlmostStatus::NotAlmostSaturated => {
                if let Some(w) = v.witness {
                    put_string(witness_json, w.as_counterexample().to_json(f.alphabet()).to_string());
                }
                FdfaStatus::Refuted
            }
        })
    })
}

/// UP-regularity of the normalized language; `Ok` means regular.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fdfa_check_regular(f: *const FdfaFamily, cap: usize) -> FdfaStatus {
    guard(|| {
        let f = family_arg(f)?;
        let v = check_regular(f, cap).map_err(from_error)?;
        Ok(match v.status {
            RegularityStatus::Regular => FdfaStatus::Ok,
            RegularityStatus::NotRegular => FdfaStatus::Refuted,
            RegularityStatus::CapExceeded => fail(FdfaStatus::CapExceeded, format!("cap of {cap} exceeded")),
        })
    })
}

/// Translate an FDWA family to an NBA, written as FAF text of kind `nba`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fdfa_fdwa_to_nba(f: *const FdfaFamily, out: *mut *mut c_char) -> FdfaStatus {
    guard(|| {
        out_null(out, "out")?;
        *out = ptr::null_mut();
        let f = family_arg(f)?;
        let AnyFamily::Fdwa(w) = f else {
            return Err(fail(FdfaStatus::Precondition, format!("expected fdwa, got {}", f.kind().name())));
        };
        put_string(out, serialize_document(&Document::Nba(fdwa_to_nba(w))).map_err(from_error)?);
        Ok(FdfaStatus::Ok)
    })
}
