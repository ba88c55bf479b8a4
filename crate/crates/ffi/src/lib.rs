//! C ABI over the certificate engine.
//!
//! Objects are opaque handles created by `*_parse`/`setci_certify` and
//! released with the matching `*_free`. Strings returned to the caller are
//! owned by the caller and released with `setci_string_free`. On failure,
//! `setci_last_error` describes the most recent error on the calling thread.

use setci::cli::{self, document};
use setci::ideals::{classify, Ambient};
use setci::rings::RingSpec;
use setci::stci::Certificate;
use setci::verify;
use setci::{Config, Error};
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of every fallible call. The first four values match the CLI
/// exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetciStatus {
    Ok = 0,
    Usage = 1,
    Refuted = 2,
    NotProven = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

pub struct SetciRing(RingSpec);

pub struct SetciIdeal(setci::ideals::PrimeIdeal);

pub struct SetciCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SetciStatus {
    set_error(&e.to_string());
    match e.outcome().exit_code() {
        2 => SetciStatus::Refuted,
        3 => SetciStatus::NotProven,
        _ => SetciStatus::Usage,
    }
}

enum Fail {
    Status(SetciStatus, String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SetciStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SetciStatus::Ok,
        Ok(Err(Fail::Core(e))) => status_of(&e),
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SetciStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(SetciStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(SetciStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::Status(SetciStatus::NullPointer, format!("{name} is null")))
}

fn out_ptr<T>(out: *mut *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail::Status(SetciStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul removed").into_raw()
}

/// Parse a ring spec such as `GF(3)[t^2,t^3]`.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn setci_ring_parse(spec: *const c_char, out: *mut *mut SetciRing) -> SetciStatus {
    guard(|| {
        out_ptr(out)?;
        let ring: RingSpec = str_arg(spec, "spec")?.parse()?;
        *out = Box::into_raw(Box::new(SetciRing(ring)));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from `setci_ring_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn setci_ring_free(ring: *mut SetciRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Parse and classify a prime of `R[X]`, e.g. `ideal(5; X^2+2)` or `ker(X -> t)`.
///
/// # Safety
/// `ring` must be a live handle, `spec` a valid string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn setci_ideal_parse(
    ring: *const SetciRing,
    spec: *const c_char,
    out: *mut *mut SetciIdeal,
) -> SetciStatus {
    guard(|| {
        out_ptr(out)?;
        let ring = handle(ring, "ring")?.0;
        let pres = cli::expr::parse_ideal(ring, Ambient::Poly, str_arg(spec, "spec")?)?;
        let p = classify(&pres, &Config::default())?;
        *out = Box::into_raw(Box::new(SetciIdeal(p)));
        Ok(())
    })
}

/// Height of a classified prime.
///
/// # Safety
/// `ideal` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn setci_ideal_height(ideal: *const SetciIdeal) -> u32 {
    ideal.as_ref().map_or(0, |i| i.0.height())
}

/// # Safety
/// `ideal` must come from `setci_ideal_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn setci_ideal_free(ideal: *mut SetciIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Build a certificate for a classified prime.
///
/// # Safety
/// `ideal` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn setci_certify(ideal: *const SetciIdeal, out: *mut *mut SetciCertificate) -> SetciStatus {
    guard(|| {
        out_ptr(out)?;
        let p = &handle(ideal, "ideal")?.0;
        let c = setci::stci::certify(p, &Config::default())?;
        *out = Box::into_raw(Box::new(SetciCertificate(c)));
        Ok(())
    })
}

/// Check `rad(generators) = target` and replay every witness, with spot
/// checks drawn from `seed`.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn setci_certificate_verify(cert: *const SetciCertificate, seed: u64) -> SetciStatus {
    guard(|| {
        let c = &handle(cert, "certificate")?.0;
        let cfg = Config { seed, ..Config::default() };
        verify::rad_equal(c, &cfg)?.replay(c)?;
        Ok(())
    })
}

/// # Safety
/// `cert` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn setci_certificate_generator_count(cert: *const SetciCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.generators.len())
}

/// Generator `index` as text, or null when out of range. Free with
/// `setci_string_free`.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn setci_certificate_generator(cert: *const SetciCertificate, index: usize) -> *mut c_char {
    match cert.as_ref().and_then(|c| c.0.generators.get(index)) {
        Some(g) => into_c(g.to_string()),
        None => ptr::null_mut(),
    }
}

/// Certificate document as JSON, without a verification section.
///
/// # Safety
/// `cert` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn setci_certificate_to_json(cert: *const SetciCertificate, out: *mut *mut c_char) -> SetciStatus {
    guard(|| {
        out_ptr(out)?;
        let c = &handle(cert, "certificate")?.0;
        *out = into_c(document::to_json(&document::certificate_doc(c, None, 0)));
        Ok(())
    })
}

/// Load a certificate document, reclassifying its target.
///
/// # Safety
/// `json` must be a valid string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn setci_certificate_from_json(json: *const c_char, out: *mut *mut SetciCertificate) -> SetciStatus {
    guard(|| {
        out_ptr(out)?;
        let raw = str_arg(json, "json")?;
        let doc = document::CertificateDoc::parse(raw)?;
        *out = Box::into_raw(Box::new(SetciCertificate(doc.to_certificate(&Config::default())?)));
        Ok(())
    })
}

/// # Safety
/// `cert` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn setci_certificate_free(cert: *mut SetciCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Run a CLI argument vector (without the program name). Returns the exit
/// code; standard output is stored in `out_stdout` when it is non-null.
///
/// # Safety
/// `argv` must point to `argc` valid strings.
#[no_mangle]
pub unsafe extern "C" fn setci_run(argv: *const *const c_char, argc: usize, out_stdout: *mut *mut c_char) -> c_int {
    let mut code = SetciStatus::Ok as c_int;
    let status = guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(Fail::Status(SetciStatus::NullPointer, "argv is null".into()));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argument")?.to_string());
        }
        let o = cli::main_with(&args);
        if !o.stderr.is_empty() {
            set_error(o.stderr.trim_end());
        }
        if !out_stdout.is_null() {
            *out_stdout = into_c(o.stdout);
        }
        code = o.code;
        Ok(())
    });
    if status == SetciStatus::Ok {
        code
    } else {
        status as c_int
    }
}

/// Message for the last failure on this thread. Valid until the next call
/// into the library from the same thread; do not free.
#[no_mangle]
pub extern "C" fn setci_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn setci_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
