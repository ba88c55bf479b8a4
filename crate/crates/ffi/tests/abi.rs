use setci_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn last_error() -> String {
    CStr::from_ptr(setci_last_error()).to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    setci_string_free(s);
    out
}

unsafe fn certify(ring: &str, ideal: &str) -> (SetciStatus, *mut SetciCertificate) {
    let mut r = ptr::null_mut();
    assert_eq!(setci_ring_parse(c(ring).as_ptr(), &mut r), SetciStatus::Ok);
    let mut i = ptr::null_mut();
    let s = setci_ideal_parse(r, c(ideal).as_ptr(), &mut i);
    setci_ring_free(r);
    if s != SetciStatus::Ok {
        return (s, ptr::null_mut());
    }
    let mut cert = ptr::null_mut();
    let s = setci_certify(i, &mut cert);
    setci_ideal_free(i);
    (s, cert)
}

#[test]
fn certify_verify_and_serialize() {
    unsafe {
        let (s, cert) = certify("GF(3)[t^2,t^3]", "ker(X -> t)");
        assert_eq!(s, SetciStatus::Ok);
        assert_eq!(setci_certificate_generator_count(cert), 1);
        assert_eq!(take(setci_certificate_generator(cert, 0)), "X^3 - t^3");
        assert!(setci_certificate_generator(cert, 1).is_null());
        assert_eq!(setci_certificate_verify(cert, 7), SetciStatus::Ok);

        let mut json = ptr::null_mut();
        assert_eq!(setci_certificate_to_json(cert, &mut json), SetciStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(setci_certificate_from_json(json, &mut back), SetciStatus::Ok);
        let mut json2 = ptr::null_mut();
        assert_eq!(setci_certificate_to_json(back, &mut json2), SetciStatus::Ok);
        assert_eq!(take(json), take(json2));
        setci_certificate_free(back);
        setci_certificate_free(cert);
    }
}

#[test]
fn heights_follow_the_shape() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(setci_ring_parse(c("ZZ").as_ptr(), &mut r), SetciStatus::Ok);
        for (spec, h) in [("ideal(0)", 0), ("ideal(7)", 1), ("ideal(2*X + 3)", 1), ("ideal(5; X^2 + 2)", 2)] {
            let mut i = ptr::null_mut();
            assert_eq!(setci_ideal_parse(r, c(spec).as_ptr(), &mut i), SetciStatus::Ok, "{spec}");
            assert_eq!(setci_ideal_height(i), h);
            setci_ideal_free(i);
        }
        setci_ring_free(r);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(setci_ring_parse(c("ZQ").as_ptr(), &mut r), SetciStatus::Usage);
        assert!(last_error().contains("ZQ"));
        assert_eq!(setci_ring_parse(ptr::null(), &mut r), SetciStatus::NullPointer);
        assert_eq!(setci_ring_parse(c("ZZ").as_ptr(), ptr::null_mut()), SetciStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(setci_ring_parse(bad.as_ptr().cast(), &mut r), SetciStatus::InvalidUtf8);

        let (s, _) = certify("ZZ", "ideal(6*X + 4)");
        assert_eq!(s, SetciStatus::Refuted);
        assert!(last_error().starts_with("not prime"));
        let (s, _) = certify("QQ[t^2,t^3]", "ker(X -> t)");
        assert_eq!(s, SetciStatus::Refuted);
        let (s, _) = certify("ZZ", "ideal(5; X^2+");
        assert_eq!(s, SetciStatus::Usage);
        assert!(last_error().contains("byte"));

        assert_eq!(setci_certificate_verify(ptr::null(), 0), SetciStatus::NullPointer);
        assert_eq!(setci_certificate_generator_count(ptr::null()), 0);
        setci_certificate_free(ptr::null_mut());
        setci_string_free(ptr::null_mut());
    }
}

#[test]
fn run_matches_cli_exit_codes() {
    unsafe {
        let run = |args: &[&str]| {
            let owned: Vec<CString> = args.iter().map(|a| c(a)).collect();
            let ptrs: Vec<*const std::ffi::c_char> = owned.iter().map(|a| a.as_ptr()).collect();
            let mut out = ptr::null_mut();
            let code = setci_run(ptrs.as_ptr(), ptrs.len(), &mut out);
            (code, take(out))
        };
        let (code, out) = run(&["certify", "--ring", "ZZ", "--ideal", "ideal(5; X^2+2)", "--format", "json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"height\": 2"));
        assert_eq!(run(&["verify", "--ring", "ZZ", "--ideal", "ideal(5)", "--gens", "2*X+3"]).0, 2);
        assert_eq!(run(&["obstruct", "--ring", "GF(3)[t^2,t^3]", "--adjoin", "t"]).0, 1);
        assert!(last_error().contains("Frobenius path"));
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/setci.h")).unwrap();
    for name in [
        "setci_ring_parse",
        "setci_ring_free",
        "setci_ideal_parse",
        "setci_ideal_height",
        "setci_ideal_free",
        "setci_certify",
        "setci_certificate_verify",
        "setci_certificate_generator_count",
        "setci_certificate_generator",
        "setci_certificate_to_json",
        "setci_certificate_from_json",
        "setci_certificate_free",
        "setci_run",
        "setci_last_error",
        "setci_string_free",
        "SETCI_STATUS_NOT_PROVEN = 3",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }
}
