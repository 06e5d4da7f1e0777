use std::ffi::{CStr, CString};
use std::ptr;

use zakinv_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = zak_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

const PSI1: &str = r#"{"pieces":[{"lo":"0","hi":"1","re":1}]}"#;
const PSI2: &str = r#"{"pieces":[{"lo":"0","hi":"1/2","re":1},{"lo":"3/2","hi":"2","re":1}]}"#;

fn spectrum(json: &str) -> *mut ZakSpectrum {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { zak_spectrum_from_json(c(json).as_ptr(), &mut s) },
        ZakStatus::Ok
    );
    s
}

#[test]
fn line_verdicts() {
    unsafe {
        let unit = spectrum(PSI1);
        let shifted = spectrum(PSI2);
        let mut inv = false;
        assert_eq!(
            zak_line_extra_invariance(shifted, 2, &mut inv),
            ZakStatus::Ok
        );
        assert!(inv);
        assert_eq!(
            zak_line_periodization_criterion(shifted, 2, &mut inv),
            ZakStatus::Ok
        );
        assert!(inv);
        assert!(zak_last_error_message().is_null());

        let psi1 =
            spectrum(r#"{"pieces":[{"lo":"0","hi":"1","re":1},{"lo":"3/2","hi":"2","re":1}]}"#);
        assert_eq!(zak_line_extra_invariance(psi1, 2, &mut inv), ZakStatus::Ok);
        assert!(!inv);

        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            zak_line_evaluate(unit, 2, 0.0, c("1/4").as_ptr(), &mut re, &mut im),
            ZakStatus::Ok
        );
        assert!((re - 1.0).abs() < 1e-14 && im.abs() < 1e-14);

        let mut json = ptr::null_mut();
        assert_eq!(
            zak_line_report_json(shifted, 2, 1e-9, &mut json),
            ZakStatus::Ok
        );
        let doc: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(doc["invariant"], true);
        assert_eq!(doc["N"], 2);
        zak_string_free(json);

        assert_eq!(
            zak_line_periodization_criterion(shifted, 1, &mut inv),
            ZakStatus::InvalidArgument
        );
        assert!(!last_error().is_empty());

        zak_spectrum_free(unit);
        zak_spectrum_free(shifted);
        zak_spectrum_free(psi1);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            zak_spectrum_from_json(c("{").as_ptr(), &mut s),
            ZakStatus::Parse
        );
        assert!(last_error().contains("parse"));
        assert_eq!(
            zak_spectrum_from_json(ptr::null(), &mut s),
            ZakStatus::NullPointer
        );
        assert_eq!(
            zak_spectrum_from_json(c(PSI1).as_ptr(), ptr::null_mut()),
            ZakStatus::NullPointer
        );

        let empty = spectrum(r#"{"pieces":[]}"#);
        let mut inv = false;
        assert_eq!(
            zak_line_extra_invariance(empty, 2, &mut inv),
            ZakStatus::EmptyGenerator
        );
        assert_eq!(
            zak_line_extra_invariance(ptr::null(), 2, &mut inv),
            ZakStatus::NullPointer
        );
        zak_spectrum_free(empty);

        let mut g = ptr::null_mut();
        assert_eq!(zak_group_parse(c("4x").as_ptr(), &mut g), ZakStatus::Parse);
        assert_eq!(
            zak_group_parse(c("8192").as_ptr(), &mut g),
            ZakStatus::InvalidArgument
        );
        zak_string_free(ptr::null_mut());
        zak_group_free(ptr::null_mut());
        assert_eq!(zak_group_order(ptr::null()), 0);
    }
}

unsafe fn group(spec: &str) -> *mut ZakGroup {
    let mut g = ptr::null_mut();
    assert_eq!(zak_group_parse(c(spec).as_ptr(), &mut g), ZakStatus::Ok);
    g
}

unsafe fn lattice(g: *const ZakGroup, gens: &str) -> *mut ZakLattice {
    let mut l = ptr::null_mut();
    assert_eq!(
        zak_lattice_parse(g, c(gens).as_ptr(), &mut l),
        ZakStatus::Ok
    );
    l
}

#[test]
fn group_verdicts_agree_with_oracle() {
    unsafe {
        let z4 = group("4");
        assert_eq!(zak_group_order(z4), 4);
        let k = lattice(z4, "(2)");
        let l = lattice(z4, "(1)");
        assert_eq!(zak_lattice_len(k), 2);

        let delta = [1.0, 0.0, 0.0, 0.0];
        let mut psi = ptr::null_mut();
        assert_eq!(
            zak_signal_new(z4, delta.as_ptr(), ptr::null(), 4, &mut psi),
            ZakStatus::Ok
        );
        let (mut zak, mut oracle, mut residual) = (true, true, -1.0);
        assert_eq!(
            zak_group_extra_invariance(psi, k, l, 1e-9, &mut zak),
            ZakStatus::Ok
        );
        assert_eq!(
            zak_group_oracle(psi, k, l, 1e-9, &mut oracle, &mut residual),
            ZakStatus::Ok
        );
        assert!(!zak && !oracle);
        assert!((residual - 1.0).abs() < 1e-12);

        let flat = [1.0; 4];
        let imag = [0.5; 4];
        let mut constant = ptr::null_mut();
        assert_eq!(
            zak_signal_new(z4, flat.as_ptr(), imag.as_ptr(), 4, &mut constant),
            ZakStatus::Ok
        );
        assert_eq!(
            zak_group_extra_invariance(constant, k, l, 1e-9, &mut zak),
            ZakStatus::Ok
        );
        assert_eq!(
            zak_group_oracle(constant, k, l, 1e-9, &mut oracle, ptr::null_mut()),
            ZakStatus::Ok
        );
        assert!(zak && oracle);

        let mut json = ptr::null_mut();
        assert_eq!(
            zak_group_report_json(constant, k, l, 1e-9, &mut json),
            ZakStatus::Ok
        );
        let doc: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(doc["invariant"], true);
        assert_eq!(doc["oracle_agrees"], true);
        zak_string_free(json);

        assert_eq!(
            zak_group_extra_invariance(psi, l, k, 1e-9, &mut zak),
            ZakStatus::NotNested
        );

        let mut bad = ptr::null_mut();
        assert_eq!(
            zak_signal_new(z4, delta.as_ptr(), ptr::null(), 3, &mut bad),
            ZakStatus::InvalidArgument
        );
        let nan = [f64::NAN; 4];
        assert_eq!(
            zak_signal_new(z4, nan.as_ptr(), ptr::null(), 4, &mut bad),
            ZakStatus::InvalidArgument
        );
        let zeros = [0.0; 4];
        let mut zero = ptr::null_mut();
        assert_eq!(
            zak_signal_new(z4, zeros.as_ptr(), ptr::null(), 4, &mut zero),
            ZakStatus::Ok
        );
        assert_eq!(
            zak_group_oracle(zero, k, l, 1e-9, &mut oracle, ptr::null_mut()),
            ZakStatus::EmptyGenerator
        );

        let z8 = group("8");
        let foreign = lattice(z8, "(4)");
        assert_eq!(
            zak_group_extra_invariance(psi, foreign, l, 1e-9, &mut zak),
            ZakStatus::InvalidArgument
        );
        assert!(last_error().contains("lattice K"));

        for p in [psi, constant, zero] {
            zak_signal_free(p);
        }
        for p in [k, l, foreign] {
            zak_lattice_free(p);
        }
        zak_group_free(z4);
        zak_group_free(z8);
    }
}

#[test]
fn version_matches_manifest() {
    let v = unsafe { CStr::from_ptr(zak_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
