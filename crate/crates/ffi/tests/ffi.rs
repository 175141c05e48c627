use std::ffi::{CStr, CString};
use std::ptr;

use liexp_ffi::*;

fn last_error() -> String {
    let p = liexp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn run_summary_and_json() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(liexp_run(6, 2, 1, 10, true, &mut r), LiexpStatus::Ok);
        let mut s = LiexpSummary::default();
        assert_eq!(liexp_report_summary(r, &mut s), LiexpStatus::Ok);
        assert_eq!((s.dim, s.nilpotency_class, s.der_dim), (8, 5, 12));
        assert!(s.der_nilpotent && !s.commutant_der_nilpotent && s.formula_matches);
        assert_eq!(s.commutant_der_dim, 24);

        let mut len = 0;
        assert_eq!(liexp_report_lower_dims(r, ptr::null_mut(), 0, &mut len), LiexpStatus::Ok);
        assert_eq!(len, 6);
        let mut buf = vec![0usize; len];
        assert_eq!(liexp_report_lower_dims(r, buf.as_mut_ptr(), len, &mut len), LiexpStatus::Ok);
        assert_eq!(buf, [8, 6, 5, 3, 1, 0]);

        let mut json = ptr::null_mut();
        assert_eq!(liexp_report_to_json(r, &mut json), LiexpStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains("\"fingerprint\""));

        let mut back = ptr::null_mut();
        assert_eq!(liexp_report_from_json(json, &mut back), LiexpStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(liexp_report_to_json(back, &mut again), LiexpStatus::Ok);
        assert_eq!(CStr::from_ptr(again).to_str().unwrap(), text);

        liexp_string_free(json);
        liexp_string_free(again);
        liexp_report_free(back);
        liexp_report_free(r);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(liexp_run(0, 2, 1, 10, true, &mut r), LiexpStatus::InvalidArgument);
        assert!(r.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(liexp_run(6, 5, 1, 10, true, &mut r), LiexpStatus::InvalidArgument);
        assert_eq!(liexp_run(6, 2, 1, 10, true, ptr::null_mut()), LiexpStatus::NullPointer);
        assert_eq!(
            liexp_report_summary(ptr::null(), &mut LiexpSummary::default()),
            LiexpStatus::NullPointer
        );
        let garbage = CString::new("{not json").unwrap();
        assert_eq!(liexp_report_from_json(garbage.as_ptr(), &mut r), LiexpStatus::Parse);
        assert!(!last_error().is_empty());
        liexp_report_free(ptr::null_mut());
        liexp_string_free(ptr::null_mut());
        liexp_algebra_free(ptr::null_mut());
    }
}

#[test]
fn heisenberg_from_matrices() {
    // E12 and E23 in 3x3 generate the Heisenberg algebra.
    let mut entries = [0i64; 18];
    entries[1] = 1;
    entries[9 + 5] = 1;
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(liexp_algebra_generate(3, entries.as_ptr(), 2, &mut a), LiexpStatus::Ok);
        let mut dim = 0;
        assert_eq!(liexp_algebra_dim(a, &mut dim), LiexpStatus::Ok);
        assert_eq!(dim, 3);
        let mut class = 0;
        assert_eq!(liexp_algebra_class(a, &mut class), LiexpStatus::Ok);
        assert_eq!(class, 2);
        let mut dims = [0usize; 2];
        let mut len = 0;
        assert_eq!(liexp_algebra_lower_dims(a, dims.as_mut_ptr(), 2, &mut len), LiexpStatus::Ok);
        assert_eq!((len, dims), (3, [3, 1]));
        let (mut der, mut nil) = (0, true);
        assert_eq!(liexp_algebra_derivations(a, &mut der, &mut nil), LiexpStatus::Ok);
        assert_eq!((der, nil), (6, false));
        liexp_algebra_free(a);

        entries[0] = 1;
        assert_eq!(
            liexp_algebra_generate(3, entries.as_ptr(), 2, &mut a),
            LiexpStatus::InvalidArgument
        );
        assert_eq!(
            liexp_algebra_generate(3, entries.as_ptr(), 0, &mut a),
            LiexpStatus::InvalidArgument
        );
    }
}

#[test]
fn witt_values() {
    let mut buf = [0u64; 6];
    unsafe {
        assert_eq!(liexp_witt_dims(2, 6, buf.as_mut_ptr()), LiexpStatus::Ok);
    }
    assert_eq!(buf, [2, 1, 2, 3, 6, 9]);
    unsafe {
        assert_eq!(liexp_witt_dims(0, 3, buf.as_mut_ptr()), LiexpStatus::InvalidArgument);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(liexp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/liexp.h");
    for name in [
        "liexp_run",
        "liexp_report_free",
        "liexp_report_to_json",
        "liexp_report_from_json",
        "liexp_report_summary",
        "liexp_report_lower_dims",
        "liexp_algebra_generate",
        "liexp_algebra_free",
        "liexp_algebra_dim",
        "liexp_algebra_class",
        "liexp_algebra_lower_dims",
        "liexp_algebra_derivations",
        "liexp_witt_dims",
        "liexp_last_error",
        "liexp_string_free",
        "liexp_version",
        "LIEXP_STATUS_NULL_POINTER",
        "typedef struct LiexpReport LiexpReport",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
