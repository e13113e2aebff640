use std::ffi::{CStr, CString};
use std::ptr;

use polykernel_ffi::*;

fn last_error() -> String {
    let p = pk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn legendre_and_series() {
    unsafe {
        let mut q = 0.0;
        assert_eq!(pk_legendre_q_hat(0.0, 0.0, 2.0, &mut q), PkStatus::PkOk);
        assert!((q - 0.5 * (3.0f64).ln()).abs() < 1e-14);

        let mut s = PkSeries {
            value: 0.0,
            terms_used: 0,
            last_term_magnitude: 0.0,
        };
        assert_eq!(
            pk_euler_kernel_chebyshev(1.0, 3.0, 0.0, 1e-12, 500, &mut s),
            PkStatus::PkOk
        );
        assert!((s.value - 1.0 / 3.0).abs() < 1e-11);
        assert!(s.terms_used > 1);

        assert_eq!(
            pk_euler_kernel_jacobi(-2.0, 0.5, 0.5, 2.0, 0.3, 1e-12, 100, &mut s),
            PkStatus::PkOk
        );
        assert_eq!(s.terms_used, 3);
        assert!((s.value - 1.7f64.powi(2)).abs() < 1e-12);

        assert_eq!(
            pk_multipole_power(3, -1.0, 1.0, 2.0, 0.3, 1e-14, 200, &mut s),
            PkStatus::PkOk
        );
        assert!((s.value - 3.8f64.powf(-0.5)).abs() < 1e-10);

        assert_eq!(
            pk_azimuthal_power(-1.0, 1.5, 1.0, 0.5, 1e-14, 200, &mut s),
            PkStatus::PkOk
        );
        assert!((s.value - (1.5 - 0.5f64.cos()).powf(-0.5)).abs() < 1e-10);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = PkSeries {
            value: 0.0,
            terms_used: 0,
            last_term_magnitude: 0.0,
        };
        assert_eq!(
            pk_azimuthal_power(0.0, 1.5, 1.0, 0.5, 1e-12, 200, &mut s),
            PkStatus::PkExclusion
        );
        assert!(last_error().contains("excluded"));
        assert_eq!(
            pk_euler_kernel_chebyshev(0.5, 1.01, 0.9, 1e-14, 3, &mut s),
            PkStatus::PkNoConvergence
        );
        assert_eq!(
            pk_euler_kernel_chebyshev(0.5, 0.5, 0.1, 1e-12, 100, &mut s),
            PkStatus::PkInvalidInput
        );
        assert_eq!(
            pk_legendre_q_hat(0.0, 0.0, 2.0, ptr::null_mut()),
            PkStatus::PkNullPointer
        );
    }
}

#[test]
fn tree_counts() {
    unsafe {
        let (mut b, mut a) = (0u64, 0u64);
        assert_eq!(pk_tree_counts(13, &mut b, &mut a), PkStatus::PkOk);
        assert_eq!((b, a), (208012, 983));
        assert_eq!(pk_tree_counts(200, &mut b, &mut a), PkStatus::PkOverflow);
        assert_eq!(pk_tree_counts(0, &mut b, &mut a), PkStatus::PkInvalidInput);
    }
}

#[test]
fn tree_handles() {
    unsafe {
        let spec = CString::new("b b a").unwrap();
        let mut t: *mut PkTree = ptr::null_mut();
        assert_eq!(pk_tree_parse(spec.as_ptr(), &mut t), PkStatus::PkOk);
        assert!(!t.is_null());
        assert_eq!(pk_tree_dimension(t), 4);

        let mut needed = 0usize;
        assert_eq!(
            pk_tree_format(t, ptr::null_mut(), 0, &mut needed),
            PkStatus::PkInvalidInput
        );
        assert_eq!(needed, 5);
        let mut buf = vec![0 as std::ffi::c_char; needed];
        assert_eq!(
            pk_tree_format(t, buf.as_mut_ptr(), buf.len(), &mut needed),
            PkStatus::PkOk
        );
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "b^2a");
        pk_tree_free(t);
        pk_tree_free(ptr::null_mut());

        let bad = CString::new("c a").unwrap();
        let mut t: *mut PkTree = ptr::null_mut();
        assert_eq!(pk_tree_parse(bad.as_ptr(), &mut t), PkStatus::PkInvalidInput);
        assert!(t.is_null());
        assert!(last_error().contains("position 3"));
        assert_eq!(pk_tree_dimension(ptr::null()), 0);
    }
}

#[test]
fn verify_handles() {
    unsafe {
        let a = [1.0472, 0.3];
        let b = [2.0944, 1.5];
        let mut rep: *mut PkReport = ptr::null_mut();
        let st = pk_verify(
            PkTheorem::PkBa,
            0,
            -1.0,
            0,
            1.0,
            2.0,
            a.as_ptr(),
            b.as_ptr(),
            2,
            ptr::null(),
            0,
            1e-9,
            &mut rep,
        );
        assert_eq!(st, PkStatus::PkOk);
        assert_eq!(pk_report_status(rep), PkStatus::PkOk);
        let (mut lhs, mut rhs, mut rel) = (0.0, 0.0, 1.0);
        assert_eq!(
            pk_report_values(rep, &mut lhs, &mut rhs, &mut rel, ptr::null_mut()),
            PkStatus::PkOk
        );
        assert!(rel < 1e-9 && (lhs - rhs).abs() < 1e-9 * lhs.abs());
        assert!(pk_report_chi(rep) > 1.0);
        pk_report_free(rep);

        let caps = [3usize];
        let mut rep: *mut PkReport = ptr::null_mut();
        let st = pk_verify(
            PkTheorem::PkBa,
            0,
            -1.0,
            0,
            1.0,
            2.0,
            a.as_ptr(),
            b.as_ptr(),
            2,
            caps.as_ptr(),
            1,
            1e-9,
            &mut rep,
        );
        assert_eq!(st, PkStatus::PkOk);
        assert_eq!(pk_report_status(rep), PkStatus::PkTruncationInsufficient);
        pk_report_free(rep);

        let h = [0.6, 0.9, 0.3, 1.0];
        let hp = [0.9, 0.5, 1.5, 2.6];
        let mut rep: *mut PkReport = ptr::null_mut();
        let st = pk_verify(
            PkTheorem::PkCa2,
            0,
            2.0,
            1,
            1.0,
            2.0,
            h.as_ptr(),
            hp.as_ptr(),
            3,
            ptr::null(),
            0,
            1e-6,
            &mut rep,
        );
        assert_eq!(st, PkStatus::PkExclusion);
        assert!(rep.is_null());
        assert_eq!(pk_report_status(ptr::null()), PkStatus::PkNullPointer);
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/polykernel.h")).unwrap();
    for name in [
        "pk_last_error",
        "pk_version",
        "pk_legendre_q_hat",
        "pk_euler_kernel_jacobi",
        "pk_tree_parse",
        "pk_tree_free",
        "pk_verify",
        "pk_report_free",
        "typedef struct PkTree PkTree",
        "typedef struct PkReport PkReport",
        "PK_TRUNCATION_INSUFFICIENT = 5",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
    let v = unsafe { CStr::from_ptr(pk_version()) }.to_str().unwrap().to_string();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
