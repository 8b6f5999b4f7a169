use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qmemory_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(qm_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn poly(family: u32, n: u32, basis: u32) -> *mut QmPolynomial {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qm_fidelity_poly_new(family, n, basis, &mut out) },
        QM_OK
    );
    assert!(!out.is_null());
    out
}

fn text(p: *const QmPolynomial) -> String {
    let mut len = 0usize;
    assert_eq!(
        unsafe { qm_poly_to_string(p, ptr::null_mut(), 0, &mut len) },
        QM_BUFFER_TOO_SMALL
    );
    let mut buf = vec![0 as c_char; len + 1];
    let mut written = 0usize;
    assert_eq!(
        unsafe { qm_poly_to_string(p, buf.as_mut_ptr(), buf.len(), &mut written) },
        QM_OK
    );
    assert_eq!(written, len);
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qm_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn fidelity_polynomial_round_trip() {
    let rc3 = poly(QM_FAMILY_RC, 3, QM_BASIS_BIT);
    let mut f = 0.0;
    assert_eq!(unsafe { qm_poly_eval(rc3, 0.5, 0.1, &mut f) }, QM_OK);
    assert!((f - 0.918).abs() < 1e-12);
    let mut c = 0i64;
    assert_eq!(unsafe { qm_poly_coeff(rc3, 0, 2, &mut c) }, QM_OK);
    assert_eq!(c, -3);

    let s = CString::new(text(rc3)).unwrap();
    let mut parsed = ptr::null_mut();
    assert_eq!(unsafe { qm_poly_parse(s.as_ptr(), &mut parsed) }, QM_OK);
    let mut fixture = ptr::null_mut();
    assert_eq!(
        unsafe { qm_fixture_new(QM_FAMILY_RC, 3, &mut fixture) },
        QM_OK
    );
    let rc4 = poly(QM_FAMILY_RC, 4, QM_BASIS_PHASE);
    for other in [parsed, fixture, rc4] {
        let mut eq = 0;
        assert_eq!(unsafe { qm_poly_equal(rc3, other, &mut eq) }, QM_OK);
        assert_eq!(eq, 1);
    }
    unsafe {
        qm_poly_free(rc3);
        qm_poly_free(parsed);
        qm_poly_free(fixture);
        qm_poly_free(rc4);
        qm_poly_free(ptr::null_mut());
    }
}

#[test]
fn dfs6_fixture_differs() {
    let derived = poly(QM_FAMILY_DFS, 6, QM_BASIS_BIT);
    let mut published = ptr::null_mut();
    assert_eq!(
        unsafe { qm_fixture_new(QM_FAMILY_DFS, 6, &mut published) },
        QM_OK
    );
    let mut eq = 1;
    assert_eq!(unsafe { qm_poly_equal(derived, published, &mut eq) }, QM_OK);
    assert_eq!(eq, 0);
    unsafe {
        qm_poly_free(derived);
        qm_poly_free(published);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qm_fidelity_poly_new(7, 3, QM_BASIS_BIT, &mut out) },
        QM_INVALID_ARGUMENT
    );
    assert!(last_error().contains("family"));
    assert_eq!(
        unsafe { qm_fidelity_poly_new(QM_FAMILY_RC, 11, QM_BASIS_BIT, &mut out) },
        QM_INVALID_ARGUMENT
    );
    assert_eq!(
        unsafe { qm_fidelity_poly_new(QM_FAMILY_RC, 3, QM_BASIS_BIT, ptr::null_mut()) },
        QM_NULL_POINTER
    );
    assert_eq!(
        unsafe { qm_fixture_new(QM_FAMILY_DFS, 7, &mut out) },
        QM_UNSUPPORTED
    );
    assert!(last_error().contains("n=7"));
    assert!(out.is_null());
    let bad = CString::new("1 + + mu").unwrap();
    assert_eq!(
        unsafe { qm_poly_parse(bad.as_ptr(), &mut out) },
        QM_INVALID_ARGUMENT
    );
    let mut f = 0.0;
    assert_eq!(
        unsafe { qm_poly_eval(ptr::null(), 0.1, 0.1, &mut f) },
        QM_NULL_POINTER
    );

    let p = poly(QM_FAMILY_DFS, 3, QM_BASIS_BIT);
    let mut buf = [0 as c_char; 4];
    let mut written = 0;
    assert_eq!(
        unsafe { qm_poly_to_string(p, buf.as_mut_ptr(), buf.len(), &mut written) },
        QM_BUFFER_TOO_SMALL
    );
    assert!(written > 3);
    assert_eq!(buf, [0; 4]);
    assert_eq!(unsafe { qm_poly_eval(p, 0.2, 0.1, &mut f) }, QM_OK);
    assert_eq!(last_error(), "");
    unsafe { qm_poly_free(p) };
}

#[test]
fn channel_weights() {
    let mut ch = ptr::null_mut();
    assert_eq!(
        unsafe { qm_channel_new(3, QM_BASIS_BIT, 1.0, 0.2, &mut ch) },
        QM_OK
    );
    let mut total = 0.0;
    for pattern in 0..8 {
        let mut w = -1.0;
        assert_eq!(unsafe { qm_channel_weight(ch, pattern, &mut w) }, QM_OK);
        let expected = match pattern {
            0 => 0.8,
            7 => 0.2,
            _ => 0.0,
        };
        assert!((w - expected).abs() < 1e-15, "pattern {pattern}: {w}");
        total += w;
    }
    assert!((total - 1.0).abs() < 1e-15);
    let mut w = 0.0;
    assert_eq!(
        unsafe { qm_channel_weight(ch, 8, &mut w) },
        QM_INVALID_ARGUMENT
    );
    unsafe { qm_channel_free(ch) };
    assert_eq!(
        unsafe { qm_channel_new(3, QM_BASIS_BIT, 1.5, 0.2, &mut ch) },
        QM_INVALID_ARGUMENT
    );
}

#[test]
fn thresholds() {
    let (mut mu, mut k) = (0.0, 0u32);
    assert_eq!(
        unsafe { qm_threshold(4, 0.45, 1e-9, &mut mu, &mut k) },
        QM_OK
    );
    assert!((mu - 0.34).abs() <= 0.01);
    assert_eq!(k, 1);
    assert_eq!(
        unsafe { qm_threshold(4, 0.40, 1e-9, &mut mu, ptr::null_mut()) },
        QM_OK
    );
    assert!((mu - 0.45).abs() <= 0.01);
    assert_eq!(
        unsafe { qm_threshold(4, 0.6, 1e-9, &mut mu, ptr::null_mut()) },
        QM_INVALID_ARGUMENT
    );
    assert_eq!(
        unsafe { qm_threshold(4, 0.3, 1e-9, ptr::null_mut(), ptr::null_mut()) },
        QM_NULL_POINTER
    );
}

#[test]
fn odd_size_has_no_crossing() {
    let mut mu = -1.0;
    assert_eq!(
        unsafe { qm_threshold(3, 0.3, 1e-9, &mut mu, ptr::null_mut()) },
        QM_NO_CROSSING
    );
    assert_eq!(mu, -1.0);
    assert!(last_error().contains("no crossing"));
}
