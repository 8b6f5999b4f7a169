//! C ABI over `qmemory`.
//!
//! Every function returns a `QmStatus`. Results are written through out
//! pointers, and on failure `qm_last_error` describes what went wrong on the
//! calling thread. Handles returned by `*_new` must be released with the
//! matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qmemory::channel::MarkovChannel;
use qmemory::fixtures::published_polynomial;
use qmemory::threshold::{crossing, ThresholdQuery};
use qmemory::{fidelity_polynomial, BiPoly, CodeFamily, Error, FlipBasis};

pub type QmStatus = i32;

pub const QM_OK: QmStatus = 0;
pub const QM_INVALID_ARGUMENT: QmStatus = 1;
pub const QM_NULL_POINTER: QmStatus = 2;
pub const QM_UNSUPPORTED: QmStatus = 3;
pub const QM_BUFFER_TOO_SMALL: QmStatus = 4;
/// `qm_threshold` found no sign change of F_DFS - F_RC on [0, 1].
pub const QM_NO_CROSSING: QmStatus = 5;
/// Internal failure, including a caught panic.
pub const QM_INTERNAL: QmStatus = 6;

pub const QM_FAMILY_RC: u32 = 0;
pub const QM_FAMILY_DFS: u32 = 1;
pub const QM_BASIS_BIT: u32 = 0;
pub const QM_BASIS_PHASE: u32 = 1;

/// Fidelity polynomial in `mu` and `p` with integer coefficients.
pub struct QmPolynomial {
    poly: BiPoly,
}

/// Correlated flip channel evaluated at a fixed `(mu, p)`.
pub struct QmChannel {
    channel: MarkovChannel,
    mu: f64,
    p: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(QmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnsupportedFixture { .. } => QM_UNSUPPORTED,
            Error::CoefficientOverflow | Error::SymbolicChannel | Error::Construction(_) => {
                QM_INTERNAL
            }
            _ => QM_INVALID_ARGUMENT,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QM_OK
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QM_INTERNAL
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(QM_NULL_POINTER, format!("{what} is null"))
}

fn family(code: u32) -> Result<CodeFamily, Failure> {
    match code {
        QM_FAMILY_RC => Ok(CodeFamily::Rc),
        QM_FAMILY_DFS => Ok(CodeFamily::Dfs),
        other => Err(Failure(
            QM_INVALID_ARGUMENT,
            format!("unknown code family {other}"),
        )),
    }
}

fn basis(code: u32) -> Result<FlipBasis, Failure> {
    match code {
        QM_BASIS_BIT => Ok(FlipBasis::Bit),
        QM_BASIS_PHASE => Ok(FlipBasis::Phase),
        other => Err(Failure(
            QM_INVALID_ARGUMENT,
            format!("unknown flip basis {other}"),
        )),
    }
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn put_poly(out: *mut *mut QmPolynomial, poly: BiPoly) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    unsafe { out.write(Box::into_raw(Box::new(QmPolynomial { poly }))) };
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next `qm_*` call on the same thread.
#[no_mangle]
pub extern "C" fn qm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Derives the entanglement-fidelity polynomial of an `n`-qubit code.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qm_fidelity_poly_new(
    family_code: u32,
    n: u32,
    basis_code: u32,
    out: *mut *mut QmPolynomial,
) -> QmStatus {
    guard(|| {
        let poly = fidelity_polynomial(family(family_code)?, n as usize, basis(basis_code)?)?.poly;
        unsafe { put_poly(out, poly) }
    })
}

/// Published closed form for `(family, n)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qm_fixture_new(
    family_code: u32,
    n: u32,
    out: *mut *mut QmPolynomial,
) -> QmStatus {
    guard(|| {
        let poly = published_polynomial(family(family_code)?, n as usize)?;
        unsafe { put_poly(out, poly) }
    })
}

/// Parses the canonical text form, e.g. `1 - 3*p^2 + 2*p^3`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qm_poly_parse(
    text: *const c_char,
    out: *mut *mut QmPolynomial,
) -> QmStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|_| Failure(QM_INVALID_ARGUMENT, "text is not UTF-8".into()))?;
        let poly: BiPoly = s.parse()?;
        unsafe { put_poly(out, poly) }
    })
}

/// # Safety
/// `poly` must come from a `qm_*_new` call; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_poly_eval(
    poly: *const QmPolynomial,
    mu: f64,
    p: f64,
    out: *mut f64,
) -> QmStatus {
    guard(|| {
        let poly = unsafe { poly.as_ref() }.ok_or_else(|| null("poly"))?;
        unsafe { write(out, poly.poly.eval(mu, p), "out") }
    })
}

/// Coefficient of `mu^mu_deg * p^p_deg`.
///
/// # Safety
/// `poly` must come from a `qm_*_new` call; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_poly_coeff(
    poly: *const QmPolynomial,
    mu_deg: u32,
    p_deg: u32,
    out: *mut i64,
) -> QmStatus {
    guard(|| {
        let poly = unsafe { poly.as_ref() }.ok_or_else(|| null("poly"))?;
        unsafe { write(out, poly.poly.coeff(mu_deg, p_deg), "out") }
    })
}

/// Sets `*out` to 1 when the polynomials are identical and 0 otherwise.
///
/// # Safety
/// Both handles must come from `qm_*_new` calls; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_poly_equal(
    a: *const QmPolynomial,
    b: *const QmPolynomial,
    out: *mut i32,
) -> QmStatus {
    guard(|| {
        let a = unsafe { a.as_ref() }.ok_or_else(|| null("a"))?;
        let b = unsafe { b.as_ref() }.ok_or_else(|| null("b"))?;
        unsafe { write(out, i32::from(a.poly == b.poly), "out") }
    })
}

/// Writes the canonical text form into `buf`.
///
/// `*written` receives the text length without the terminator. When `len`
/// is too small nothing is copied and `QM_BUFFER_TOO_SMALL` is returned, so
/// a first call with `len = 0` sizes the buffer.
///
/// # Safety
/// `poly` must come from a `qm_*_new` call, `buf` must hold `len` bytes
/// (it may be null when `len` is 0) and `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_poly_to_string(
    poly: *const QmPolynomial,
    buf: *mut c_char,
    len: usize,
    written: *mut usize,
) -> QmStatus {
    guard(|| {
        let poly = unsafe { poly.as_ref() }.ok_or_else(|| null("poly"))?;
        let text = poly.poly.to_string();
        unsafe { write(written, text.len(), "written")? };
        if len < text.len() + 1 {
            return Err(Failure(
                QM_BUFFER_TOO_SMALL,
                format!("need {} bytes, got {len}", text.len() + 1),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        unsafe {
            ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
            buf.add(text.len()).write(0);
        }
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or come from a `qm_*_new` call not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_poly_free(poly: *mut QmPolynomial) {
    if !poly.is_null() {
        drop(unsafe { Box::from_raw(poly) });
    }
}

/// Builds the `n`-qubit channel at `(mu, p)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qm_channel_new(
    n: u32,
    basis_code: u32,
    mu: f64,
    p: f64,
    out: *mut *mut QmChannel,
) -> QmStatus {
    guard(|| {
        let channel = MarkovChannel::numeric(n as usize, basis(basis_code)?, mu, p)?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { out.write(Box::into_raw(Box::new(QmChannel { channel, mu, p }))) };
        Ok(())
    })
}

/// Probability of the flip pattern whose bit `k - 1` marks qubit `k`.
///
/// # Safety
/// `channel` must come from `qm_channel_new`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_channel_weight(
    channel: *const QmChannel,
    pattern: u32,
    out: *mut f64,
) -> QmStatus {
    guard(|| {
        let ch = unsafe { channel.as_ref() }.ok_or_else(|| null("channel"))?;
        let n = ch.channel.n();
        if u64::from(pattern) >> n != 0 {
            return Err(Failure(
                QM_INVALID_ARGUMENT,
                format!("pattern {pattern} out of range for {n} qubits"),
            ));
        }
        let w = ch.channel.term(pattern).probability_at(ch.mu, ch.p);
        unsafe { write(out, w, "out") }
    })
}

/// # Safety
/// `channel` must be null or come from `qm_channel_new` and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_channel_free(channel: *mut QmChannel) {
    if !channel.is_null() {
        drop(unsafe { Box::from_raw(channel) });
    }
}

/// Smallest `mu` in [0, 1] where the `n`-qubit DFS code overtakes the
/// repetition code at error probability `p`, bisected to `tol`.
///
/// # Safety
/// `out_mu` and `out_crossings` must be writable; `out_crossings` may be null.
#[no_mangle]
pub unsafe extern "C" fn qm_threshold(
    n: u32,
    p: f64,
    tol: f64,
    out_mu: *mut f64,
    out_crossings: *mut u32,
) -> QmStatus {
    guard(|| {
        if out_mu.is_null() {
            return Err(null("out_mu"));
        }
        let mut query = ThresholdQuery::new(n as usize, p);
        query.tolerance = tol;
        match crossing(query)? {
            Some(c) => {
                unsafe { out_mu.write(c.mu_star) };
                if !out_crossings.is_null() {
                    unsafe { out_crossings.write(c.sign_changes as u32) };
                }
                Ok(())
            }
            None => Err(Failure(QM_NO_CROSSING, format!("no crossing at p={p}"))),
        }
    })
}
