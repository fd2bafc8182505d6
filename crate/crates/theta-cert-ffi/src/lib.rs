//! C ABI for theta-cert: residue certificates, table validation, and
//! numeric identity verification behind opaque handles and status codes.
//!
//! All functions are panic-safe (panics are caught and reported as
//! `THETA_CERT_STATUS_INTERNAL`). Strings returned by this library must be
//! released with `theta_cert_string_free`; certificates with
//! `theta_cert_certificate_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use theta_cert::ball::BallError;
use theta_cert::criteria::{
    build_criterion, certify_nonvanishing, CriteriaError, ResidueCertificate, Target,
    DEFAULT_PRIMES, DEFAULT_Y_CANDIDATES,
};
use theta_cert::tables;
use theta_cert::theta::{
    verify_duplication, verify_jacobi, verify_modular_vanishing, TauPoint, ThetaError,
};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ThetaCertStatus {
    /// Success.
    Ok = 0,
    /// The (target, n) pair has no supported criterion or table.
    Unsupported = 1,
    /// The scan exhausted its candidates without a certificate.
    NoCertificate = 2,
    /// Input outside the domain (e.g. Im(tau) <= 0).
    Domain = 3,
    /// Requested precision unattainable.
    Precision = 4,
    /// Null pointer or malformed string argument.
    BadArgument = 5,
    /// A check ran but did not pass.
    CheckFailed = 6,
    /// Internal error (caught panic).
    Internal = 7,
}

/// Opaque residue certificate handle.
pub struct ThetaCertCertificate {
    inner: ResidueCertificate,
}

fn criteria_status(e: &CriteriaError) -> ThetaCertStatus {
    match e {
        CriteriaError::UnsupportedPair { .. } | CriteriaError::MissingTable(_) => {
            ThetaCertStatus::Unsupported
        }
        CriteriaError::NoCertificateFound { .. } => ThetaCertStatus::NoCertificate,
        _ => ThetaCertStatus::Internal,
    }
}

fn theta_status(e: &ThetaError) -> ThetaCertStatus {
    match e {
        ThetaError::Ball(BallError::DomainError) => ThetaCertStatus::Domain,
        ThetaError::Ball(BallError::PrecisionError { .. }) => ThetaCertStatus::Precision,
        ThetaError::Ball(BallError::DivisionByZeroBall) => ThetaCertStatus::Precision,
        ThetaError::Table(_) | ThetaError::UnsupportedPoint { .. } => {
            ThetaCertStatus::Unsupported
        }
    }
}

unsafe fn parse_target(ptr: *const c_char) -> Result<Target, ThetaCertStatus> {
    if ptr.is_null() {
        return Err(ThetaCertStatus::BadArgument);
    }
    let s = CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| ThetaCertStatus::BadArgument)?;
    Target::from_str(s).map_err(|_| ThetaCertStatus::BadArgument)
}

unsafe fn parse_str<'a>(ptr: *const c_char) -> Result<&'a str, ThetaCertStatus> {
    if ptr.is_null() {
        return Err(ThetaCertStatus::BadArgument);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| ThetaCertStatus::BadArgument)
}

fn guarded(f: impl FnOnce() -> ThetaCertStatus) -> ThetaCertStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(ThetaCertStatus::Internal)
}

/// Dedekind psi of n (0 if n is 0 or out of range).
#[no_mangle]
pub extern "C" fn theta_cert_psi(n: u64) -> u64 {
    if n == 0 || n > 1_000_000 {
        return 0;
    }
    tables::psi(n)
}

/// Validates every embedded modular-polynomial table. Writes 1 to
/// `out_pass` when all invariants hold, 0 otherwise.
///
/// # Safety
/// `out_pass` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_tables_validate(out_pass: *mut i32) -> ThetaCertStatus {
    if out_pass.is_null() {
        return ThetaCertStatus::BadArgument;
    }
    guarded(|| {
        let report = tables::validate_tables();
        *out_pass = i32::from(report.all_pass());
        ThetaCertStatus::Ok
    })
}

/// Builds a residue certificate for (target, n) with the default scan
/// candidates. On success `*out` owns a new handle.
///
/// # Safety
/// `target` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_certify(
    target: *const c_char,
    n: u32,
    out: *mut *mut ThetaCertCertificate,
) -> ThetaCertStatus {
    if out.is_null() {
        return ThetaCertStatus::BadArgument;
    }
    let target = match parse_target(target) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| {
        let spec = match build_criterion(target, n) {
            Ok(s) => s,
            Err(e) => return criteria_status(&e),
        };
        match certify_nonvanishing(&spec, &DEFAULT_Y_CANDIDATES, &DEFAULT_PRIMES) {
            Ok(cert) => {
                *out = Box::into_raw(Box::new(ThetaCertCertificate { inner: cert }));
                ThetaCertStatus::Ok
            }
            Err(e) => criteria_status(&e),
        }
    })
}

/// The specialization point Y = y0 of a certificate.
///
/// # Safety
/// `cert` must be a live handle from `theta_cert_certify`.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_certificate_y0(cert: *const ThetaCertCertificate) -> i64 {
    if cert.is_null() {
        return 0;
    }
    (*cert).inner.y0
}

/// The witnessing prime of a certificate.
///
/// # Safety
/// `cert` must be a live handle from `theta_cert_certify`.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_certificate_prime(
    cert: *const ThetaCertCertificate,
) -> u64 {
    if cert.is_null() {
        return 0;
    }
    (*cert).inner.p
}

/// The nonzero residue of the exact resultant at y0 modulo the prime.
///
/// # Safety
/// `cert` must be a live handle from `theta_cert_certify`.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_certificate_residue(
    cert: *const ThetaCertCertificate,
) -> u64 {
    if cert.is_null() {
        return 0;
    }
    (*cert).inner.residue
}

/// Serializes a certificate as a JSON string (caller frees with
/// `theta_cert_string_free`).
///
/// # Safety
/// `cert` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_certificate_to_json(
    cert: *const ThetaCertCertificate,
    out_json: *mut *mut c_char,
) -> ThetaCertStatus {
    if cert.is_null() || out_json.is_null() {
        return ThetaCertStatus::BadArgument;
    }
    guarded(|| {
        let json = serde_json_string(&(*cert).inner);
        match CString::new(json) {
            Ok(c) => {
                *out_json = c.into_raw();
                ThetaCertStatus::Ok
            }
            Err(_) => ThetaCertStatus::Internal,
        }
    })
}

fn serde_json_string(cert: &ResidueCertificate) -> String {
    // keep a stable, minimal shape independent of serde internals
    format!(
        "{{\"target\":\"{}\",\"n\":{},\"y0\":{},\"p\":{},\"residue\":{},\"backend\":\"{}\"}}",
        cert.target.as_str(),
        cert.n,
        cert.y0,
        cert.p,
        cert.residue,
        cert.backend
    )
}

/// Releases a certificate handle (accepts NULL).
///
/// # Safety
/// `cert` must be NULL or a handle not previously freed.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_certificate_free(cert: *mut ThetaCertCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Releases a string returned by this library (accepts NULL).
///
/// # Safety
/// `s` must be NULL or a string not previously freed.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Verifies Jacobi's identity and the seven duplication identities at
/// tau = re + i*im (decimal strings) with the given precision. Writes 1 to
/// `out_pass` if every enclosure check passes.
///
/// # Safety
/// `re` and `im` must be NUL-terminated strings, `out_pass` valid.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_verify_identities(
    re: *const c_char,
    im: *const c_char,
    prec: u64,
    out_pass: *mut i32,
) -> ThetaCertStatus {
    if out_pass.is_null() {
        return ThetaCertStatus::BadArgument;
    }
    let (re, im) = match (parse_str(re), parse_str(im)) {
        (Ok(r), Ok(i)) => (r, i),
        _ => return ThetaCertStatus::BadArgument,
    };
    guarded(|| {
        let tau = match TauPoint::from_decimal(re, im, prec) {
            Ok(t) => t,
            Err(_) => return ThetaCertStatus::Domain,
        };
        let jacobi = match verify_jacobi(&tau, prec) {
            Ok(c) => c,
            Err(e) => return theta_status(&e),
        };
        let dups = match verify_duplication(&tau, prec) {
            Ok(c) => c,
            Err(e) => return theta_status(&e),
        };
        let all = jacobi.pass() && dups.iter().all(|c| c.pass());
        *out_pass = i32::from(all);
        if all {
            ThetaCertStatus::Ok
        } else {
            ThetaCertStatus::CheckFailed
        }
    })
}

/// Verifies the modular-polynomial vanishing relation for (target, n) at
/// tau = re + i*im. Writes 1 to `out_pass` on a passing enclosure.
///
/// # Safety
/// String arguments must be NUL-terminated, `out_pass` valid.
#[no_mangle]
pub unsafe extern "C" fn theta_cert_verify_modular(
    target: *const c_char,
    n: u64,
    re: *const c_char,
    im: *const c_char,
    prec: u64,
    out_pass: *mut i32,
) -> ThetaCertStatus {
    if out_pass.is_null() {
        return ThetaCertStatus::BadArgument;
    }
    let target = match parse_target(target) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let (re, im) = match (parse_str(re), parse_str(im)) {
        (Ok(r), Ok(i)) => (r, i),
        _ => return ThetaCertStatus::BadArgument,
    };
    guarded(|| {
        let tau = match TauPoint::from_decimal(re, im, prec) {
            Ok(t) => t,
            Err(_) => return ThetaCertStatus::Domain,
        };
        match verify_modular_vanishing(target, n, &tau, prec) {
            Ok(c) if c.pass() => {
                *out_pass = 1;
                ThetaCertStatus::Ok
            }
            Ok(_) => {
                *out_pass = 0;
                ThetaCertStatus::CheckFailed
            }
            Err(e) => theta_status(&e),
        }
    })
}
