//! C ABI for `lambert-parity`.
//!
//! Series live behind opaque `LpSeries` handles allocated by this library and
//! released with `lp_series_free`. Every fallible function returns an
//! `LpStatus` and writes its result through an out-pointer; on failure the
//! out-pointer is left untouched and `lp_last_error_message` describes the
//! problem. Strings returned through out-pointers are released with
//! `lp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};

use lambert_parity::report::ReportRecord;
use lambert_parity::{Error, Harness, IdentityId, Parity, SeriesId, Status, TruncatedSeries};
use num_traits::ToPrimitive;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownName = 3,
    InvalidOrder = 4,
    NotAUnit = 5,
    IndexOutOfRange = 6,
    Overflow = 7,
    Unsupported = 8,
    SignResolution = 9,
    Internal = 10,
}

/// Outcome of a single identity check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpIdentityStatus {
    Verified = 0,
    VerifiedWithSignFlip = 1,
    Failed = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpParity {
    Odd = 0,
    Even = 1,
    /// The zero series.
    OddAndEven = 2,
    Neither = 3,
}

/// Opaque truncated power series.
pub struct LpSeries(TruncatedSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(e: &Error) -> LpStatus {
    match e {
        Error::NotAUnit { .. } => LpStatus::NotAUnit,
        Error::OrderTooSmall { .. } | Error::ZeroOrder => LpStatus::InvalidOrder,
        Error::UnknownName(_) => LpStatus::UnknownName,
        Error::UnsupportedSeries(_) => LpStatus::Unsupported,
        Error::NoConsistentSign { .. }
        | Error::IndeterminateSign { .. }
        | Error::NotSignAmbiguous(_) => LpStatus::SignResolution,
        Error::InvalidExponent(_)
        | Error::DivergentSpec(_)
        | Error::ZeroFactor(_)
        | Error::ParameterOutOfRange(_) => LpStatus::InvalidArgument,
    }
}

fn fail(status: LpStatus, message: impl Into<String>) -> LpStatus {
    set_last_error(message);
    status
}

struct Failure(LpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LpStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, turning errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LpStatus {
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LpStatus::Ok,
        Ok(Err(Failure(status, message))) => fail(status, message),
        Err(_) => fail(LpStatus::Internal, "internal panic"),
    }
}

unsafe fn series_ref<'a>(s: *const LpSeries, what: &str) -> Result<&'a TruncatedSeries, Failure> {
    s.as_ref().map(|s| &s.0).ok_or_else(|| null(what))
}

unsafe fn string_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(LpStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn emit_series(out: *mut *mut LpSeries, s: TruncatedSeries) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(LpSeries(s)));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c =
        CString::new(s).map_err(|_| Failure(LpStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_order(order: usize) -> Result<(), Failure> {
    if order == 0 {
        return Err(Error::ZeroOrder.into());
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; empty if nothing has failed yet.
#[no_mangle]
pub extern "C" fn lp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a named series (`"Y_DEF"`, `"PHI"`, ...) truncated at `order`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_named(
    name: *const c_char,
    order: usize,
    out: *mut *mut LpSeries,
) -> LpStatus {
    guard(|| {
        let id: SeriesId = string_arg(name, "name")?.parse()?;
        check_order(order)?;
        emit_series(out, lambert_parity::named_series(id, order))
    })
}

/// Series with the given `len` coefficients; its order is `len`.
///
/// # Safety
/// `coeffs` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lp_series_from_i64(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut LpSeries,
) -> LpStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        check_order(len)?;
        let values = std::slice::from_raw_parts(coeffs, len);
        emit_series(out, TruncatedSeries::from_i64s(values)?)
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_series_free(s: *mut LpSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Truncation order, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_series_order(s: *const LpSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Coefficient of `q^index`; `LP_STATUS_OVERFLOW` if it does not fit.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_coeff_i64(
    s: *const LpSeries,
    index: usize,
    out: *mut i64,
) -> LpStatus {
    guard(|| {
        let s = series_ref(s, "series")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = coeff(s, index)?;
        *out = c.to_i64().ok_or_else(|| {
            Failure(
                LpStatus::Overflow,
                format!("coefficient {c} of q^{index} exceeds 64 bits"),
            )
        })?;
        Ok(())
    })
}

/// Coefficient of `q^index` in decimal. Free with `lp_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_coeff_string(
    s: *const LpSeries,
    index: usize,
    out: *mut *mut c_char,
) -> LpStatus {
    guard(|| {
        let s = series_ref(s, "series")?;
        emit_string(out, coeff(s, index)?.to_string())
    })
}

fn coeff(s: &TruncatedSeries, index: usize) -> Result<&num_bigint::BigInt, Failure> {
    if index >= s.order() {
        return Err(Failure(
            LpStatus::IndexOutOfRange,
            format!("index {index} out of range for order {}", s.order()),
        ));
    }
    Ok(s.coeff(index))
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `a * b` at the smaller of the two orders.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_mul(
    a: *const LpSeries,
    b: *const LpSeries,
    out: *mut *mut LpSeries,
) -> LpStatus {
    guard(|| {
        let (a, b) = (series_ref(a, "a")?, series_ref(b, "b")?);
        emit_series(out, a.mul(b))
    })
}

/// `c1 * a + c2 * b` at the smaller of the two orders.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_linear_combine(
    c1: i64,
    a: *const LpSeries,
    c2: i64,
    b: *const LpSeries,
    out: *mut *mut LpSeries,
) -> LpStatus {
    guard(|| {
        let (a, b) = (series_ref(a, "a")?, series_ref(b, "b")?);
        emit_series(out, TruncatedSeries::linear_combine(c1, a, c2, b))
    })
}

/// Multiplicative inverse; needs constant term `+1` or `-1`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_invert(s: *const LpSeries, out: *mut *mut LpSeries) -> LpStatus {
    guard(|| emit_series(out, series_ref(s, "series")?.invert()?))
}

/// `f(-q)`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_compose_sign(
    s: *const LpSeries,
    out: *mut *mut LpSeries,
) -> LpStatus {
    guard(|| emit_series(out, series_ref(s, "series")?.compose_sign()))
}

/// `f(q^t)` for `t >= 1`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_compose_power(
    s: *const LpSeries,
    t: usize,
    out: *mut *mut LpSeries,
) -> LpStatus {
    guard(|| {
        let s = series_ref(s, "series")?;
        if t == 0 {
            return Err(Failure(
                LpStatus::InvalidArgument,
                "power must be at least 1".into(),
            ));
        }
        emit_series(out, s.compose_power(t))
    })
}

/// `q^k f(q)` at the same order.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_shift(
    s: *const LpSeries,
    k: usize,
    out: *mut *mut LpSeries,
) -> LpStatus {
    guard(|| emit_series(out, series_ref(s, "series")?.shift(k)))
}

/// Writes 1 to `out` if both series have the same order and coefficients.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_equal(
    a: *const LpSeries,
    b: *const LpSeries,
    out: *mut i32,
) -> LpStatus {
    guard(|| {
        let (a, b) = (series_ref(a, "a")?, series_ref(b, "b")?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = i32::from(a == b);
        Ok(())
    })
}

/// Classifies the series. For `LP_PARITY_NEITHER`, `first_violation` gets
/// the smallest index breaking both parities; otherwise it is left alone.
/// `first_violation` may be null.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_series_parity(
    s: *const LpSeries,
    out: *mut LpParity,
    first_violation: *mut usize,
) -> LpStatus {
    guard(|| {
        let s = series_ref(s, "series")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = s.parity();
        *out = match p {
            Parity::Odd => LpParity::Odd,
            Parity::Even => LpParity::Even,
            Parity::OddAndEven => LpParity::OddAndEven,
            Parity::Neither { .. } => LpParity::Neither,
        };
        if let (Some(v), false) = (p.first_violation(), first_violation.is_null()) {
            *first_violation = v;
        }
        Ok(())
    })
}

/// Checks one identity (`"I4"` or `"I4_LEMMA1"`) through `q^(order-1)`.
///
/// # Safety
/// `identity` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_verify(
    identity: *const c_char,
    order: usize,
    out: *mut LpIdentityStatus,
) -> LpStatus {
    guard(|| {
        let id: IdentityId = string_arg(identity, "identity")?.parse()?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = Harness::new().check_identity(id, order)?;
        *out = match report.status {
            Status::Verified => LpIdentityStatus::Verified,
            Status::VerifiedWithSignFlip => LpIdentityStatus::VerifiedWithSignFlip,
            Status::Failed => LpIdentityStatus::Failed,
        };
        Ok(())
    })
}

/// JSON array of report records for one identity, or for the whole suite
/// when `identity` is null. Free with `lp_string_free`.
///
/// # Safety
/// `identity` must be null or a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lp_verify_json(
    identity: *const c_char,
    order: usize,
    out: *mut *mut c_char,
) -> LpStatus {
    guard(|| {
        let records = if identity.is_null() {
            let suite = Harness::new().run_suite(order)?;
            suite
                .entries
                .iter()
                .map(|e| ReportRecord::from_entry(e, order))
                .collect()
        } else {
            let id: IdentityId = string_arg(identity, "identity")?.parse()?;
            vec![ReportRecord::from_report(
                &Harness::new().check_identity(id, order)?,
            )]
        };
        let json = serde_json::to_string(&records)
            .map_err(|e| Failure(LpStatus::Internal, e.to_string()))?;
        emit_string(out, json)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn every_error_maps_to_a_nonzero_status() {
        let samples = [
            Error::NotAUnit { constant: 2.into() },
            Error::ZeroOrder,
            Error::UnknownName("x".into()),
            Error::ParameterOutOfRange("x".into()),
            Error::UnsupportedSeries("x".into()),
            Error::NotSignAmbiguous("x".into()),
        ];
        for e in &samples {
            assert_ne!(status_of(e), LpStatus::Ok);
        }
    }

    #[test]
    fn last_error_tracks_failures() {
        let mut out = ptr::null_mut();
        let status = unsafe { lp_series_named(c"NOPE".as_ptr(), 10, &mut out) };
        assert_eq!(status, LpStatus::UnknownName);
        assert!(out.is_null());
        let message = unsafe { CStr::from_ptr(lp_last_error_message()) }
            .to_str()
            .unwrap();
        assert!(message.contains("NOPE"), "{message}");
    }
}
