//! C ABI for the divsum engine.
//!
//! Conventions:
//! - Every fallible function returns a [`DivsumStatus`]; on failure a message
//!   is available from [`divsum_last_error_message`] on the same thread.
//! - Exact values are returned as newly allocated NUL-terminated strings
//!   (`"a/b"`, `"a+bi"`); release them with [`divsum_string_free`].
//! - Output pointers may be null when the caller does not need that output.
//! - Panics never cross the boundary; they are reported as `DIVSUM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use divsum::exact::Scalar;
use divsum::special::{apostol_bernoulli, bernoulli, euler_at_zero};
use divsum::summation::{self, SummationResult};
use divsum::{ComplexQ, Error, RationalGF};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivsumStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Inadmissible = 3,
    InvalidArgument = 4,
    Numeric = 5,
    Panic = 6,
}

/// Opaque generating function `f(z) = num(z) / den(z)`.
pub struct DivsumGf {
    inner: RationalGF,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> DivsumStatus {
    match e {
        Error::Parse(_) => DivsumStatus::Parse,
        Error::Inadmissible(_)
        | Error::HigherOrderPole
        | Error::DegenerateApostol
        | Error::UseNaturalSum
        | Error::ParameterOutsideDisc
        | Error::SupportOverlap => DivsumStatus::Inadmissible,
        Error::InvalidArgument(_)
        | Error::ZeroOrder
        | Error::ZeroDenominator
        | Error::NonzeroConstantTerm
        | Error::PoleAtOrigin
        | Error::BadRootHint => DivsumStatus::InvalidArgument,
        _ => DivsumStatus::Numeric,
    }
}

/// Internal failure: status plus message.
struct Fail(DivsumStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard<F: FnOnce() -> Result<(), Fail>>(body: F) -> DivsumStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DivsumStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {message}"));
            DivsumStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(DivsumStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(DivsumStatus::Parse, format!("{name} is not valid UTF-8")))
}

unsafe fn read_gf<'a>(gf: *const DivsumGf) -> Result<&'a RationalGF, Fail> {
    gf.as_ref().map(|g| &g.inner).ok_or_else(|| Fail(DivsumStatus::NullPointer, "gf is null".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("formatted numbers contain no NUL").into_raw()
}

unsafe fn write<T>(out: *mut T, value: T) {
    if !out.is_null() {
        *out = value;
    }
}

/// Stores a scalar: the exact string (or null when numeric) and its double parts.
unsafe fn write_scalar(value: &Scalar, exact_out: *mut *mut c_char, re_out: *mut f64, im_out: *mut f64) {
    let z = value.to_c64();
    write(re_out, z.re);
    write(im_out, z.im);
    if !exact_out.is_null() {
        *exact_out = value.exact().map_or(ptr::null_mut(), |q| into_c_string(q.to_string()));
    }
}

unsafe fn write_result(
    r: SummationResult,
    exact_out: *mut *mut c_char,
    re_out: *mut f64,
    im_out: *mut f64,
) -> Result<(), Fail> {
    write_scalar(&r.value, exact_out, re_out, im_out);
    Ok(())
}

/// Creates a generating function from ascending coefficient lists such as
/// `"0,1"` and `"1,1"`; `den_roots` (`"root^mult;..."`) may be null.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_gf_new(
    num: *const c_char,
    den: *const c_char,
    den_roots: *const c_char,
    out: *mut *mut DivsumGf,
) -> DivsumStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(DivsumStatus::NullPointer, "out is null".into()));
        }
        let num = read_str(num, "num")?;
        let den = read_str(den, "den")?;
        let roots = if den_roots.is_null() { None } else { Some(read_str(den_roots, "den_roots")?) };
        let inner = RationalGF::parse(num, den, roots)?;
        *out = Box::into_raw(Box::new(DivsumGf { inner }));
        Ok(())
    })
}

/// Releases a handle from [`divsum_gf_new`]; null is ignored.
///
/// # Safety
/// `gf` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn divsum_gf_free(gf: *mut DivsumGf) {
    if !gf.is_null() {
        drop(Box::from_raw(gf));
    }
}

/// Whether the function meets the method's pole conditions.
///
/// # Safety
/// `gf` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_gf_is_admissible(gf: *const DivsumGf, out: *mut bool) -> DivsumStatus {
    guard(|| {
        let f = read_gf(gf)?;
        if out.is_null() {
            return Err(Fail(DivsumStatus::NullPointer, "out is null".into()));
        }
        *out = f.classify_poles()?.admissible();
        Ok(())
    })
}

/// `Σ n^k a_n` for an admissible function, `k ≥ 1`.
///
/// `*exact_out` receives null when pole positions were only known numerically.
///
/// # Safety
/// `gf` must be a live handle; non-null outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_regularized_sum(
    gf: *const DivsumGf,
    k: u32,
    exact_out: *mut *mut c_char,
    re_out: *mut f64,
    im_out: *mut f64,
) -> DivsumStatus {
    guard(|| {
        let f = read_gf(gf)?;
        write_result(summation::regularized_sum(f, k as usize)?, exact_out, re_out, im_out)
    })
}

/// `1^k - 2^k + 3^k - ...`.
///
/// # Safety
/// Non-null outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_alternating_sum(
    k: u32,
    exact_out: *mut *mut c_char,
    re_out: *mut f64,
    im_out: *mut f64,
) -> DivsumStatus {
    guard(|| write_result(summation::alternating_sum(k as usize)?, exact_out, re_out, im_out))
}

/// `1^k + 2^k + 3^k + ...`.
///
/// # Safety
/// Non-null outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_natural_sum(
    k: u32,
    exact_out: *mut *mut c_char,
    re_out: *mut f64,
    im_out: *mut f64,
) -> DivsumStatus {
    guard(|| write_result(summation::natural_sum(k as usize)?, exact_out, re_out, im_out))
}

/// `Σ ε^n n^k` for an exact `ε` such as `"-1/2"` or `"3/5+4/5i"`.
///
/// # Safety
/// `eps` must be NUL-terminated; non-null outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_apostol_sum(
    k: u32,
    eps: *const c_char,
    exact_out: *mut *mut c_char,
    re_out: *mut f64,
    im_out: *mut f64,
) -> DivsumStatus {
    guard(|| {
        let eps: ComplexQ = read_str(eps, "eps")?.parse()?;
        write_result(summation::apostol_sum(k as usize, &eps)?, exact_out, re_out, im_out)
    })
}

/// `B_m` (with `B_1 = -1/2`) as an exact string.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_bernoulli(m: u32, out: *mut *mut c_char) -> DivsumStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(DivsumStatus::NullPointer, "out is null".into()));
        }
        *out = into_c_string(bernoulli(m as usize).to_string());
        Ok(())
    })
}

/// `E_k(0)` as an exact string.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_euler_at_zero(k: u32, out: *mut *mut c_char) -> DivsumStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(DivsumStatus::NullPointer, "out is null".into()));
        }
        *out = into_c_string(euler_at_zero(k as usize).to_string());
        Ok(())
    })
}

/// `B_m(ε)`, the Apostol–Bernoulli number, as an exact string (`ε ≠ 1`).
///
/// # Safety
/// `eps` must be NUL-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_apostol_bernoulli(m: u32, eps: *const c_char, out: *mut *mut c_char) -> DivsumStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(DivsumStatus::NullPointer, "out is null".into()));
        }
        let eps: ComplexQ = read_str(eps, "eps")?.parse()?;
        *out = into_c_string(apostol_bernoulli(m as usize, &eps)?.to_string());
        Ok(())
    })
}

/// Extrapolated `lim_{r→1⁻} (z d/dz)^k f (r)` over increasing radii in `(0, 1)`.
///
/// # Safety
/// `gf` must be a live handle; `radii` must point to `len` doubles; non-null
/// outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn divsum_abel_value(
    gf: *const DivsumGf,
    k: u32,
    radii: *const f64,
    len: usize,
    re_out: *mut f64,
    im_out: *mut f64,
    error_out: *mut f64,
) -> DivsumStatus {
    guard(|| {
        let f = read_gf(gf)?;
        if radii.is_null() {
            return Err(Fail(DivsumStatus::NullPointer, "radii is null".into()));
        }
        let schedule = std::slice::from_raw_parts(radii, len);
        let est = summation::abel_value(f, k as usize, schedule)?;
        write(re_out, est.value.re);
        write(im_out, est.value.im);
        write(error_out, est.error);
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn divsum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null.
///
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn divsum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn divsum_ffi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
