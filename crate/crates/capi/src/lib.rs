//! C ABI over the potalg core. Potentials are opaque handles; every call
//! returns a status code and the last error message is retrievable per
//! thread via `pw_last_error`.

use potalg::analysis::{check_left_injectivity, check_minimal_series};
use potalg::hilbert::{
    classify_growth, graded_dims, gsv_bound_coeffs, rational_series_coeffs, truncation_dims,
    GrowthClass,
};
use potalg::parser::parse_potential;
use potalg::potential::{
    example_potential_kgen, example_potential_ngtk, key_syzygy_defect, random_potential,
};
use potalg::{Error, FieldSpec, Potential};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::os::raw::c_int;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwStatus {
    PwOk = 0,
    PwInvalidArgument = 1,
    PwParseError = 2,
    PwPreconditionFailed = 3,
    PwBufferTooSmall = 4,
    PwNullPointer = 5,
    PwInternalError = 6,
}

/// Opaque potential handle. Create with one of the pw_potential_* constructors
/// and release with pw_potential_free.
pub struct PwPotential {
    inner: Potential,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(cleaned).unwrap());
}

fn status_of(err: &Error) -> PwStatus {
    match err {
        Error::Parse { .. } => PwStatus::PwParseError,
        Error::Io(_) => PwStatus::PwInternalError,
        _ => PwStatus::PwPreconditionFailed,
    }
}

fn fail(err: Error) -> PwStatus {
    set_error(&err.to_string());
    status_of(&err)
}

fn field_from(modulus: u64) -> Result<FieldSpec, Error> {
    if modulus == 0 {
        Ok(FieldSpec::Rationals)
    } else {
        FieldSpec::prime(modulus)
    }
}

/// Message for the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn make_potential(
    out: *mut *mut PwPotential,
    build: impl FnOnce() -> Result<Potential, Error>,
) -> PwStatus {
    if out.is_null() {
        set_error("null output pointer");
        return PwStatus::PwNullPointer;
    }
    match build() {
        Ok(p) => {
            *out = Box::into_raw(Box::new(PwPotential { inner: p }));
            PwStatus::PwOk
        }
        Err(e) => {
            *out = std::ptr::null_mut();
            fail(e)
        }
    }
}

/// Parses a potential from the text grammar. `modulus` 0 selects the
/// rationals, otherwise a prime field. `n` 0 means infer from the text.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_potential_parse(
    text: *const c_char,
    modulus: u64,
    n: usize,
    out: *mut *mut PwPotential,
) -> PwStatus {
    if text.is_null() {
        set_error("null text pointer");
        return PwStatus::PwNullPointer;
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("potential text is not valid UTF-8");
            return PwStatus::PwInvalidArgument;
        }
    };
    let n_override = if n == 0 { None } else { Some(n) };
    make_potential(out, || {
        parse_potential(text, field_from(modulus)?, n_override)
    })
}

/// Builtin potential with k >= n (one term per permutation).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_potential_builtin_kgen(
    n: usize,
    k: usize,
    modulus: u64,
    out: *mut *mut PwPotential,
) -> PwStatus {
    make_potential(out, || example_potential_kgen(n, k, field_from(modulus)?))
}

/// Builtin potential with n > k >= 3.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_potential_builtin_ngtk(
    n: usize,
    k: usize,
    modulus: u64,
    out: *mut *mut PwPotential,
) -> PwStatus {
    make_potential(out, || example_potential_ngtk(n, k, field_from(modulus)?))
}

/// Seeded random potential over a prime field (modulus must be a prime).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_potential_random(
    n: usize,
    k: usize,
    m: usize,
    modulus: u64,
    seed: u64,
    out: *mut *mut PwPotential,
) -> PwStatus {
    make_potential(out, || random_potential(n, k, m, field_from(modulus)?, seed))
}

/// Releases a handle. Passing NULL is a no-op.
///
/// # Safety
/// `p` must come from a pw_potential_* constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pw_potential_free(p: *mut PwPotential) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

unsafe fn with_potential<'a>(p: *const PwPotential) -> Result<&'a Potential, PwStatus> {
    match p.as_ref() {
        Some(h) => Ok(&h.inner),
        None => {
            set_error("null potential handle");
            Err(PwStatus::PwNullPointer)
        }
    }
}

/// Writes n, k, m of the potential.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pw_potential_shape(
    p: *const PwPotential,
    n: *mut usize,
    k: *mut usize,
    m: *mut usize,
) -> PwStatus {
    let f = match with_potential(p) {
        Ok(f) => f,
        Err(s) => return s,
    };
    if n.is_null() || k.is_null() || m.is_null() {
        set_error("null output pointer");
        return PwStatus::PwNullPointer;
    }
    *n = f.n;
    *k = f.k;
    *m = f.m;
    PwStatus::PwOk
}

unsafe fn fill_coeffs(
    coeffs: &[u64],
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> PwStatus {
    if out.is_null() || written.is_null() {
        set_error("null output pointer");
        return PwStatus::PwNullPointer;
    }
    *written = coeffs.len();
    if coeffs.len() > capacity {
        set_error("output buffer too small");
        return PwStatus::PwBufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(coeffs.as_ptr(), out, coeffs.len());
    PwStatus::PwOk
}

/// Graded dimensions dim (A_F)_j for j = 0..=D (homogeneous potentials only).
/// `written` receives the number of coefficients (D + 1).
///
/// # Safety
/// `out` must point to at least `capacity` u64 slots.
#[no_mangle]
pub unsafe extern "C" fn pw_graded_dims(
    p: *const PwPotential,
    d: usize,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> PwStatus {
    let f = match with_potential(p) {
        Ok(f) => f,
        Err(s) => return s,
    };
    match graded_dims(f, d) {
        Ok(table) => fill_coeffs(&table.coeffs, out, capacity, written),
        Err(e) => fail(e),
    }
}

/// Truncation dimensions dim A^(j); `written` receives the reported length,
/// which for nonhomogeneous potentials is D - (m - k) + 1.
///
/// # Safety
/// `out` must point to at least `capacity` u64 slots.
#[no_mangle]
pub unsafe extern "C" fn pw_truncation_dims(
    p: *const PwPotential,
    d: usize,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> PwStatus {
    let f = match with_potential(p) {
        Ok(f) => f,
        Err(s) => return s,
    };
    match truncation_dims(f, d) {
        Ok(table) => fill_coeffs(&table.coeffs, out, capacity, written),
        Err(e) => fail(e),
    }
}

/// Coefficients of the GSV lower bound (1-t)^{-1}(1-nt+nt^{k-1}-t^k)^{-1}.
///
/// # Safety
/// `out` must point to at least `capacity` u64 slots.
#[no_mangle]
pub unsafe extern "C" fn pw_gsv_bound(
    n: usize,
    k: usize,
    d: usize,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> PwStatus {
    match gsv_bound_coeffs(n, k, d) {
        Ok(table) => fill_coeffs(&table.coeffs, out, capacity, written),
        Err(e) => fail(e),
    }
}

/// Coefficients of the minimal series (1-nt+nt^{k-1}-t^k)^{-1}.
///
/// # Safety
/// `out` must point to at least `capacity` u64 slots.
#[no_mangle]
pub unsafe extern "C" fn pw_rational_series(
    n: usize,
    k: usize,
    d: usize,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> PwStatus {
    match rational_series_coeffs(n, k, d) {
        Ok(table) => fill_coeffs(&table.coeffs, out, capacity, written),
        Err(e) => fail(e),
    }
}

/// Growth classification: 0 excluded case (2,3), 1 at least cubic, 2
/// exponential (written to `class`).
///
/// # Safety
/// `class` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_classify_growth(n: usize, k: usize, class: *mut c_int) -> PwStatus {
    if class.is_null() {
        set_error("null output pointer");
        return PwStatus::PwNullPointer;
    }
    match classify_growth(n, k) {
        Ok(c) => {
            *class = match c {
                GrowthClass::ExcludedCase23 => 0,
                GrowthClass::AtLeastCubic => 1,
                GrowthClass::Exponential => 2,
            };
            PwStatus::PwOk
        }
        Err(e) => fail(e),
    }
}

/// Sets `injective` to 1 iff left multiplication by x1 is injective in every
/// checked degree below D, and `first_failure` to the first failing degree
/// (or to D when there is none).
///
/// # Safety
/// `injective` and `first_failure` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pw_check_left_injectivity(
    p: *const PwPotential,
    d: usize,
    injective: *mut c_int,
    first_failure: *mut usize,
) -> PwStatus {
    let f = match with_potential(p) {
        Ok(f) => f,
        Err(s) => return s,
    };
    if injective.is_null() || first_failure.is_null() {
        set_error("null output pointer");
        return PwStatus::PwNullPointer;
    }
    match check_left_injectivity(f, d) {
        Ok(rep) => {
            *injective = rep.injective() as c_int;
            *first_failure = rep.first_failure.unwrap_or(d);
            PwStatus::PwOk
        }
        Err(e) => fail(e),
    }
}

/// Sets `minimal` to 1 iff the graded Hilbert series matches the minimal
/// series up to degree D (homogeneous potentials only).
///
/// # Safety
/// `minimal` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_check_minimal_series(
    p: *const PwPotential,
    d: usize,
    minimal: *mut c_int,
) -> PwStatus {
    let f = match with_potential(p) {
        Ok(f) => f,
        Err(s) => return s,
    };
    if minimal.is_null() {
        set_error("null output pointer");
        return PwStatus::PwNullPointer;
    }
    match check_minimal_series(f, d) {
        Ok(v) => {
            *minimal = v as c_int;
            PwStatus::PwOk
        }
        Err(e) => fail(e),
    }
}

/// Sets `is_zero` to 1 iff the key syzygy sum_j [x_j, dF/dx_j] vanishes.
///
/// # Safety
/// `is_zero` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pw_key_syzygy_is_zero(
    p: *const PwPotential,
    is_zero: *mut c_int,
) -> PwStatus {
    let f = match with_potential(p) {
        Ok(f) => f,
        Err(s) => return s,
    };
    if is_zero.is_null() {
        set_error("null output pointer");
        return PwStatus::PwNullPointer;
    }
    *is_zero = key_syzygy_defect(f).is_zero() as c_int;
    PwStatus::PwOk
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn roundtrip_through_the_c_surface() {
        unsafe {
            let text = CString::new("(x1^2*x2^2)~").unwrap();
            let mut p: *mut PwPotential = std::ptr::null_mut();
            assert_eq!(
                pw_potential_parse(text.as_ptr(), 0, 0, &mut p),
                PwStatus::PwOk
            );
            let (mut n, mut k, mut m) = (0usize, 0usize, 0usize);
            assert_eq!(pw_potential_shape(p, &mut n, &mut k, &mut m), PwStatus::PwOk);
            assert_eq!((n, k, m), (2, 4, 4));

            let mut coeffs = [0u64; 16];
            let mut written = 0usize;
            assert_eq!(
                pw_graded_dims(p, 8, coeffs.as_mut_ptr(), coeffs.len(), &mut written),
                PwStatus::PwOk
            );
            assert_eq!(written, 9);
            assert_eq!(&coeffs[..9], &[1, 2, 4, 6, 9, 12, 16, 20, 25]);

            let mut bound = [0u64; 16];
            assert_eq!(
                pw_rational_series(2, 4, 8, bound.as_mut_ptr(), bound.len(), &mut written),
                PwStatus::PwOk
            );
            assert_eq!(&bound[..9], &coeffs[..9]);

            let mut flag = -1;
            assert_eq!(pw_check_minimal_series(p, 8, &mut flag), PwStatus::PwOk);
            assert_eq!(flag, 1);
            assert_eq!(pw_key_syzygy_is_zero(p, &mut flag), PwStatus::PwOk);
            assert_eq!(flag, 1);

            let mut first = usize::MAX;
            assert_eq!(
                pw_check_left_injectivity(p, 5, &mut flag, &mut first),
                PwStatus::PwOk
            );
            assert_eq!(flag, 1);
            assert_eq!(first, 5);

            pw_potential_free(p);
        }
    }

    #[test]
    fn errors_surface_with_messages() {
        unsafe {
            let text = CString::new("x1*x2 + x1").unwrap();
            let mut p: *mut PwPotential = std::ptr::null_mut();
            let status = pw_potential_parse(text.as_ptr(), 0, 0, &mut p);
            assert_ne!(status, PwStatus::PwOk);
            assert!(p.is_null());
            let msg = CStr::from_ptr(pw_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());

            // buffer too small reports the needed length
            let mut small = [0u64; 2];
            let mut written = 0usize;
            assert_eq!(
                pw_gsv_bound(2, 4, 8, small.as_mut_ptr(), small.len(), &mut written),
                PwStatus::PwBufferTooSmall
            );
            assert_eq!(written, 9);
        }
    }

    #[test]
    fn null_handling() {
        unsafe {
            let mut flag = 0;
            assert_eq!(
                pw_check_minimal_series(std::ptr::null(), 4, &mut flag),
                PwStatus::PwNullPointer
            );
            pw_potential_free(std::ptr::null_mut());
            let mut class = -1;
            assert_eq!(pw_classify_growth(2, 3, &mut class), PwStatus::PwOk);
            assert_eq!(class, 0);
        }
    }
}
