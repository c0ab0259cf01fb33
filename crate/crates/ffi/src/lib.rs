//! C ABI over `sqbetti`.
//!
//! Every function returns an [`SqStatus`] and writes its result through an
//! out-pointer. Objects are opaque handles released with the matching
//! `*_free` function. On failure, [`sq_last_error_message`] describes the
//! error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use sqbetti::divisors::{canonical_class, is_fano};
use sqbetti::genus1::fixed_locus_polynomial;
use sqbetti::localization::assemble_poincare;
use sqbetti::polya::{bracelet_count, BraceletQuery};
use sqbetti::{Assembly, ExclusionRule, IntPolynomial, LocalizationConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Overflow = 3,
    ComputationFailed = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqExclusion {
    Successor = 0,
    Predecessor = 1,
}

/// Opaque polynomial in `t` with integer coefficients.
pub struct SqPolynomial(IntPolynomial);

/// Opaque result of a localization run.
pub struct SqAssembly(Assembly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Failure = (SqStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SqStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            SqStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (SqStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    (SqStatus::InvalidArgument, msg.into())
}

fn failed(e: impl std::fmt::Display) -> Failure {
    (SqStatus::ComputationFailed, e.to_string())
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `p` must be null or point to a live `T`.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(failed)
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next `sq_*` call on the same thread.
#[no_mangle]
pub extern "C" fn sq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Poincaré polynomial of the `n = 1` space of degree `d`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn sq_genus1_poincare(d: u32, out: *mut *mut SqPolynomial) -> SqStatus {
    guard(|| {
        if d == 0 {
            return Err(invalid("d must be positive"));
        }
        let p = fixed_locus_polynomial(u64::from(d)).map_err(failed)?;
        write(out, Box::into_raw(Box::new(SqPolynomial(p))), "out")
    })
}

/// Localization run for `Q̄₁(ℙⁿ⁻¹, d)` with default weights and smoothing.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn sq_assemble(
    n: u32,
    d: u32,
    exclusion: SqExclusion,
    out: *mut *mut SqAssembly,
) -> SqStatus {
    guard(|| {
        if n == 0 || d == 0 {
            return Err(invalid("n and d must be positive"));
        }
        let cfg = LocalizationConfig {
            exclusion: match exclusion {
                SqExclusion::Successor => ExclusionRule::Successor,
                SqExclusion::Predecessor => ExclusionRule::Predecessor,
            },
            ..LocalizationConfig::default()
        };
        let a = assemble_poincare(n, d, &cfg).map_err(failed)?;
        write(out, Box::into_raw(Box::new(SqAssembly(a))), "out")
    })
}

/// Copy of the assembled Poincaré polynomial.
///
/// # Safety
/// `a` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn sq_assembly_poincare(a: *const SqAssembly, out: *mut *mut SqPolynomial) -> SqStatus {
    guard(|| {
        let a = borrow(a, "assembly")?;
        write(
            out,
            Box::into_raw(Box::new(SqPolynomial(a.0.poincare.clone()))),
            "out",
        )
    })
}

/// Number of fixed loci, Type A and Type B together.
///
/// # Safety
/// `a` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sq_assembly_locus_count(a: *const SqAssembly, out: *mut usize) -> SqStatus {
    guard(|| {
        let a = borrow(a, "assembly")?;
        write(out, a.0.records.len(), "out")
    })
}

/// JSON report of the run. Free the string with [`sq_string_free`].
///
/// # Safety
/// `a` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn sq_assembly_to_json(a: *const SqAssembly, out: *mut *mut c_char) -> SqStatus {
    guard(|| {
        let a = borrow(a, "assembly")?;
        let s = serde_json::to_string(&a.0).map_err(failed)?;
        write(out, to_c_string(s)?, "out")
    })
}

/// # Safety
/// `a` must be null or a handle from [`sq_assemble`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sq_assembly_free(a: *mut SqAssembly) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Degree of the polynomial, or -1 for the zero polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sq_polynomial_degree(p: *const SqPolynomial, out: *mut i64) -> SqStatus {
    guard(|| {
        let p = borrow(p, "polynomial")?;
        let deg = match p.0.degree() {
            None => -1,
            Some(k) => i64::try_from(k).map_err(|_| (SqStatus::Overflow, "degree exceeds i64".into()))?,
        };
        write(out, deg, "out")
    })
}

/// Coefficient of `t^i`; `SQ_STATUS_OVERFLOW` if it does not fit in `i64`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sq_polynomial_coeff_i64(
    p: *const SqPolynomial,
    i: usize,
    out: *mut i64,
) -> SqStatus {
    guard(|| {
        let p = borrow(p, "polynomial")?;
        let c = p.0.coeff(i);
        let v = c
            .to_i64()
            .ok_or_else(|| (SqStatus::Overflow, format!("coefficient of t^{i} is {c}")))?;
        write(out, v, "out")
    })
}

/// Coefficients as a JSON array of decimal strings.
///
/// # Safety
/// `p` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn sq_polynomial_to_json(p: *const SqPolynomial, out: *mut *mut c_char) -> SqStatus {
    guard(|| {
        let p = borrow(p, "polynomial")?;
        let s = serde_json::to_string(&p.0).map_err(failed)?;
        write(out, to_c_string(s)?, "out")
    })
}

/// # Safety
/// `p` must be null or a polynomial handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sq_polynomial_free(p: *mut SqPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of bracelets with `d` beads, `i` of them black.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sq_bracelet_count(d: u64, i: u64, out: *mut u64) -> SqStatus {
    guard(|| {
        let q = BraceletQuery::new(d, i).map_err(|e| invalid(e.to_string()))?;
        let n = bracelet_count(q);
        let v = n
            .to_u64()
            .ok_or_else(|| (SqStatus::Overflow, format!("N({d},{i}) = {n}")))?;
        write(out, v, "out")
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sq_is_fano(n: u32, d: u32, out: *mut bool) -> SqStatus {
    guard(|| {
        if n == 0 || d == 0 {
            return Err(invalid("n and d must be positive"));
        }
        write(out, is_fano(n, d), "out")
    })
}

/// Canonical class `K = (cj_num/cj_den) D_j + (cb_num/cb_den) D_b`, reduced.
///
/// # Safety
/// All four out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sq_canonical_class(
    n: u32,
    d: u32,
    cj_num: *mut i64,
    cj_den: *mut i64,
    cb_num: *mut i64,
    cb_den: *mut i64,
) -> SqStatus {
    guard(|| {
        if n == 0 || d == 0 {
            return Err(invalid("n and d must be positive"));
        }
        if [cj_num, cj_den, cb_num, cb_den].iter().any(|p| p.is_null()) {
            return Err(null("out"));
        }
        let k = canonical_class(n, d);
        let part = |r: &BigRational| -> Result<(i64, i64), Failure> {
            let overflow = || (SqStatus::Overflow, format!("{r} does not fit in i64"));
            Ok((
                r.numer().to_i64().ok_or_else(overflow)?,
                r.denom().to_i64().ok_or_else(overflow)?,
            ))
        };
        let (a, b) = part(&k.cj)?;
        let (c, e) = part(&k.cb)?;
        write(cj_num, a, "cj_num")?;
        write(cj_den, b, "cj_den")?;
        write(cb_num, c, "cb_num")?;
        write(cb_den, e, "cb_den")
    })
}
