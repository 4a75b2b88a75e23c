//! C interface to `donlat`.
//!
//! Objects are opaque handles created by `*_new` / `*_from_json` and released
//! with the matching `*_free`. Every fallible call returns a [`DonlatStatus`];
//! on failure [`donlat_last_error`] describes what went wrong on the calling
//! thread. Strings handed out by the library must be released with
//! [`donlat_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use donlat::curveclass::classify;
use donlat::cycle::{betti_check, validate_cycle};
use donlat::deform::{smooth_node, Smoothed};
use donlat::divisor::validate_maximal_divisor;
use donlat::{fixtures, oracle, BettiVerdict, ClassVector, CycleConfig, Error, MaximalDivisorConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DonlatStatus {
    Ok = 0,
    /// Well-formed input that fails validation, or a class that is not a curve.
    Invalid = 1,
    Malformed = 2,
    NullPointer = 3,
    Panic = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DonlatVerdict {
    PartitionCase = 0,
    OddIh = 1,
    Inadmissible = 2,
}

impl From<BettiVerdict> for DonlatVerdict {
    fn from(v: BettiVerdict) -> Self {
        match v {
            BettiVerdict::PartitionCase => DonlatVerdict::PartitionCase,
            BettiVerdict::OddIH => DonlatVerdict::OddIh,
            BettiVerdict::Inadmissible => DonlatVerdict::Inadmissible,
        }
    }
}

/// A class vector in the Donaldson basis.
pub struct DonlatClass(ClassVector);

/// A cycle of rational curves.
pub struct DonlatCycle(CycleConfig);

/// A cycle with attached chains.
pub struct DonlatDivisor(MaximalDivisorConfig);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    let c = CString::new(text).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(DonlatStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidCycle(_) | Error::InvalidDivisor(_) | Error::NotPartitionCase(_) => DonlatStatus::Invalid,
            _ => DonlatStatus::Malformed,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DonlatStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<DonlatStatus, Fail>) -> DonlatStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DonlatStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(DonlatStatus::Malformed, format!("{what} is not UTF-8: {e}")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Fail(DonlatStatus::Malformed, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail(DonlatStatus::Malformed, e.to_string()))
}

fn from_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, Fail> {
    serde_json::from_str(s).map_err(|e| Fail(DonlatStatus::Malformed, format!("malformed JSON: {e}")))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn donlat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn donlat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copy `len` coefficients into a new class.
#[no_mangle]
pub unsafe extern "C" fn donlat_class_new(coeffs: *const i64, len: usize, out: *mut *mut DonlatClass) -> DonlatStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let v = std::slice::from_raw_parts(coeffs, len).to_vec();
        write_handle(out, DonlatClass(ClassVector::new(v)?))?;
        Ok(DonlatStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn donlat_class_free(c: *mut DonlatClass) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Rank of the class, 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn donlat_class_rank(c: *const DonlatClass) -> usize {
    c.as_ref().map_or(0, |c| c.0.rank())
}

/// Copy the coefficients into `buf`, which must hold at least the rank.
#[no_mangle]
pub unsafe extern "C" fn donlat_class_coeffs(c: *const DonlatClass, buf: *mut i64, len: usize) -> DonlatStatus {
    guard(|| {
        let c = borrow(c, "class")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let src = c.0.coeffs();
        if len < src.len() {
            return Err(Fail(
                DonlatStatus::Malformed,
                format!("buffer holds {len}, rank is {}", src.len()),
            ));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
        Ok(DonlatStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn donlat_class_intersect(
    a: *const DonlatClass,
    b: *const DonlatClass,
    out: *mut i64,
) -> DonlatStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = a.0.intersect(&b.0)?;
        Ok(DonlatStatus::Ok)
    })
}

/// `{"kind":"A"|"B"|"none",…}`; returns `DONLAT_STATUS_INVALID` when the
/// class is not a curve (the JSON is still written).
#[no_mangle]
pub unsafe extern "C" fn donlat_class_classify_json(c: *const DonlatClass, out: *mut *mut c_char) -> DonlatStatus {
    guard(|| {
        let kind = classify(&borrow(c, "class")?.0);
        write_string(out, to_json(&kind)?)?;
        Ok(if kind.is_curve() { DonlatStatus::Ok } else { DonlatStatus::Invalid })
    })
}

#[no_mangle]
pub unsafe extern "C" fn donlat_cycle_from_json(json: *const c_char, out: *mut *mut DonlatCycle) -> DonlatStatus {
    guard(|| {
        let cfg: CycleConfig = from_json(read_str(json, "json")?)?;
        write_handle(out, DonlatCycle(cfg))?;
        Ok(DonlatStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn donlat_cycle_free(c: *mut DonlatCycle) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of curves, 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn donlat_cycle_len(c: *const DonlatCycle) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// Writes the violation report when `report` is not null.
#[no_mangle]
pub unsafe extern "C" fn donlat_cycle_validate(c: *const DonlatCycle, report: *mut *mut c_char) -> DonlatStatus {
    guard(|| {
        let r = validate_cycle(&borrow(c, "cycle")?.0);
        if !report.is_null() {
            write_string(report, to_json(&r)?)?;
        }
        Ok(if r.is_valid() { DonlatStatus::Ok } else { DonlatStatus::Invalid })
    })
}

/// `#C - C²` and its verdict against the rank.
#[no_mangle]
pub unsafe extern "C" fn donlat_cycle_betti(
    c: *const DonlatCycle,
    verdict: *mut DonlatVerdict,
    value: *mut i64,
) -> DonlatStatus {
    guard(|| {
        let b = betti_check(&borrow(c, "cycle")?.0)?;
        if verdict.is_null() || value.is_null() {
            return Err(null("output pointer"));
        }
        *verdict = b.verdict.into();
        *value = b.value;
        Ok(DonlatStatus::Ok)
    })
}

/// Smooth the node after position `i`. Writes
/// `{"cycle":…,"exceptional":[…]}`, or `{"elliptic":…,"exceptional":null}`
/// for a single curve. `next` receives the new cycle when it is not null.
#[no_mangle]
pub unsafe extern "C" fn donlat_cycle_smooth(
    c: *const DonlatCycle,
    i: usize,
    json: *mut *mut c_char,
    next: *mut *mut DonlatCycle,
) -> DonlatStatus {
    guard(|| {
        let o = smooth_node(&borrow(c, "cycle")?.0, i)?;
        let record = match &o.result {
            Smoothed::Cycle(cfg) => serde_json::json!({ "cycle": cfg, "exceptional": o.exceptional }),
            Smoothed::Elliptic { class } => serde_json::json!({ "elliptic": class, "exceptional": null }),
        };
        write_string(json, record.to_string())?;
        if !next.is_null() {
            *next = match o.result {
                Smoothed::Cycle(cfg) => Box::into_raw(Box::new(DonlatCycle(cfg))),
                Smoothed::Elliptic { .. } => ptr::null_mut(),
            };
        }
        Ok(DonlatStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn donlat_divisor_from_json(json: *const c_char, out: *mut *mut DonlatDivisor) -> DonlatStatus {
    guard(|| {
        let d: MaximalDivisorConfig = from_json(read_str(json, "json")?)?;
        write_handle(out, DonlatDivisor(d))?;
        Ok(DonlatStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn donlat_divisor_free(d: *mut DonlatDivisor) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Writes `{"violations":…,"trace":…,"order":…}` when `report` is not null.
#[no_mangle]
pub unsafe extern "C" fn donlat_divisor_validate(d: *const DonlatDivisor, report: *mut *mut c_char) -> DonlatStatus {
    guard(|| {
        let r = validate_maximal_divisor(&borrow(d, "divisor")?.0);
        if !report.is_null() {
            write_string(report, to_json(&r)?)?;
        }
        Ok(if r.is_valid() { DonlatStatus::Ok } else { DonlatStatus::Invalid })
    })
}

/// The named fixture as JSON.
#[no_mangle]
pub unsafe extern "C" fn donlat_fixture_json(name: *const c_char, out: *mut *mut c_char) -> DonlatStatus {
    guard(|| {
        let f = fixtures::by_name(read_str(name, "name")?)?;
        write_string(out, to_json(&f)?)?;
        Ok(DonlatStatus::Ok)
    })
}

/// Census table for rank `n` as TSV. `cap` 0 means the default cap.
#[no_mangle]
pub unsafe extern "C" fn donlat_census_tsv(n: usize, cap: usize, out: *mut *mut c_char) -> DonlatStatus {
    guard(|| {
        let cap = if cap == 0 { oracle::default_cap() } else { cap };
        let rows = oracle::census(n, cap)?;
        write_string(out, oracle::census_tsv(&rows))?;
        Ok(DonlatStatus::Ok)
    })
}
