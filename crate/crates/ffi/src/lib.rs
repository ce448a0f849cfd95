//! C ABI over charforge: opaque group and table handles, status codes, and a
//! thread-local message for the last error.
//!
//! Every function returning `CfStatus` writes its outputs only on `CF_STATUS_OK`.
//! Handles are released with the matching `*_free`; strings with `cf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use charforge::chartable::{table_for, CharacterTable};
use charforge::charops::decompose_product;
use charforge::constructions::{build_from_text, BuildOptions, Built};
use charforge::harness::{classify_product, run_group, CaseTag};
use charforge::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    CapExceeded = 4,
    RowOutOfRange = 5,
    HypothesisViolation = 6,
    TheoremViolation = 7,
    NotACharacter = 8,
    Unsupported = 9,
    Internal = 10,
    Panic = 11,
}

/// Product cases.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfCase {
    SumOfLinears = 1,
    MixedLinearAndDegreeP = 2,
    AllDegreeP = 3,
    Irreducible = 4,
}

impl From<CaseTag> for CfCase {
    fn from(t: CaseTag) -> Self {
        match t {
            CaseTag::SumOfLinears => CfCase::SumOfLinears,
            CaseTag::MixedLinearAndDegreeP => CfCase::MixedLinearAndDegreeP,
            CaseTag::AllDegreeP => CfCase::AllDegreeP,
            CaseTag::Irreducible => CfCase::Irreducible,
        }
    }
}

/// A constructed group.
pub struct CfGroup {
    built: Built,
    spec: String,
}

/// The character table of a group.
pub struct CfTable {
    table: CharacterTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CfStatus {
    match e {
        Error::Parse { .. } | Error::InvalidPermutation(_) => CfStatus::Parse,
        Error::ClosureTooLarge { .. } => CfStatus::CapExceeded,
        Error::RowOutOfRange { .. } => CfStatus::RowOutOfRange,
        Error::HypothesisViolation(_) | Error::NotPGroup { .. } | Error::NotNilpotent { .. } => {
            CfStatus::HypothesisViolation
        }
        Error::TheoremViolation(_) => CfStatus::TheoremViolation,
        Error::NotACharacter(_) => CfStatus::NotACharacter,
        Error::UnsupportedPrime { .. } => CfStatus::Unsupported,
        _ => CfStatus::Internal,
    }
}

/// Runs `f`, recording any error or panic as the last error.
fn guard(f: impl FnOnce() -> Result<(), CfStatus>) -> CfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            CfStatus::Panic
        }
    }
}

fn fail(e: Error) -> CfStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null() -> CfStatus {
    set_error("null argument".into());
    CfStatus::NullArgument
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, CfStatus> {
    // SAFETY: callers pass either null or a pointer obtained from this library.
    unsafe { p.as_ref() }.ok_or_else(null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, CfStatus> {
    // SAFETY: callers pass either null or a valid writable location.
    unsafe { p.as_mut() }.ok_or_else(null)
}

/// Message for the last failing call on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn cf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a group from a spec string. `cap = 0` selects the default closure cap.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cf_group_from_spec(
    spec: *const c_char,
    cap: usize,
    stretch: bool,
    out_group: *mut *mut CfGroup,
) -> CfStatus {
    guard(|| {
        let out_group = unsafe { out(out_group) }?;
        if spec.is_null() {
            return Err(null());
        }
        // SAFETY: non-null and nul-terminated per the contract.
        let text = unsafe { CStr::from_ptr(spec) }.to_str().map_err(|_| {
            set_error("spec is not valid UTF-8".into());
            CfStatus::InvalidUtf8
        })?;
        let mut opts = BuildOptions {
            stretch,
            ..BuildOptions::default()
        };
        if cap != 0 {
            opts.cap = cap;
        }
        let built = build_from_text(text, &opts).map_err(fail)?;
        *out_group = Box::into_raw(Box::new(CfGroup {
            built,
            spec: text.to_string(),
        }));
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle from `cf_group_from_spec`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cf_group_free(group: *mut CfGroup) {
    if !group.is_null() {
        // SAFETY: allocated by Box::into_raw in cf_group_from_spec.
        drop(unsafe { Box::from_raw(group) });
    }
}

/// Group order, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_group_order(group: *const CfGroup) -> usize {
    unsafe { group.as_ref() }.map_or(0, |g| g.built.group.order())
}

/// # Safety
/// `group` must be a live handle and `out_table` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_table_new(group: *const CfGroup, out_table: *mut *mut CfTable) -> CfStatus {
    guard(|| {
        let g = unsafe { deref(group) }?;
        let out_table = unsafe { out(out_table) }?;
        *out_table = Box::into_raw(Box::new(CfTable {
            table: table_for(&g.built),
        }));
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a handle from `cf_table_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cf_table_free(table: *mut CfTable) {
    if !table.is_null() {
        // SAFETY: allocated by Box::into_raw in cf_table_new.
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Number of irreducible characters (= classes), or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_table_rows(table: *const CfTable) -> usize {
    unsafe { table.as_ref() }.map_or(0, |t| t.table.len())
}

/// # Safety
/// `table` must be a live handle and `out_degree` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_table_degree(table: *const CfTable, row: usize, out_degree: *mut u64) -> CfStatus {
    guard(|| {
        let t = unsafe { deref(table) }?;
        let out_degree = unsafe { out(out_degree) }?;
        t.table.check_row(row).map_err(fail)?;
        *out_degree = t.table.degree(row);
        Ok(())
    })
}

/// Decomposes the product of two rows. Writes `eta` and up to `capacity`
/// `(row, multiplicity)` pairs in ascending row order; `rows`/`mults` may be null
/// when `capacity` is 0.
///
/// # Safety
/// `rows` and `mults` must hold `capacity` elements; `out_eta` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_decompose_product(
    table: *const CfTable,
    chi: usize,
    psi: usize,
    rows: *mut usize,
    mults: *mut u64,
    capacity: usize,
    out_eta: *mut usize,
) -> CfStatus {
    guard(|| {
        let t = unsafe { deref(table) }?;
        let out_eta = unsafe { out(out_eta) }?;
        if capacity > 0 && (rows.is_null() || mults.is_null()) {
            return Err(null());
        }
        let d = decompose_product(&t.table, chi, psi).map_err(fail)?;
        for (i, &(r, m)) in d.constituents.iter().take(capacity).enumerate() {
            // SAFETY: i < capacity and both buffers hold capacity elements.
            unsafe {
                *rows.add(i) = r;
                *mults.add(i) = m;
            }
        }
        *out_eta = d.eta;
        Ok(())
    })
}

/// Classifies `chi psi` for `chi(1) = p`.
///
/// # Safety
/// `table` must be a live handle; `out_case` and `out_eta` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_classify_product(
    table: *const CfTable,
    chi: usize,
    psi: usize,
    p: u64,
    out_case: *mut CfCase,
    out_eta: *mut usize,
) -> CfStatus {
    guard(|| {
        let t = unsafe { deref(table) }?;
        let out_case = unsafe { out(out_case) }?;
        let out_eta = unsafe { out(out_eta) }?;
        let c = classify_product(&t.table, chi, psi, p).map_err(fail)?;
        *out_case = c.tag.into();
        *out_eta = c.eta;
        Ok(())
    })
}

/// Runs the full product-classification and lemma checks on a group.
///
/// # Safety
/// `group` must be a live handle; `out_pass` and `out_pairs` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_verify(
    group: *const CfGroup,
    p: u64,
    out_pass: *mut bool,
    out_pairs: *mut usize,
) -> CfStatus {
    guard(|| {
        let g = unsafe { deref(group) }?;
        let out_pass = unsafe { out(out_pass) }?;
        let out_pairs = unsafe { out(out_pairs) }?;
        let opts = BuildOptions {
            cap: g.built.group.order().max(charforge::group::DEFAULT_CAP),
            stretch: true,
        };
        let report = run_group(&g.spec, &g.spec, p, &opts, true).map_err(fail)?;
        *out_pass = report.pass;
        *out_pairs = report.classification.pairs_checked;
        Ok(())
    })
}

/// The table as a JSON document; release with `cf_string_free`. Null on failure.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_table_json(table: *const CfTable) -> *mut c_char {
    let mut result = ptr::null_mut();
    let status = guard(|| {
        let t = unsafe { deref(table) }?;
        let json = charforge::harness::to_json(&t.table.to_document()).map_err(fail)?;
        result = CString::new(json).map_err(|_| CfStatus::Internal)?.into_raw();
        Ok(())
    });
    if status == CfStatus::Ok {
        result
    } else {
        ptr::null_mut()
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cf_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}
