//! C ABI over lyucalc. Handles are opaque and owned by the caller, who frees
//! them with the matching `*_free`. Every fallible call returns a `LyuStatus`;
//! on failure `lyu_last_error` describes the error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lyucalc::cli::{Problem, TableReport};
use lyucalc::table::{krull_dimension, lyubeznik_table, LyubeznikTable, TableOptions};
use lyucalc::veronese::veronese_ideal;
use lyucalc::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LyuStatus {
    Ok = 0,
    Null = 1,
    Parse = 2,
    Inhomogeneous = 3,
    Internal = 4,
    Range = 5,
    Utf8 = 6,
    Invalid = 7,
}

/// A parsed ideal in a polynomial ring over F_p.
pub struct LyuIdeal {
    problem: Problem,
}

/// A computed Lyubeznik table.
pub struct LyuTable {
    spec: lyucalc::cli::IdealSpec,
    table: LyubeznikTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).expect("no interior nul"));
}

fn fail(status: LyuStatus, msg: impl Into<String>) -> LyuStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> LyuStatus {
    let status = match e {
        Error::Parse { .. } => LyuStatus::Parse,
        Error::Inhomogeneous(_) => LyuStatus::Inhomogeneous,
        Error::Invalid(_) | Error::RingMismatch(_) => LyuStatus::Invalid,
        _ => LyuStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> LyuStatus) -> LyuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == LyuStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(LyuStatus::Internal, "panic inside lyucalc"),
    }
}

/// The message of the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn lyu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a problem file (`p=`, `vars=`, `gens=` lines) into `*out`.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_parse(text: *const c_char, out: *mut *mut LyuIdeal) -> LyuStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(LyuStatus::Null, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(LyuStatus::Utf8, "input is not UTF-8");
        };
        match Problem::parse(s) {
            Ok(problem) => {
                *out = Box::into_raw(Box::new(LyuIdeal { problem }));
                LyuStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `ideal` is null or came from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_free(ideal: *mut LyuIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// dim R/I, the dimension of the cone.
///
/// # Safety
/// `ideal` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lyu_ideal_krull_dimension(ideal: *const LyuIdeal, out: *mut usize) -> LyuStatus {
    guard(|| {
        let (Some(id), false) = (ideal.as_ref(), out.is_null()) else {
            return fail(LyuStatus::Null, "null argument");
        };
        *out = krull_dimension(&id.problem.ring, &id.problem.ideal);
        LyuStatus::Ok
    })
}

/// The d-uple Veronese re-embedding of the ideal, as a new handle.
///
/// # Safety
/// `ideal` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lyu_veronese(ideal: *const LyuIdeal, d: u32, out: *mut *mut LyuIdeal) -> LyuStatus {
    guard(|| {
        let (Some(id), false) = (ideal.as_ref(), out.is_null()) else {
            return fail(LyuStatus::Null, "null argument");
        };
        *out = ptr::null_mut();
        match veronese_ideal(&id.problem.ring, &id.problem.ideal, d) {
            Ok((ring, gens)) => {
                let problem = Problem::from_ideal(id.problem.spec.label.clone(), &ring, &gens);
                *out = Box::into_raw(Box::new(LyuIdeal { problem }));
                LyuStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Compute the full table λ_{i,j}, 0 ≤ i ≤ j ≤ dim A.
///
/// # Safety
/// `ideal` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_compute(ideal: *const LyuIdeal, minimize: bool, out: *mut *mut LyuTable) -> LyuStatus {
    guard(|| {
        let (Some(id), false) = (ideal.as_ref(), out.is_null()) else {
            return fail(LyuStatus::Null, "null argument");
        };
        *out = ptr::null_mut();
        let opts = TableOptions {
            minimize,
            ..Default::default()
        };
        match lyubeznik_table(&id.problem.ring, &id.problem.ideal, &opts) {
            Ok(table) => {
                *out = Box::into_raw(Box::new(LyuTable {
                    spec: id.problem.spec.clone(),
                    table,
                }));
                LyuStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `table` is null or came from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_free(table: *mut LyuTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// dim A of the table.
///
/// # Safety
/// `table` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_dim(table: *const LyuTable, out: *mut usize) -> LyuStatus {
    guard(|| {
        let (Some(t), false) = (table.as_ref(), out.is_null()) else {
            return fail(LyuStatus::Null, "null argument");
        };
        *out = t.table.dim_a;
        LyuStatus::Ok
    })
}

/// λ_{i,j}; `LYU_STATUS_RANGE` unless i, j ≤ dim A.
///
/// # Safety
/// `table` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_get(table: *const LyuTable, i: usize, j: usize, out: *mut usize) -> LyuStatus {
    guard(|| {
        let (Some(t), false) = (table.as_ref(), out.is_null()) else {
            return fail(LyuStatus::Null, "null argument");
        };
        let d = t.table.dim_a;
        if i > d || j > d {
            return fail(LyuStatus::Range, format!("cell ({i},{j}) outside 0..={d}"));
        }
        *out = t.table.get(i, j);
        LyuStatus::Ok
    })
}

/// The table as the CLI's JSON report; free with `lyu_string_free`.
///
/// # Safety
/// `table` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lyu_table_to_json(table: *const LyuTable, out: *mut *mut c_char) -> LyuStatus {
    guard(|| {
        let (Some(t), false) = (table.as_ref(), out.is_null()) else {
            return fail(LyuStatus::Null, "null argument");
        };
        let json = TableReport::new(t.spec.clone(), &t.table).to_json();
        *out = CString::new(json).expect("JSON has no nul").into_raw();
        LyuStatus::Ok
    })
}

/// # Safety
/// `s` is null or a string returned by this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lyu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
