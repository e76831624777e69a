//! C ABI over `sidon-core`.
//!
//! Objects are opaque handles created by `*_new` / constructor calls and
//! released with the matching `*_free`. Every fallible call returns a
//! [`SidonStatus`]; on failure the message is available from
//! [`sidon_last_error`] until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sidon_core::algebra::{AbelianGroup, FiniteField};
use sidon_core::dense::{construct_dense, DenseConstruction, DenseName};
use sidon_core::search;
use sidon_core::sidon::{is_perfect_difference_set, is_sidon};
use sidon_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SidonStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Precondition = 3,
    Inconclusive = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

/// A finite abelian group in invariant-factor form.
pub struct SidonGroup(AbelianGroup);

/// Output of a dense construction.
pub struct SidonConstruction(DenseConstruction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: SidonStatus, msg: impl Into<String>) -> SidonStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> SidonStatus {
    let status = match e {
        Error::BudgetExhausted => SidonStatus::Inconclusive,
        Error::Precondition(_) | Error::Characteristic(..) | Error::NontrivialStabilizer(_) => SidonStatus::Precondition,
        _ => SidonStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> SidonStatus) -> SidonStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SidonStatus::Internal, "internal panic"),
    }
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn sidon_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates `Z/n_1 x ... x Z/n_k`; factors equal to 1 are dropped and the
/// rest must form a divisibility chain.
///
/// # Safety
/// `factors` must point to `len` readable values (or be null with `len == 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sidon_group_new(factors: *const u64, len: usize, out: *mut *mut SidonGroup) -> SidonStatus {
    guard(|| {
        if out.is_null() || (factors.is_null() && len > 0) {
            return fail(SidonStatus::NullPointer, "null pointer");
        }
        let f: Vec<u64> =
            if len == 0 { Vec::new() } else { std::slice::from_raw_parts(factors, len).iter().copied().filter(|&n| n != 1).collect() };
        match AbelianGroup::new(f) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(SidonGroup(g)));
                SidonStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `group` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sidon_group_free(group: *mut SidonGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sidon_group_order(group: *const SidonGroup, out: *mut u64) -> SidonStatus {
    if group.is_null() || out.is_null() {
        return fail(SidonStatus::NullPointer, "null pointer");
    }
    *out = (*group).0.order();
    SidonStatus::Ok
}

/// Element indices are mixed-radix codes of coordinate vectors, first
/// coordinate most significant.
///
/// # Safety
/// `group` must be valid; `set` must point to `len` values; `is_sidon_out`
/// and `perfect_out` must be writable (`perfect_out` may be null).
#[no_mangle]
pub unsafe extern "C" fn sidon_check(
    group: *const SidonGroup,
    set: *const usize,
    len: usize,
    is_sidon_out: *mut bool,
    perfect_out: *mut bool,
) -> SidonStatus {
    guard(|| {
        if group.is_null() || is_sidon_out.is_null() || (set.is_null() && len > 0) {
            return fail(SidonStatus::NullPointer, "null pointer");
        }
        let g = &(*group).0;
        let s: Vec<usize> = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(set, len).to_vec() };
        if let Some(&x) = s.iter().find(|&&x| x >= g.len()) {
            return fail(SidonStatus::InvalidArgument, format!("element index {x} out of range"));
        }
        *is_sidon_out = is_sidon(g, &s).is_sidon;
        if !perfect_out.is_null() {
            *perfect_out = is_perfect_difference_set(g, &s);
        }
        SidonStatus::Ok
    })
}

/// Builds a dense construction (`erdos_turan`, `singer`, `bose`, `spence`,
/// `hughes`) over the field of order `q`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sidon_construct(name: *const c_char, q: u64, out: *mut *mut SidonConstruction) -> SidonStatus {
    guard(|| {
        if name.is_null() || out.is_null() {
            return fail(SidonStatus::NullPointer, "null pointer");
        }
        let Ok(name) = CStr::from_ptr(name).to_str() else {
            return fail(SidonStatus::InvalidArgument, "name is not UTF-8");
        };
        let result = name
            .parse::<DenseName>()
            .and_then(|n| FiniteField::of_order(q).and_then(|f| construct_dense(n, &f)));
        match result {
            Ok(c) => {
                *out = Box::into_raw(Box::new(SidonConstruction(c)));
                SidonStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `c` must come from [`sidon_construct`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sidon_construction_free(c: *mut SidonConstruction) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// A new group handle for the construction's ambient group.
///
/// # Safety
/// `c` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sidon_construction_group(c: *const SidonConstruction, out: *mut *mut SidonGroup) -> SidonStatus {
    if c.is_null() || out.is_null() {
        return fail(SidonStatus::NullPointer, "null pointer");
    }
    *out = Box::into_raw(Box::new(SidonGroup((*c).0.group.clone())));
    SidonStatus::Ok
}

/// Copies the element indices into `buf`. `len_out` receives the set size;
/// when `cap` is too small nothing is copied and `BufferTooSmall` is
/// returned.
///
/// # Safety
/// `c` must be valid; `buf` must have room for `cap` values (may be null if
/// `cap == 0`); `len_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sidon_construction_elements(
    c: *const SidonConstruction,
    buf: *mut usize,
    cap: usize,
    len_out: *mut usize,
) -> SidonStatus {
    if c.is_null() || len_out.is_null() {
        return fail(SidonStatus::NullPointer, "null pointer");
    }
    let set = &(*c).0.set;
    *len_out = set.len();
    if cap < set.len() {
        return fail(SidonStatus::BufferTooSmall, format!("need room for {} elements", set.len()));
    }
    if buf.is_null() && !set.is_empty() {
        return fail(SidonStatus::NullPointer, "null buffer");
    }
    if !set.is_empty() {
        ptr::copy_nonoverlapping(set.as_ptr(), buf, set.len());
    }
    SidonStatus::Ok
}

/// Largest Sidon set size within a node budget. Returns `Inconclusive`
/// (with `sigma_out` holding the best size found) when the budget ran out.
///
/// # Safety
/// `group` must be valid; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn sidon_max_sidon(
    group: *const SidonGroup,
    budget: u64,
    sigma_out: *mut u64,
    exhaustive_out: *mut bool,
) -> SidonStatus {
    guard(|| {
        if group.is_null() || sigma_out.is_null() || exhaustive_out.is_null() {
            return fail(SidonStatus::NullPointer, "null pointer");
        }
        let r = search::max_sidon_capped(&(*group).0, budget, 0);
        *sigma_out = r.sigma;
        *exhaustive_out = r.exhaustive;
        if r.exhaustive {
            SidonStatus::Ok
        } else {
            fail(SidonStatus::Inconclusive, "node budget exhausted")
        }
    })
}

/// Number of (form, q) matches for a group order `n`.
#[no_mangle]
pub extern "C" fn sidon_admissible_order_count(n: u64) -> usize {
    search::admissible_orders(n).len()
}

/// Runs the command-line tool in-process. `argv` excludes the program
/// name. On return `json_out` owns a string to release with
/// [`sidon_string_free`] and `exit_code` holds the tool's exit status.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; outputs must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sidon_cli_run(
    argv: *const *const c_char,
    argc: usize,
    json_out: *mut *mut c_char,
    exit_code: *mut c_int,
) -> SidonStatus {
    guard(|| {
        if json_out.is_null() || exit_code.is_null() || (argv.is_null() && argc > 0) {
            return fail(SidonStatus::NullPointer, "null pointer");
        }
        let mut args = vec!["sidon".to_string()];
        for i in 0..argc {
            let p = *argv.add(i);
            if p.is_null() {
                return fail(SidonStatus::NullPointer, format!("argument {i} is null"));
            }
            match CStr::from_ptr(p).to_str() {
                Ok(s) => args.push(s.to_string()),
                Err(_) => return fail(SidonStatus::InvalidArgument, format!("argument {i} is not UTF-8")),
            }
        }
        let outcome = sidon_core::cli::run(args);
        *exit_code = outcome.code;
        *json_out = CString::new(outcome.stdout.replace('\0', " ")).expect("no NUL").into_raw();
        SidonStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sidon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
