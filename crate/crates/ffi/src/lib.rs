//! C ABI over `bcdkit`.
//!
//! Netlists cross the boundary as opaque `BcdNetlist` handles. Every call
//! returns a `BcdStatus`; on failure `bcd_last_error` describes what went
//! wrong on the calling thread. Strings returned to C are released with
//! `bcd_string_free`, handles with `bcd_netlist_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bcdkit::analysis::{delay_topological, transistor_cost, CostModel, DelayModel};
use bcdkit::cli::document::{netlist_from_json, netlist_to_json};
use bcdkit::generators::Circuit;
use bcdkit::netlist::Netlist;
use bcdkit::verify::{exhaustive_check, InputSpace, Oracle, MAX_EXHAUSTIVE_VECTORS};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownCircuit = 3,
    ParseError = 4,
    AnalysisFailed = 5,
    Panic = 6,
}

/// Opaque netlist handle.
pub struct BcdNetlist {
    inner: Netlist,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("nul bytes removed")));
}

fn fail(status: BcdStatus, message: impl Into<String>) -> BcdStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> BcdStatus) -> BcdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(BcdStatus::Panic, "internal panic"),
    }
}

unsafe fn netlist_ref<'a>(handle: *const BcdNetlist) -> Option<&'a Netlist> {
    handle.as_ref().map(|h| &h.inner)
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, BcdStatus> {
    if s.is_null() {
        return Err(fail(BcdStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(BcdStatus::InvalidArgument, "string is not UTF-8"))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bcd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a named circuit (`ncla4`, `bcd-cs`, ...). `digits` applies to BCD
/// chains only.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_generate(
    name: *const c_char,
    digits: u32,
    out: *mut *mut BcdNetlist,
) -> BcdStatus {
    guard(|| {
        if out.is_null() {
            return fail(BcdStatus::NullPointer, "null output pointer");
        }
        let name = match c_str(name) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let circuit: Circuit = match name.parse() {
            Ok(c) => c,
            Err(e) => return fail(BcdStatus::UnknownCircuit, e.to_string()),
        };
        match circuit.build(digits) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(BcdNetlist { inner }));
                BcdStatus::Ok
            }
            Err(e) => fail(BcdStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Loads a netlist document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_from_json(
    json: *const c_char,
    out: *mut *mut BcdNetlist,
) -> BcdStatus {
    guard(|| {
        if out.is_null() {
            return fail(BcdStatus::NullPointer, "null output pointer");
        }
        let text = match c_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match netlist_from_json(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(BcdNetlist { inner }));
                BcdStatus::Ok
            }
            Err(e) => fail(BcdStatus::ParseError, e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_free(handle: *mut BcdNetlist) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Writes the number of primary inputs and outputs.
///
/// # Safety
/// `handle` must be a live handle; the counts must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_shape(
    handle: *const BcdNetlist,
    inputs: *mut usize,
    outputs: *mut usize,
) -> BcdStatus {
    guard(|| {
        let Some(nl) = netlist_ref(handle) else {
            return fail(BcdStatus::NullPointer, "null netlist");
        };
        if inputs.is_null() || outputs.is_null() {
            return fail(BcdStatus::NullPointer, "null output pointer");
        }
        *inputs = nl.inputs().len();
        *outputs = nl.outputs().len();
        BcdStatus::Ok
    })
}

/// Evaluates one input vector. Bits are bytes (0 or 1) in primary-input
/// order; outputs are written the same way.
///
/// # Safety
/// `inputs` must hold `n_inputs` bytes and `outputs` room for `n_outputs`.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_evaluate(
    handle: *const BcdNetlist,
    inputs: *const u8,
    n_inputs: usize,
    outputs: *mut u8,
    n_outputs: usize,
) -> BcdStatus {
    guard(|| {
        let Some(nl) = netlist_ref(handle) else {
            return fail(BcdStatus::NullPointer, "null netlist");
        };
        if inputs.is_null() || outputs.is_null() {
            return fail(BcdStatus::NullPointer, "null buffer");
        }
        if n_outputs != nl.outputs().len() {
            return fail(
                BcdStatus::InvalidArgument,
                format!(
                    "netlist has {} outputs, buffer holds {n_outputs}",
                    nl.outputs().len()
                ),
            );
        }
        let bits: Vec<bool> = std::slice::from_raw_parts(inputs, n_inputs)
            .iter()
            .map(|&b| b != 0)
            .collect();
        match nl.evaluate(&bits) {
            Ok(values) => {
                let dst = std::slice::from_raw_parts_mut(outputs, n_outputs);
                for (d, v) in dst.iter_mut().zip(values) {
                    *d = u8::from(v);
                }
                BcdStatus::Ok
            }
            Err(e) => fail(BcdStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Total transistor count under the default cost model.
///
/// # Safety
/// `handle` must be a live handle and `total` writable.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_transistor_cost(
    handle: *const BcdNetlist,
    total: *mut u32,
) -> BcdStatus {
    guard(|| {
        let Some(nl) = netlist_ref(handle) else {
            return fail(BcdStatus::NullPointer, "null netlist");
        };
        if total.is_null() {
            return fail(BcdStatus::NullPointer, "null output pointer");
        }
        match transistor_cost(nl, &CostModel::default()) {
            Ok(report) => {
                *total = report.total;
                BcdStatus::Ok
            }
            Err(e) => fail(BcdStatus::AnalysisFailed, e.to_string()),
        }
    })
}

/// Longest input-to-output path under the default unit-delay model.
///
/// # Safety
/// `handle` must be a live handle and `depth` writable.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_delay_topological(
    handle: *const BcdNetlist,
    depth: *mut u64,
) -> BcdStatus {
    guard(|| {
        let Some(nl) = netlist_ref(handle) else {
            return fail(BcdStatus::NullPointer, "null netlist");
        };
        if depth.is_null() {
            return fail(BcdStatus::NullPointer, "null output pointer");
        }
        match delay_topological(nl, &DelayModel::default()) {
            Ok(report) => {
                *depth = report.max_depth();
                BcdStatus::Ok
            }
            Err(e) => fail(BcdStatus::AnalysisFailed, e.to_string()),
        }
    })
}

/// Exhaustive check against the circuit's arithmetic oracle. A completed
/// check returns `Ok` even when vectors fail; compare `passed` to `vectors`.
///
/// # Safety
/// `handle` must be a live handle; `passed` and `vectors` writable.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_check(
    handle: *const BcdNetlist,
    passed: *mut u64,
    vectors: *mut u64,
) -> BcdStatus {
    guard(|| {
        let Some(nl) = netlist_ref(handle) else {
            return fail(BcdStatus::NullPointer, "null netlist");
        };
        if passed.is_null() || vectors.is_null() {
            return fail(BcdStatus::NullPointer, "null output pointer");
        }
        let Some(oracle) = Oracle::for_netlist(nl) else {
            return fail(
                BcdStatus::InvalidArgument,
                format!("no oracle for `{}`", nl.name()),
            );
        };
        let space = match oracle {
            Oracle::BcdAdd { digits } => InputSpace::BcdValid { digits },
            _ => InputSpace::AllBinary {
                width: nl.inputs().len(),
            },
        };
        if space.size() > MAX_EXHAUSTIVE_VECTORS {
            return fail(
                BcdStatus::InvalidArgument,
                "input space too large for an exhaustive check",
            );
        }
        match exhaustive_check(nl, oracle, space) {
            Ok(report) => {
                *passed = report.passed;
                *vectors = report.vectors;
                BcdStatus::Ok
            }
            Err(e) => fail(BcdStatus::AnalysisFailed, e.to_string()),
        }
    })
}

/// Canonical JSON document; free with `bcd_string_free`.
///
/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bcd_netlist_to_json(
    handle: *const BcdNetlist,
    out: *mut *mut c_char,
) -> BcdStatus {
    guard(|| {
        let Some(nl) = netlist_ref(handle) else {
            return fail(BcdStatus::NullPointer, "null netlist");
        };
        if out.is_null() {
            return fail(BcdStatus::NullPointer, "null output pointer");
        }
        match CString::new(netlist_to_json(nl)) {
            Ok(s) => {
                *out = s.into_raw();
                BcdStatus::Ok
            }
            Err(_) => fail(BcdStatus::AnalysisFailed, "document contains a NUL byte"),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bcd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
