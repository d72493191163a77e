//! C ABI over `cyclic_blocks`.
//!
//! Every entry point returns a [`CbStatus`] and writes its result through an
//! out-pointer. On failure a message is kept per thread and can be read with
//! [`cb_last_error_message`]. Handles and strings returned by the library
//! must be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclic_blocks::cyclotomic::CyclicCharacter;
use cyclic_blocks::local::{self, CyclicGroup, EndoPermParams};
use cyclic_blocks::oracle::{self, GridSpec};
use cyclic_blocks::report;
use cyclic_blocks::tree::{Block, BlockDescriptor, SignPolicy, TreeError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    ValidationError = 3,
    /// The computation finished but an internal consistency check failed.
    /// Output, if any, is still written.
    ConsistencyError = 4,
    InternalError = 5,
}

/// A validated block descriptor.
pub struct CbBlock {
    block: Block,
}

/// Multiplicities of the irreducible characters `λ_0, ..., λ_(p^n - 1)`.
pub struct CbCharacter {
    mults: Vec<i64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CbStatus, String);

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure(CbStatus::InvalidArgument, msg.into())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<CbStatus, Failure>) -> CbStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CbStatus::InternalError
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::invalid("null string"));
    }
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|_| Failure::invalid("string is not valid UTF-8"))
}

unsafe fn read_slice<'a, T>(data: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(Failure::invalid("null array with nonzero length"));
    }
    Ok(unsafe { std::slice::from_raw_parts(data, len) })
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::invalid("null output pointer"))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure(CbStatus::InternalError, "output contains NUL".into()))
}

unsafe fn local_params(
    p: u64,
    n: u32,
    indices: *const u32,
    len: usize,
) -> Result<(CyclicGroup, EndoPermParams), Failure> {
    let g = CyclicGroup::new(p, n).map_err(|e| Failure::invalid(e.to_string()))?;
    let w = EndoPermParams::new(unsafe { read_slice(indices, len) }?.to_vec())
        .map_err(|e| Failure::invalid(e.to_string()))?;
    w.check_general(&g).map_err(|e| Failure::invalid(e.to_string()))?;
    Ok((g, w))
}

fn box_character(chi: CyclicCharacter, out: *mut *mut CbCharacter) {
    let handle = Box::new(CbCharacter { mults: chi.into_mults() });
    unsafe { *out = Box::into_raw(handle) };
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn cb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and validates a JSON block descriptor. With `strict`, equal signs
/// on adjacent vertices are rejected instead of logged.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cb_block_from_json(json: *const c_char, strict: bool, out: *mut *mut CbBlock) -> CbStatus {
    guard(|| {
        check_out(out)?;
        let text = unsafe { read_str(json) }?;
        let desc = BlockDescriptor::from_json(text).map_err(|e| Failure(CbStatus::ParseError, e.to_string()))?;
        let policy = if strict { SignPolicy::Strict } else { SignPolicy::Lax };
        let block = Block::new(desc, policy).map_err(|e| match e {
            TreeError::Invalid(_) => Failure(CbStatus::ValidationError, e.to_string()),
            other => Failure::invalid(other.to_string()),
        })?;
        unsafe { *out = Box::into_raw(Box::new(CbBlock { block })) };
        Ok(CbStatus::Ok)
    })
}

/// # Safety
/// `block` must be null or a handle from [`cb_block_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cb_block_free(block: *mut CbBlock) {
    if !block.is_null() {
        drop(unsafe { Box::from_raw(block) });
    }
}

/// Enumeration table as JSON for vertex `D_vertex`, or for every vertex when
/// `vertex < 0`. Returns `ConsistencyError` with the partial table written
/// when a vertex does not yield the expected number of modules.
///
/// # Safety
/// `block` must be a live handle and `out` a valid pointer. The string must be
/// released with [`cb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cb_block_enumerate_json(
    block: *const CbBlock,
    vertex: i32,
    out: *mut *mut c_char,
) -> CbStatus {
    guard(|| {
        check_out(out)?;
        let block = &unsafe { block.as_ref() }.ok_or_else(|| Failure::invalid("null block"))?.block;
        let vertices = match u32::try_from(vertex) {
            Err(_) => report::all_vertices(block),
            Ok(i) if i > block.n() => {
                return Err(Failure::invalid(format!("vertex index {i} is outside [0, {}]", block.n())))
            }
            Ok(i) => vec![i],
        };
        let table = report::build_table(block, &vertices);
        unsafe { *out = to_c_string(table.to_json())? };
        if table.is_consistent() {
            Ok(CbStatus::Ok)
        } else {
            let msg: Vec<String> = table.vertices.iter().filter_map(|v| v.error.clone()).collect();
            set_error(&msg.join("; "));
            Ok(CbStatus::ConsistencyError)
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// `ℓ_i`, the dimension of `Cap(Res_(D_i)(W))`, for `W` given by its
/// strictly increasing indices.
///
/// # Safety
/// `indices` must point to `len` values (or be null with `len = 0`) and
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cb_cap_dim(
    p: u64,
    n: u32,
    indices: *const u32,
    len: usize,
    vertex: u32,
    out: *mut u64,
) -> CbStatus {
    guard(|| {
        check_out(out)?;
        let (g, w) = unsafe { local_params(p, n, indices, len) }?;
        let dim = local::cap_dim(&w, &g, vertex).map_err(|e| Failure::invalid(e.to_string()))?;
        unsafe { *out = dim };
        Ok(CbStatus::Ok)
    })
}

/// Character of the determinant-one lift of `W`.
///
/// # Safety
/// As for [`cb_cap_dim`]; the handle must be released with [`cb_character_free`].
#[no_mangle]
pub unsafe extern "C" fn cb_det1_character(
    p: u64,
    n: u32,
    indices: *const u32,
    len: usize,
    out: *mut *mut CbCharacter,
) -> CbStatus {
    guard(|| {
        check_out(out)?;
        let (g, w) = unsafe { local_params(p, n, indices, len) }?;
        let chi = local::char_det1_endoperm(&w, &g).map_err(|e| Failure::invalid(e.to_string()))?;
        box_character(chi, out);
        Ok(CbStatus::Ok)
    })
}

/// Character of the lift of the local trivial source module with vertex `D_vertex`.
///
/// # Safety
/// As for [`cb_det1_character`].
#[no_mangle]
pub unsafe extern "C" fn cb_morita_character(
    p: u64,
    n: u32,
    indices: *const u32,
    len: usize,
    vertex: u32,
    out: *mut *mut CbCharacter,
) -> CbStatus {
    guard(|| {
        check_out(out)?;
        let (g, w) = unsafe { local_params(p, n, indices, len) }?;
        let chi = local::morita_correspondent_character(&w, &g, vertex).map_err(|e| Failure::invalid(e.to_string()))?;
        box_character(chi, out);
        Ok(CbStatus::Ok)
    })
}

/// Number of multiplicities, `p^n`; 0 for a null handle.
///
/// # Safety
/// `chi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cb_character_len(chi: *const CbCharacter) -> usize {
    unsafe { chi.as_ref() }.map_or(0, |c| c.mults.len())
}

/// Borrowed pointer to the multiplicities, valid while the handle lives.
///
/// # Safety
/// `chi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cb_character_data(chi: *const CbCharacter) -> *const i64 {
    unsafe { chi.as_ref() }.map_or(ptr::null(), |c| c.mults.as_ptr())
}

/// # Safety
/// `chi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cb_character_free(chi: *mut CbCharacter) {
    if !chi.is_null() {
        drop(unsafe { Box::from_raw(chi) });
    }
}

/// Runs the consistency grid and writes its JSON report. Returns
/// `ConsistencyError`, report included, when any check fails.
///
/// # Safety
/// `primes` must point to `primes_len` values and `out` must be valid. The
/// string must be released with [`cb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cb_oracle_run_json(
    primes: *const u64,
    primes_len: usize,
    n_max: u32,
    seed: u64,
    corpus_size: usize,
    out: *mut *mut c_char,
) -> CbStatus {
    guard(|| {
        check_out(out)?;
        let primes = unsafe { read_slice(primes, primes_len) }?.to_vec();
        if let Some(&bad) = primes.iter().find(|&&p| CyclicGroup::new(p, 1).is_err()) {
            return Err(Failure::invalid(format!("{bad} is not an odd prime")));
        }
        let spec = GridSpec { primes, n_max, seed, corpus_size, ..GridSpec::default() };
        let report = oracle::consistency_suite(&spec);
        let json =
            serde_json::to_string_pretty(&report).map_err(|e| Failure(CbStatus::InternalError, e.to_string()))?;
        unsafe { *out = to_c_string(json)? };
        if report.passed() {
            Ok(CbStatus::Ok)
        } else {
            set_error(&format!("{} consistency checks failed", report.failures.len()));
            Ok(CbStatus::ConsistencyError)
        }
    })
}
