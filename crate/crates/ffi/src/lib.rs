//! C interface to pmfactor.
//!
//! Graphs and families are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns a [`PmfStatus`];
//! on failure a message is available from [`pmf_last_error_message`] on the
//! same thread. Strings returned through out-parameters are released with
//! [`pmf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pmfactor::decompose::{decompose, DecomposeError, DecomposeOptions, Strategy};
use pmfactor::family::verify_family;
use pmfactor::generators::{gen_named, Family, GeneratorSpec};
use pmfactor::graph::{d_threshold, Graph};
use pmfactor::io::{parse_family, parse_graph, write_family, write_graph};
use pmfactor::matching::Matching;

/// Opaque graph handle.
pub struct PmfGraph(Graph);

/// Opaque handle to a family of edge-disjoint perfect matchings.
pub struct PmfFamily(Vec<Matching>);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmfStatus {
    Ok = 0,
    NullArgument = 1,
    /// Malformed text, bad edge list, or an unknown name.
    InvalidInput = 2,
    /// The input is outside the operation's hypotheses.
    Precondition = 3,
    /// The family does not verify.
    VerifyFailed = 4,
    /// The target is provably out of reach; the family holds the best found.
    TargetUnreachable = 5,
    /// The search gave up; the family holds the best found.
    BudgetExhausted = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmfStrategy {
    Peel = 0,
    Proof = 1,
    Exact = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn fail(status: PmfStatus, msg: impl Into<String>) -> PmfStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> PmfStatus) -> PmfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == PmfStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(PmfStatus::Panic, "panic inside pmfactor"),
    }
}

unsafe fn text_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, PmfStatus> {
    if p.is_null() {
        return Err(fail(PmfStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(PmfStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library text has no nul bytes").into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pmf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pmf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Graph on `n` vertices from `edge_count` pairs laid out as
/// `u0, v0, u1, v1, ...`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` values (or be null when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut PmfGraph,
) -> PmfStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return fail(PmfStatus::NullArgument, "null pointer argument");
        }
        let flat: &[usize] = if edge_count == 0 { &[] } else { std::slice::from_raw_parts(edges, 2 * edge_count) };
        match Graph::new(n, flat.chunks(2).map(|p| (p[0], p[1]))) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PmfGraph(g)));
                PmfStatus::Ok
            }
            Err(e) => fail(PmfStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Parses the text format `n m` followed by one `u v` line per edge.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_graph_parse(text: *const c_char, out: *mut *mut PmfGraph) -> PmfStatus {
    guard(|| {
        if out.is_null() {
            return fail(PmfStatus::NullArgument, "out is null");
        }
        let text = match text_arg(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_graph(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PmfGraph(g)));
                PmfStatus::Ok
            }
            Err(e) => fail(PmfStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Builds a named graph family (`sharp-g1`, `random-semiregular`, ...).
/// `k` is the base degree for `random-semiregular`; 0 picks the threshold.
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_graph_generate(
    family: *const c_char,
    n: usize,
    k: usize,
    seed: u64,
    out: *mut *mut PmfGraph,
) -> PmfStatus {
    guard(|| {
        if out.is_null() {
            return fail(PmfStatus::NullArgument, "out is null");
        }
        let name = match text_arg(family, "family") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let Some(family) = Family::from_name(name) else {
            return fail(PmfStatus::InvalidInput, format!("unknown family {name:?}"));
        };
        let k = if k == 0 { d_threshold(n).unwrap_or(0) } else { k };
        match gen_named(&GeneratorSpec { family, n, k, seed }) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PmfGraph(g)));
                PmfStatus::Ok
            }
            Err(e) => fail(PmfStatus::Precondition, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pmf_graph_free(g: *mut PmfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmf_graph_order(g: *const PmfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Number of edges; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmf_graph_edge_count(g: *const PmfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.size())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_graph_to_text(g: *const PmfGraph, out: *mut *mut c_char) -> PmfStatus {
    guard(|| match (g.as_ref(), out.is_null()) {
        (Some(g), false) => {
            *out = into_c_string(write_graph(&g.0));
            PmfStatus::Ok
        }
        _ => fail(PmfStatus::NullArgument, "null pointer argument"),
    })
}

/// `2⌈n/4⌉ - 1` for even `n`, 0 for odd `n`.
#[no_mangle]
pub extern "C" fn pmf_d_threshold(n: usize) -> usize {
    d_threshold(n).unwrap_or(0)
}

/// Searches for `target` edge-disjoint perfect matchings. On
/// `TargetUnreachable` and `BudgetExhausted` `*out` still receives the best
/// family found; on other failures it is set to null.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_decompose(
    g: *const PmfGraph,
    target: usize,
    strategy: PmfStrategy,
    seed: u64,
    out: *mut *mut PmfFamily,
) -> PmfStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(PmfStatus::NullArgument, "null pointer argument");
        };
        *out = ptr::null_mut();
        let strategy = match strategy {
            PmfStrategy::Peel => Strategy::Peel,
            PmfStrategy::Proof => Strategy::Proof,
            PmfStrategy::Exact => Strategy::Exact,
        };
        let opts = DecomposeOptions::new(target, strategy).seed(seed);
        match decompose(&g.0, &opts) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(PmfFamily(r.family.matchings)));
                PmfStatus::Ok
            }
            Err(e) => {
                if let Some(r) = e.partial() {
                    *out = Box::into_raw(Box::new(PmfFamily(r.family.matchings.clone())));
                }
                let status = match &e {
                    DecomposeError::OddOrder(_) | DecomposeError::PreconditionViolated(_) => PmfStatus::Precondition,
                    DecomposeError::TargetUnreachable { .. } => PmfStatus::TargetUnreachable,
                    DecomposeError::BudgetExhausted(_) => PmfStatus::BudgetExhausted,
                    DecomposeError::Oracle(_) => PmfStatus::Precondition,
                };
                let msg = match &e {
                    DecomposeError::TargetUnreachable { reason, .. } => reason.clone(),
                    other => other.to_string(),
                };
                fail(status, msg)
            }
        }
    })
}

/// Number of matchings; 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmf_family_len(f: *const PmfFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// Copies the edges of matching `index` as `u0, v0, u1, v1, ...` into
/// `buf`, which holds `capacity` values. `*written` receives the number of
/// values the matching needs; nothing is copied when it exceeds `capacity`.
///
/// # Safety
/// `f` must be a live handle, `buf` must hold `capacity` values, and
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_family_matching(
    f: *const PmfFamily,
    index: usize,
    buf: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> PmfStatus {
    guard(|| {
        let (Some(f), false) = (f.as_ref(), written.is_null()) else {
            return fail(PmfStatus::NullArgument, "null pointer argument");
        };
        let Some(m) = f.0.get(index) else {
            return fail(PmfStatus::InvalidInput, format!("index {index} out of range for {} matchings", f.0.len()));
        };
        let flat: Vec<usize> = m.edges().iter().flat_map(|e| e.ends()).collect();
        *written = flat.len();
        if flat.len() > capacity {
            return fail(PmfStatus::InvalidInput, format!("buffer holds {capacity} values, need {}", flat.len()));
        }
        if !flat.is_empty() {
            if buf.is_null() {
                return fail(PmfStatus::NullArgument, "buf is null");
            }
            ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
        }
        PmfStatus::Ok
    })
}

/// Family in the text format: one `u-v` line per edge, matchings separated
/// by `--` lines.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_family_to_text(f: *const PmfFamily, out: *mut *mut c_char) -> PmfStatus {
    guard(|| match (f.as_ref(), out.is_null()) {
        (Some(f), false) => {
            *out = into_c_string(write_family(&f.0));
            PmfStatus::Ok
        }
        _ => fail(PmfStatus::NullArgument, "null pointer argument"),
    })
}

/// # Safety
/// `f` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pmf_family_free(f: *mut PmfFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Checks that `family_text` lists edge-disjoint perfect matchings of `g`.
/// Returns `VerifyFailed` with the first violation as the error message.
///
/// # Safety
/// `g` must be a live handle; `family_text` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pmf_verify(g: *const PmfGraph, family_text: *const c_char) -> PmfStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return fail(PmfStatus::NullArgument, "g is null");
        };
        let text = match text_arg(family_text, "family_text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let family = match parse_family(text, g.0.order()) {
            Ok(f) => f,
            Err(e) => return fail(PmfStatus::InvalidInput, e.to_string()),
        };
        match verify_family(&g.0, &family) {
            Ok(()) => PmfStatus::Ok,
            Err(v) => fail(PmfStatus::VerifyFailed, v.to_string()),
        }
    })
}
