//! C ABI over `distfactor`.
//!
//! Every function returns a [`DfStatus`] and writes results through out
//! pointers. On failure the message is available from
//! [`df_last_error_message`] until the next call on the same thread.
//! Graphs are opaque [`DfGraph`] handles freed with [`df_graph_free`];
//! strings returned to the caller are freed with [`df_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use distfactor::certify::{certify, TheoremSpec, Verdict};
use distfactor::factors::{
    fractional_ab_factor, has_k_factor, is_fractional_ab_deleted, is_id_factor_critical, max_matching,
};
use distfactor::graph::build_extremal_gr;
use distfactor::io::{from_graph6, to_graph6};
use distfactor::spectra::{distance_spectral_radius, dq_spectral_radius};
use distfactor::{Error, Graph};

/// Opaque graph handle.
pub struct DfGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Disconnected = 3,
    TooLarge = 4,
    Parse = 5,
    NonConvergence = 6,
    OracleDisagreement = 7,
    Panic = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfTheorem {
    /// Parameter `p1 = r`.
    IdFactorCritical = 0,
    /// Parameters `p1 = a`, `p2 = b`.
    FractionalAb = 1,
    /// Parameters `p1 = a`, `p2 = b`.
    AbDeleted = 2,
    /// Parameter `p1 = k`.
    KFactor = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfVerdict {
    Consistent = 0,
    Vacuous = 1,
    ExtremalException = 2,
    Counterexample = 3,
    Boundary = 4,
    Inapplicable = 5,
}

impl From<Verdict> for DfVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Consistent => DfVerdict::Consistent,
            Verdict::Vacuous => DfVerdict::Vacuous,
            Verdict::ExtremalException => DfVerdict::ExtremalException,
            Verdict::Counterexample => DfVerdict::Counterexample,
            Verdict::Boundary => DfVerdict::Boundary,
            Verdict::Inapplicable => DfVerdict::Inapplicable,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> DfStatus {
    match e {
        Error::InvalidParameter(_)
        | Error::UnknownVertex { .. }
        | Error::UnknownEdge(..)
        | Error::SelfLoop(_)
        | Error::InvalidMatrix(_)
        | Error::InvalidPartition(_)
        | Error::NotBipartite(_)
        | Error::NotEquitable => DfStatus::InvalidArgument,
        Error::DisconnectedGraph | Error::ComplementDisconnected => DfStatus::Disconnected,
        Error::TooLarge { .. } => DfStatus::TooLarge,
        Error::Graph6 { .. } | Error::EdgeList { .. } => DfStatus::Parse,
        Error::NonConvergence { .. } => DfStatus::NonConvergence,
        Error::OracleDisagreement(_) => DfStatus::OracleDisagreement,
        Error::Io(_) => DfStatus::Internal,
    }
}

/// Runs `f`, clearing the last error first and recording any failure.
fn guard(f: impl FnOnce() -> Result<(), (DfStatus, String)>) -> DfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside distfactor");
            DfStatus::Panic
        }
    }
}

fn lib<T>(r: distfactor::Result<T>) -> Result<T, (DfStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (DfStatus, String) {
    (DfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const DfGraph) -> Result<&'a Graph, (DfStatus, String)> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), (DfStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_handle(g: Graph) -> *mut DfGraph {
    Box::into_raw(Box::new(DfGraph { inner: g }))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next `df_` call on the same thread.
#[no_mangle]
pub extern "C" fn df_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn df_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Edgeless graph on `n` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_graph_new(n: usize, out: *mut *mut DfGraph) -> DfStatus {
    guard(|| write(out, into_handle(Graph::empty(n)), "out"))
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn df_graph_free(g: *mut DfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Adds edge `uv`; repeated edges are ignored.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn df_graph_add_edge(g: *mut DfGraph, u: usize, v: usize) -> DfStatus {
    guard(|| {
        let h = g.as_mut().ok_or_else(|| null("graph"))?;
        let n = h.inner.order();
        if u >= n || v >= n {
            return lib(Err(Error::UnknownVertex { vertex: u.max(v), order: n }));
        }
        if u == v {
            return lib(Err(Error::SelfLoop(u)));
        }
        h.inner.add_edge(u, v);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_graph_order(g: *const DfGraph, out: *mut usize) -> DfStatus {
    guard(|| write(out, graph_ref(g)?.order(), "out"))
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_graph_edge_count(g: *const DfGraph, out: *mut usize) -> DfStatus {
    guard(|| write(out, graph_ref(g)?.edge_count(), "out"))
}

/// # Safety
/// `text` must be a nul-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_graph_from_graph6(text: *const c_char, out: *mut *mut DfGraph) -> DfStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| (DfStatus::Parse, e.to_string()))?;
        let g = lib(from_graph6(text.trim()))?;
        write(out, into_handle(g), "out")
    })
}

/// graph6 encoding; free the result with [`df_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_graph_to_graph6(g: *const DfGraph, out: *mut *mut c_char) -> DfStatus {
    guard(|| write(out, into_c_string(to_graph6(graph_ref(g)?)), "out"))
}

/// The extremal graph `G^(r)` on `n` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_extremal_gr(n: usize, r: usize, out: *mut *mut DfGraph) -> DfStatus {
    guard(|| write(out, into_handle(lib(build_extremal_gr(n, r))?.0), "out"))
}

/// `λ₁(D(G))`; the graph must be connected.
///
/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_distance_spectral_radius(g: *const DfGraph, out: *mut f64) -> DfStatus {
    guard(|| write(out, lib(distance_spectral_radius(graph_ref(g)?))?.value, "out"))
}

/// `μ₁(D^Q(G))`; the graph must be connected.
///
/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_dq_spectral_radius(g: *const DfGraph, out: *mut f64) -> DfStatus {
    guard(|| write(out, lib(dq_spectral_radius(graph_ref(g)?))?.value, "out"))
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_has_perfect_matching(g: *const DfGraph, out: *mut bool) -> DfStatus {
    guard(|| write(out, lib(max_matching(graph_ref(g)?))?.exists, "out"))
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_has_k_factor(g: *const DfGraph, k: usize, out: *mut bool) -> DfStatus {
    guard(|| write(out, lib(has_k_factor(graph_ref(g)?, k))?.exists, "out"))
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_has_fractional_ab_factor(
    g: *const DfGraph,
    a: usize,
    b: usize,
    out: *mut bool,
) -> DfStatus {
    guard(|| write(out, lib(fractional_ab_factor(graph_ref(g)?, a, b))?.exists, "out"))
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_is_fractional_ab_deleted(
    g: *const DfGraph,
    a: usize,
    b: usize,
    out: *mut bool,
) -> DfStatus {
    guard(|| write(out, lib(is_fractional_ab_deleted(graph_ref(g)?, a, b))?.exists, "out"))
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_is_id_factor_critical(g: *const DfGraph, out: *mut bool) -> DfStatus {
    guard(|| write(out, lib(is_id_factor_critical(graph_ref(g)?))?.critical, "out"))
}

/// Certifies one theorem on `g`. Writes the verdict to `verdict` and, when
/// `report_json` is non-null, the full report as JSON (free it with
/// [`df_string_free`]). Unused parameters are ignored.
///
/// # Safety
/// `g` must be a live handle; `verdict` valid for writes; `report_json`
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn df_certify(
    g: *const DfGraph,
    theorem: DfTheorem,
    p1: usize,
    p2: usize,
    verdict: *mut DfVerdict,
    report_json: *mut *mut c_char,
) -> DfStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let spec = match theorem {
            DfTheorem::IdFactorCritical => TheoremSpec::IdFactorCritical { r: p1 },
            DfTheorem::FractionalAb => TheoremSpec::FractionalAb { a: p1, b: p2 },
            DfTheorem::AbDeleted => TheoremSpec::AbDeleted { a: p1, b: p2 },
            DfTheorem::KFactor => TheoremSpec::KFactor { k: p1 },
        };
        let rep = lib(certify(g, spec))?;
        verdict.write(rep.verdict.into());
        if !report_json.is_null() {
            let text = serde_json::to_string(&rep).map_err(|e| (DfStatus::Internal, e.to_string()))?;
            report_json.write(into_c_string(text));
        }
        Ok(())
    })
}
