//! C ABI over the `rainbowpath` library.
//!
//! Graphs cross the boundary as opaque `RpGraph` handles. Every fallible
//! function returns an `RpStatus`; on failure `rp_last_error_message` holds a
//! description for the calling thread. Strings returned through `char **`
//! out-parameters must be released with `rp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rainbowpath::chromatic::chromatic_number;
use rainbowpath::constructive::theorem2_colorful_path;
use rainbowpath::gen_io::{decode_graph6, encode_graph6, kneser_graph, mycielski_graph, random_triangle_free};
use rainbowpath::harness::{check_graph, HarnessConfig};
use rainbowpath::oracle::{longest_induced_path, longest_induced_rainbow_path, OnExceed, SearchBudget};
use rainbowpath::{ColoredGraph, Coloring, Error, Graph, Path};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    ImproperColoring = 5,
    NotTriangleFree = 6,
    Disconnected = 7,
    TooLarge = 8,
    BudgetExceeded = 9,
    Io = 10,
    Panic = 11,
}

/// Opaque graph handle.
pub struct RpGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(RpStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match &err {
            Error::VertexOutOfRange { .. }
            | Error::SelfLoop(_)
            | Error::NotAPath(_)
            | Error::Unreachable(_)
            | Error::InvalidGrading(_)
            | Error::InvalidParameter(_) => RpStatus::InvalidArgument,
            Error::PartialColoring { .. } | Error::ZeroColor(_) | Error::ImproperColoring(..) => {
                RpStatus::ImproperColoring
            }
            Error::TooLargeForExact { .. } => RpStatus::TooLarge,
            Error::BudgetExceeded(_) => RpStatus::BudgetExceeded,
            Error::NotTriangleFree(..) => RpStatus::NotTriangleFree,
            Error::Disconnected => RpStatus::Disconnected,
            Error::Graph6(_) | Error::Parse(_) => RpStatus::Parse,
            Error::Io(_) => RpStatus::Io,
        };
        Failure(status, err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RpStatus::NullPointer, format!("{what} is null"))
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            RpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            RpStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const RpGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null("graph"))
}

unsafe fn store_graph(out: *mut *mut RpGraph, graph: Graph) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(RpGraph { graph }));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| Failure(RpStatus::InvalidArgument, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn colored(g: &Graph, colors: *const u32) -> Result<ColoredGraph, Failure> {
    if colors.is_null() {
        return Err(null("colors"));
    }
    let colors = std::slice::from_raw_parts(colors, g.vertex_count()).to_vec();
    Ok(ColoredGraph::new(g.clone(), Coloring::new(colors)?)?)
}

/// Writes the path into a caller buffer of capacity `vertex_count`.
unsafe fn store_path(path: &Path, out_vertices: *mut usize, out_len: *mut usize) -> Result<(), Failure> {
    if out_vertices.is_null() || out_len.is_null() {
        return Err(null("path output"));
    }
    let v = path.vertices();
    ptr::copy_nonoverlapping(v.as_ptr(), out_vertices, v.len());
    *out_len = v.len();
    Ok(())
}

fn budget(max_nodes: u64) -> SearchBudget {
    SearchBudget { max_vertices: 64, max_nodes, on_exceed: OnExceed::Error }
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn rp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn rp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_graph_from_graph6(text: *const c_char, out: *mut *mut RpGraph) -> RpStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| Failure(RpStatus::InvalidUtf8, e.to_string()))?;
        store_graph(out, decode_graph6(text)?)
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable entries (may be NULL when zero).
#[no_mangle]
pub unsafe extern "C" fn rp_graph_from_edges(
    vertex_count: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut RpGraph,
) -> RpStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        store_graph(out, Graph::from_edges(vertex_count, &pairs)?)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_generate_cycle(n: usize, out: *mut *mut RpGraph) -> RpStatus {
    guard(|| store_graph(out, Graph::cycle(n)?))
}

/// Mycielski graph with chromatic number `chi` (at least 2).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_generate_mycielski(chi: usize, out: *mut *mut RpGraph) -> RpStatus {
    guard(|| store_graph(out, mycielski_graph(chi)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_generate_kneser(n: usize, k: usize, out: *mut *mut RpGraph) -> RpStatus {
    guard(|| store_graph(out, kneser_graph(n, k)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_generate_random_triangle_free(
    n: usize,
    p: f64,
    seed: u64,
    out: *mut *mut RpGraph,
) -> RpStatus {
    guard(|| store_graph(out, random_triangle_free(n, p, seed)?))
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp_graph_free(g: *mut RpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Returns 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rp_graph_vertex_count(g: *const RpGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.vertex_count())
}

/// Returns 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rp_graph_edge_count(g: *const RpGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_graph_to_graph6(g: *const RpGraph, out: *mut *mut c_char) -> RpStatus {
    guard(|| store_string(out, encode_graph6(graph_ref(g)?)))
}

/// Exact chromatic number. If `out_coloring` is non-NULL it receives an
/// optimal coloring (`vertex_count` entries, colors from 1).
///
/// # Safety
/// `g` must be a live handle; `out_coloring` must be NULL or hold `vertex_count` entries.
#[no_mangle]
pub unsafe extern "C" fn rp_chromatic_number(g: *const RpGraph, out_chi: *mut u32, out_coloring: *mut u32) -> RpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out_chi.is_null() {
            return Err(null("out_chi"));
        }
        let result = chromatic_number(g)?;
        *out_chi = result.chi as u32;
        if !out_coloring.is_null() {
            let c = result.witness.colors();
            ptr::copy_nonoverlapping(c.as_ptr(), out_coloring, c.len());
        }
        Ok(())
    })
}

/// Longest induced path. `out_vertices` must hold `vertex_count` entries.
///
/// # Safety
/// `g` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_longest_induced_path(
    g: *const RpGraph,
    max_nodes: u64,
    out_vertices: *mut usize,
    out_len: *mut usize,
) -> RpStatus {
    guard(|| {
        let result = longest_induced_path(graph_ref(g)?, &budget(max_nodes))?;
        store_path(&result.path, out_vertices, out_len)
    })
}

/// Longest induced path whose vertices all have distinct colors.
///
/// # Safety
/// `colors` must hold `vertex_count` entries; `out_vertices` must hold `vertex_count` entries.
#[no_mangle]
pub unsafe extern "C" fn rp_longest_induced_rainbow_path(
    g: *const RpGraph,
    colors: *const u32,
    max_nodes: u64,
    out_vertices: *mut usize,
    out_len: *mut usize,
) -> RpStatus {
    guard(|| {
        let cg = colored(graph_ref(g)?, colors)?;
        let result = longest_induced_rainbow_path(&cg, &budget(max_nodes))?;
        store_path(&result.path, out_vertices, out_len)
    })
}

/// Induced path from `start` built by the color-class recursion, for a
/// connected triangle-free graph with chromatic number at least `chi_lb`.
///
/// # Safety
/// `colors` and `out_vertices` must hold `vertex_count` entries; other outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_colorful_path(
    g: *const RpGraph,
    colors: *const u32,
    start: usize,
    chi_lb: usize,
    out_vertices: *mut usize,
    out_len: *mut usize,
    out_color_count: *mut usize,
) -> RpStatus {
    guard(|| {
        if out_color_count.is_null() {
            return Err(null("out_color_count"));
        }
        let cg = colored(graph_ref(g)?, colors)?;
        let result = theorem2_colorful_path(&cg, start, chi_lb)?;
        store_path(&result.path, out_vertices, out_len)?;
        *out_color_count = result.color_count;
        Ok(())
    })
}

/// Sweeps up to `cap` canonical optimal colorings and writes the JSON report.
///
/// # Safety
/// `g` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_check_graph_json(
    g: *const RpGraph,
    cap: usize,
    seed: u64,
    thorough: bool,
    out_json: *mut *mut c_char,
) -> RpStatus {
    guard(|| {
        let cfg = HarnessConfig { coloring_cap: cap, seed, thorough, ..HarnessConfig::default() };
        let report = check_graph(graph_ref(g)?, &cfg, "ffi")?;
        let json = serde_json::to_string(&report).map_err(|e| Failure(RpStatus::Io, e.to_string()))?;
        store_string(out_json, json)
    })
}
