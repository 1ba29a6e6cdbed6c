//! C ABI over the fourcolor workbench.
//!
//! Handles are opaque pointers owned by Rust; every constructor has a
//! matching `_free`. Functions that can fail return null (for handles) or an
//! [`FcStatus`] code, and leave a message retrievable through
//! [`fc_last_error`] on the calling thread. Strings returned as `char*` are
//! owned by the caller and released with [`fc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fourcolor::colorer::{four_color, Budget, Coloring};
use fourcolor::graph::{RotationGraph, VertexId};
use fourcolor::oracle;
use fourcolor::workbench::fixtures::{gen_fixture, Fixture};
use fourcolor::workbench::format::{emit_rotation_json, parse_instance};
use fourcolor::workbench::gen::{gen_with_mode, GenMode};

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl AsRef<str>) {
    let sanitized: String = msg.as_ref().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Status codes shared by all fallible entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    Disconnected = 5,
    Internal = 6,
}

/// Opaque plane graph handle.
pub struct FcGraph(RotationGraph);

/// Opaque coloring handle.
pub struct FcColoring(Coloring);

/// Outcome summary of one coloring run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FcColorSummary {
    pub colors_used: u32,
    pub palette_size: u8,
    pub gap_events: u64,
    pub used_kempe_fallback: bool,
}

/// Verifier verdict; `violating_u`/`violating_w` are -1 when proper.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FcVerifyResult {
    pub proper: bool,
    pub violating_u: i64,
    pub violating_w: i64,
    pub colors_used: u32,
}

/// Message describing the most recent failure on this thread. Borrowed;
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, FcStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(FcStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        FcStatus::InvalidUtf8
    })
}

fn guarded<T>(f: impl FnOnce() -> *mut T) -> *mut T {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(p) => p,
        Err(_) => {
            set_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// Parses an instance file (rotation-system JSON or `p/e` edge list).
/// The instance must be connected.
///
/// # Safety
/// `text` must point to a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fc_graph_parse(text: *const c_char) -> *mut FcGraph {
    let Ok(text) = read_utf8(text) else {
        return ptr::null_mut();
    };
    guarded(|| match parse_instance(text) {
        Ok(instance) => match instance.sole_graph() {
            Some(g) => Box::into_raw(Box::new(FcGraph(g.clone()))),
            None => {
                set_error("instance is disconnected; the C API takes one component at a time");
                ptr::null_mut()
            }
        },
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    })
}

/// Random triangulation with `n >= 4` vertices; `flipped != 0` runs the
/// diagonal flip walk after stacking.
#[no_mangle]
pub extern "C" fn fc_graph_generate(n: u32, seed: u64, flipped: i32) -> *mut FcGraph {
    let mode = if flipped != 0 {
        GenMode::Flipped
    } else {
        GenMode::Stacked
    };
    guarded(|| match gen_with_mode(n, seed, mode) {
        Ok(g) => Box::into_raw(Box::new(FcGraph(g))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    })
}

/// Named fixture: k4, octahedron, icosahedron, errera, glued-k4s, wheel(d),
/// bipyramid(d).
///
/// # Safety
/// `name` must point to a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fc_graph_fixture(name: *const c_char) -> *mut FcGraph {
    let Ok(name) = read_utf8(name) else {
        return ptr::null_mut();
    };
    guarded(|| match name.parse::<Fixture>() {
        Ok(f) => Box::into_raw(Box::new(FcGraph(gen_fixture(&f)))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    })
}

/// # Safety
/// `g` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn fc_graph_free(g: *mut FcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn fc_graph_vertex_count(g: *const FcGraph) -> u32 {
    g.as_ref().map_or(0, |g| g.0.vertex_count() as u32)
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn fc_graph_edge_count(g: *const FcGraph) -> u32 {
    g.as_ref().map_or(0, |g| g.0.edge_count() as u32)
}

/// Canonical rotation-system JSON of the graph; free with `fc_string_free`.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn fc_graph_to_json(g: *const FcGraph) -> *mut c_char {
    let Some(g) = g.as_ref() else {
        set_error("null pointer argument");
        return ptr::null_mut();
    };
    let json = emit_rotation_json(&g.0, None, None);
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// Runs the inductive four-coloring. `attempts_per_call` of 0 selects the
/// default budget. The summary is optional.
///
/// # Safety
/// `g` must be a live graph handle; `summary` may be null.
#[no_mangle]
pub unsafe extern "C" fn fc_four_color(
    g: *const FcGraph,
    attempts_per_call: u32,
    summary: *mut FcColorSummary,
) -> *mut FcColoring {
    let Some(g) = g.as_ref() else {
        set_error("null pointer argument");
        return ptr::null_mut();
    };
    let mut budget = Budget::default();
    if attempts_per_call > 0 {
        budget.attempts_per_call = attempts_per_call;
    }
    guarded(|| {
        let (coloring, trace) = four_color(&g.0, &budget);
        if let Some(out) = summary.as_mut() {
            *out = FcColorSummary {
                colors_used: coloring.colors_used() as u32,
                palette_size: coloring.palette_size(),
                gap_events: trace.gap_events(),
                used_kempe_fallback: trace.used_kempe_fallback(),
            };
        }
        Box::into_raw(Box::new(FcColoring(coloring)))
    })
}

/// Heawood's guaranteed five-coloring.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn fc_kempe_five_color(g: *const FcGraph) -> *mut FcColoring {
    let Some(g) = g.as_ref() else {
        set_error("null pointer argument");
        return ptr::null_mut();
    };
    guarded(|| Box::into_raw(Box::new(FcColoring(oracle::kempe_five_color(&g.0)))))
}

/// Color of `vertex` (1..=5), or -1 when the vertex is absent or uncolored.
///
/// # Safety
/// `c` must be a live coloring handle.
#[no_mangle]
pub unsafe extern "C" fn fc_coloring_get(c: *const FcColoring, vertex: u32) -> i32 {
    c.as_ref()
        .and_then(|c| c.0.get(vertex as VertexId))
        .map_or(-1, |c| c as i32)
}

/// # Safety
/// `c` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn fc_coloring_free(c: *mut FcColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Checks a coloring against a graph.
///
/// # Safety
/// `g` and `c` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_verify(
    g: *const FcGraph,
    c: *const FcColoring,
    out: *mut FcVerifyResult,
) -> FcStatus {
    let (Some(g), Some(c), Some(out)) = (g.as_ref(), c.as_ref(), out.as_mut()) else {
        set_error("null pointer argument");
        return FcStatus::NullPointer;
    };
    match oracle::verify(&g.0, &c.0) {
        Ok(report) => {
            let (u, w) = report
                .violating_edge
                .map_or((-1, -1), |(u, w)| (u as i64, w as i64));
            *out = FcVerifyResult {
                proper: report.proper,
                violating_u: u,
                violating_w: w,
                colors_used: report.colors_used,
            };
            FcStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            FcStatus::InvalidArgument
        }
    }
}

/// Structured atlas report for rings of length 4 or 5 as a JSON document;
/// free with `fc_string_free`.
#[no_mangle]
pub extern "C" fn fc_atlas_report_json(d: u32) -> *mut c_char {
    guarded(|| match fourcolor::atlas::atlas_report(d as usize) {
        Ok(report) => {
            let json = serde_json::to_string(&report).expect("report serializes");
            CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
        }
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    })
}

/// # Safety
/// `s` must be a string returned by this library (or null).
#[no_mangle]
pub unsafe extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn end_to_end_over_the_c_surface() {
        let g = fc_graph_generate(30, 9, 1);
        assert!(!g.is_null());
        unsafe {
            assert_eq!(fc_graph_vertex_count(g), 30);
            assert_eq!(fc_graph_edge_count(g), 84);
            let mut summary = FcColorSummary {
                colors_used: 0,
                palette_size: 0,
                gap_events: 0,
                used_kempe_fallback: false,
            };
            let c = fc_four_color(g, 0, &mut summary);
            assert!(!c.is_null());
            assert!(summary.colors_used <= 5);
            let mut verdict = FcVerifyResult {
                proper: false,
                violating_u: 0,
                violating_w: 0,
                colors_used: 0,
            };
            assert_eq!(fc_verify(g, c, &mut verdict), FcStatus::Ok);
            assert!(verdict.proper);
            for v in 0..30 {
                assert!((1..=5).contains(&fc_coloring_get(c, v)));
            }
            fc_coloring_free(c);
            fc_graph_free(g);
        }
    }

    #[test]
    fn parse_and_fixture_paths() {
        let text = CString::new("p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n").unwrap();
        unsafe {
            let g = fc_graph_parse(text.as_ptr());
            assert!(!g.is_null());
            let json = fc_graph_to_json(g);
            assert!(!json.is_null());
            fc_string_free(json);
            fc_graph_free(g);

            let name = CString::new("errera").unwrap();
            let e = fc_graph_fixture(name.as_ptr());
            assert_eq!(fc_graph_vertex_count(e), 17);
            let k = fc_kempe_five_color(e);
            let mut verdict = FcVerifyResult {
                proper: false,
                violating_u: 0,
                violating_w: 0,
                colors_used: 0,
            };
            assert_eq!(fc_verify(e, k, &mut verdict), FcStatus::Ok);
            assert!(verdict.proper);
            fc_coloring_free(k);
            fc_graph_free(e);

            let bad = CString::new("dodecahedron").unwrap();
            assert!(fc_graph_fixture(bad.as_ptr()).is_null());
            let msg = std::ffi::CStr::from_ptr(fc_last_error());
            assert!(msg.to_str().unwrap().contains("unknown fixture"));
        }
    }

    #[test]
    fn atlas_json_is_served() {
        let s = fc_atlas_report_json(5);
        assert!(!s.is_null());
        unsafe {
            let text = std::ffi::CStr::from_ptr(s).to_str().unwrap().to_string();
            assert!(text.contains("\"total_configs\":783"));
            fc_string_free(s);
        }
        assert!(fc_atlas_report_json(6).is_null());
    }
}
