//! C ABI over `homlab`. Every fallible call returns an `HlStatus`; on
//! failure `hl_last_error_message` describes the error on the calling
//! thread. Objects are opaque and released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use homlab::families::FamilySpec;
use homlab::hom::{self, HomPoset};
use homlab::homology::{self, Field, HomologyResult};
use homlab::{graph, Error, Extended, Graph, Guards};

pub struct HlGraph(Graph);

pub struct HlHomPoset(HomPoset);

pub struct HlHomology(HomologyResult);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    GuardExceeded = 3,
    Overflow = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlField {
    Z = 0,
    Gf2 = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HlStatus {
    match e {
        Error::GuardExceeded { .. } => HlStatus::GuardExceeded,
        Error::Overflow => HlStatus::Overflow,
        _ => HlStatus::InvalidInput,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (HlStatus, String)>) -> HlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HlStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            HlStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (HlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (HlStatus, String) {
    (HlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (HlStatus, String)> {
    if s.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (HlStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, v: T) {
    *out = Box::into_raw(Box::new(v));
}

fn to_c_string(s: String) -> Result<*mut c_char, (HlStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (HlStatus::InvalidInput, "string contains a NUL byte".into()))
}

/// Message for the last failed call on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"n": .., "edges": [[u, v], ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_graph_from_json(json: *const c_char, out: *mut *mut HlGraph) -> HlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let g = Graph::from_json(read_str(json, "json")?).map_err(lib_err)?;
        write_out(out, HlGraph(g));
        Ok(())
    })
}

/// Builds a named family such as `T(1,3)`, `S(1,1)`, `K(4)` or `C1(6)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_graph_family(spec: *const c_char, out: *mut *mut HlGraph) -> HlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let spec: FamilySpec = read_str(spec, "spec")?.parse().map_err(lib_err)?;
        let g = spec.build(&Guards::default()).map_err(lib_err)?;
        write_out(out, HlGraph(g));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hl_graph_free(g: *mut HlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn hl_graph_vertex_count(g: *const HlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Writes a newly allocated JSON string to `out`; free it with
/// `hl_string_free`.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_graph_to_json(g: *const HlGraph, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null_err("graph"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = to_c_string(g.0.to_json())?;
        Ok(())
    })
}

/// Exact chromatic number; -1 when a loop makes it infinite.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_chromatic_number(g: *const HlGraph, out: *mut i64) -> HlStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null_err("graph"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = match graph::chromatic_number(&g.0) {
            Extended::Finite(k) => k as i64,
            Extended::Infinite => -1,
        };
        Ok(())
    })
}

/// Enumerates `Hom(source, target)`. `max_elements` of 0 keeps the
/// default guard.
///
/// # Safety
/// Both graphs must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_hom_poset(
    source: *const HlGraph,
    target: *const HlGraph,
    max_elements: usize,
    out: *mut *mut HlHomPoset,
) -> HlStatus {
    guard(|| {
        let s = source.as_ref().ok_or_else(|| null_err("source"))?;
        let t = target.as_ref().ok_or_else(|| null_err("target"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let mut guards = Guards::default();
        if max_elements > 0 {
            guards.hom_elements = max_elements;
        }
        let hp = hom::hom_poset(&s.0, &t.0, &guards).map_err(lib_err)?;
        write_out(out, HlHomPoset(hp));
        Ok(())
    })
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_hom_poset_len(p: *const HlHomPoset) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hl_hom_poset_free(p: *mut HlHomPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Reduced homology of the order complex of a Hom poset.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_hom_homology(p: *const HlHomPoset, field: HlField, out: *mut *mut HlHomology) -> HlStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null_err("hom poset"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let field = match field {
            HlField::Z => Field::Z,
            HlField::Gf2 => Field::Gf2,
        };
        let h = homology::poset_homology(p.0.poset(), field, &Guards::default()).map_err(lib_err)?;
        write_out(out, HlHomology(h));
        Ok(())
    })
}

/// Top degree of the complex; -1 when it is empty.
///
/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_homology_dim(h: *const HlHomology) -> i64 {
    h.as_ref().map_or(-1, |h| h.0.dim)
}

/// Reduced Betti number in `degree` (which may be -1).
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_homology_betti(h: *const HlHomology, degree: i64) -> usize {
    h.as_ref().map_or(0, |h| h.0.betti_at(degree))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_homology_to_json(h: *const HlHomology, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null_err("homology"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = to_c_string(h.0.to_json())?;
        Ok(())
    })
}

/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hl_homology_free(h: *mut HlHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

