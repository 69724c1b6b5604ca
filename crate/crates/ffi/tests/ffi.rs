use std::ffi::{CStr, CString};
use std::ptr;

use homlab_ffi::*;

fn family(spec: &str) -> *mut HlGraph {
    let s = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { hl_graph_family(s.as_ptr(), &mut g) }, HlStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hl_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn graph_round_trip() {
    let g = family("T(1,3)");
    assert_eq!(unsafe { hl_graph_vertex_count(g) }, 6);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hl_graph_to_json(g, &mut json) }, HlStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { hl_graph_from_json(json, &mut back) }, HlStatus::Ok);
    assert_eq!(unsafe { hl_graph_vertex_count(back) }, 6);
    let mut chi = 0;
    assert_eq!(unsafe { hl_chromatic_number(back, &mut chi) }, HlStatus::Ok);
    assert_eq!(chi, 3);
    unsafe {
        hl_string_free(json);
        hl_graph_free(g);
        hl_graph_free(back);
    }
}

#[test]
fn looped_graph_has_infinite_chromatic_number() {
    let g = family("C1(4)");
    let mut chi = 0;
    assert_eq!(unsafe { hl_chromatic_number(g, &mut chi) }, HlStatus::Ok);
    assert_eq!(chi, -1);
    unsafe { hl_graph_free(g) };
}

#[test]
fn hom_homology_of_k2_k4() {
    let (k2, k4) = (family("K(2)"), family("K(4)"));
    let mut hp = ptr::null_mut();
    assert_eq!(unsafe { hl_hom_poset(k2, k4, 0, &mut hp) }, HlStatus::Ok);
    assert_eq!(unsafe { hl_hom_poset_len(hp) }, 50);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { hl_hom_homology(hp, HlField::Z, &mut h) }, HlStatus::Ok);
    assert_eq!(unsafe { hl_homology_dim(h) }, 2);
    let betti: Vec<usize> = (-1..=2).map(|d| unsafe { hl_homology_betti(h, d) }).collect();
    assert_eq!(betti, vec![0, 0, 0, 1]);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hl_homology_to_json(h, &mut json) }, HlStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert!(text.contains("\"field\":\"Z\""), "{text}");
    unsafe {
        hl_string_free(json);
        hl_homology_free(h);
        hl_hom_poset_free(hp);
        hl_graph_free(k2);
        hl_graph_free(k4);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("Q(3)").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { hl_graph_family(bad.as_ptr(), &mut g) }, HlStatus::InvalidInput);
    assert!(g.is_null());
    assert!(last_error().contains("Q(3)"));
    assert_eq!(unsafe { hl_graph_from_json(ptr::null(), &mut g) }, HlStatus::NullPointer);
    let mut chi = 0;
    assert_eq!(unsafe { hl_chromatic_number(ptr::null(), &mut chi) }, HlStatus::NullPointer);
    assert_eq!(unsafe { hl_graph_vertex_count(ptr::null()) }, 0);

    let (k2, k5) = (family("K(2)"), family("K(5)"));
    let mut hp = ptr::null_mut();
    assert_eq!(unsafe { hl_hom_poset(k2, k5, 10, &mut hp) }, HlStatus::GuardExceeded);
    assert!(last_error().contains("guard"));
    unsafe {
        hl_graph_free(k2);
        hl_graph_free(k5);
        hl_graph_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/homlab.h")).unwrap();
    for name in [
        "typedef struct HlGraph HlGraph",
        "HL_STATUS_GUARD_EXCEEDED",
        "hl_graph_from_json",
        "hl_hom_homology",
        "hl_last_error_message",
        "hl_string_free",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
