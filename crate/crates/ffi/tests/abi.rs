use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use distfactor_ffi::*;

fn last_error() -> String {
    let p = df_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(text: &str) -> *mut DfGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { df_graph_from_graph6(text.as_ptr(), &mut g) }, DfStatus::Ok);
    g
}

#[test]
fn k4_round_trip_and_spectra() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(df_graph_new(4, &mut g), DfStatus::Ok);
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert_eq!(df_graph_add_edge(g, u, v), DfStatus::Ok);
        }
        let mut m = 0;
        assert_eq!(df_graph_edge_count(g, &mut m), DfStatus::Ok);
        assert_eq!(m, 6);
        let mut s = ptr::null_mut();
        assert_eq!(df_graph_to_graph6(g, &mut s), DfStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "C~");
        df_string_free(s);
        let mut lambda = 0.0;
        assert_eq!(df_distance_spectral_radius(g, &mut lambda), DfStatus::Ok);
        assert!((lambda - 3.0).abs() < 1e-9);
        let mut mu = 0.0;
        assert_eq!(df_dq_spectral_radius(g, &mut mu), DfStatus::Ok);
        assert!((mu - 6.0).abs() < 1e-9);
        df_graph_free(g);

        let h = parse("C~");
        let mut n = 0;
        assert_eq!(df_graph_order(h, &mut n), DfStatus::Ok);
        assert_eq!(n, 4);
        df_graph_free(h);
    }
}

#[test]
fn oracles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(df_graph_new(6, &mut g), DfStatus::Ok);
        for i in 0..6 {
            df_graph_add_edge(g, i, (i + 1) % 6);
        }
        let mut yes = false;
        assert_eq!(df_has_perfect_matching(g, &mut yes), DfStatus::Ok);
        assert!(yes);
        assert_eq!(df_has_k_factor(g, 2, &mut yes), DfStatus::Ok);
        assert!(yes);
        assert_eq!(df_has_fractional_ab_factor(g, 1, 1, &mut yes), DfStatus::Ok);
        assert!(yes);
        // every C6 − e is P6, which has a perfect matching
        assert_eq!(df_is_fractional_ab_deleted(g, 1, 3, &mut yes), DfStatus::Ok);
        assert!(yes);
        assert_eq!(df_is_id_factor_critical(g, &mut yes), DfStatus::Ok);
        assert!(!yes);
        df_graph_free(g);
    }
}

#[test]
fn certify_extremal_graph() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(df_extremal_gr(11, 1, &mut g), DfStatus::Ok);
        let mut verdict = DfVerdict::Consistent;
        let mut json = ptr::null_mut();
        let status = df_certify(g, DfTheorem::IdFactorCritical, 1, 0, &mut verdict, &mut json);
        assert_eq!(status, DfStatus::Ok);
        assert_eq!(verdict, DfVerdict::ExtremalException);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"verdict\":\"extremal_exception\""));
        df_string_free(json);
        df_graph_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let bad = CString::new("~~").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(df_graph_from_graph6(bad.as_ptr(), &mut g), DfStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("graph6"));

        assert_eq!(df_graph_new(3, &mut g), DfStatus::Ok);
        assert_eq!(df_graph_add_edge(g, 0, 7), DfStatus::InvalidArgument);
        assert_eq!(df_graph_add_edge(g, 1, 1), DfStatus::InvalidArgument);
        let mut x = 0.0;
        assert_eq!(df_distance_spectral_radius(g, &mut x), DfStatus::Disconnected);
        assert_eq!(df_distance_spectral_radius(g, ptr::null_mut()), DfStatus::Disconnected);
        let mut yes = false;
        assert_eq!(df_has_k_factor(g, 0, &mut yes), DfStatus::InvalidArgument);
        assert_eq!(df_has_k_factor(ptr::null(), 1, &mut yes), DfStatus::NullPointer);
        assert_eq!(df_graph_order(g, ptr::null_mut()), DfStatus::NullPointer);
        assert!(last_error().contains("null"));
        let mut n = 0;
        assert_eq!(df_graph_order(g, &mut n), DfStatus::Ok);
        assert!(df_last_error_message().is_null());
        assert_eq!(n, 3);

        let mut big = ptr::null_mut();
        assert_eq!(df_graph_new(30, &mut big), DfStatus::Ok);
        assert_eq!(df_is_id_factor_critical(big, &mut yes), DfStatus::TooLarge);
        df_graph_free(big);
        df_graph_free(g);
        df_graph_free(ptr::null_mut());
        df_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/distfactor.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["df_graph_from_graph6", "df_certify", "df_last_error_message", "DF_STATUS_TOO_LARGE"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let src = std::env::temp_dir().join(format!("distfactor_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        format!("#include \"{}\"\nint main(void) {{ DfGraph *g = 0; return df_graph_new(3, &g) == DF_STATUS_OK ? 0 : 1; }}\n", header.display()),
    )
    .unwrap();
    match Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&src).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler on PATH; skipping syntax check"),
    }
    let _ = std::fs::remove_file(src);
}
