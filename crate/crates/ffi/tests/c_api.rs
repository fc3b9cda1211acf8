use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use triangle_forge_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { tf_string_free(s) };
    owned
}

fn seq(lit: &str) -> *mut TfSeq {
    let c = CString::new(lit).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tf_seq_parse(c.as_ptr(), &mut out) }, TfStatus::Ok);
    out
}

fn last_error() -> String {
    let p = tf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sequence_round_trip_and_conv() {
    let a = seq("0:1,1");
    let mut sq = ptr::null_mut();
    unsafe {
        assert_eq!(tf_seq_conv_power(a, 3, &mut sq), TfStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(tf_seq_to_string(sq, &mut s), TfStatus::Ok);
        assert_eq!(take(s), "0:1,3,3,1");
        let mut lc = false;
        assert_eq!(tf_seq_is_log_concave(sq, &mut lc), TfStatus::Ok);
        assert!(lc);
        let mut c = ptr::null_mut();
        assert_eq!(tf_seq_conv(a, sq, &mut c), TfStatus::Ok);
        assert_eq!(tf_seq_to_string(c, &mut s), TfStatus::Ok);
        assert_eq!(take(s), "0:1,4,6,4,1");
        tf_seq_free(c);
        tf_seq_free(sq);
        tf_seq_free(a);
    }
}

#[test]
fn non_log_concave_is_reported() {
    let a = seq("0:1,0,1");
    let mut lc = true;
    let mut uni = true;
    unsafe {
        assert_eq!(tf_seq_is_log_concave(a, &mut lc), TfStatus::Ok);
        assert_eq!(tf_seq_is_unimodal(a, &mut uni), TfStatus::Ok);
        tf_seq_free(a);
    }
    assert!(!lc);
    assert!(!uni);
}

#[test]
fn parse_errors_set_status_and_message() {
    let bad = CString::new("0:1,x").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tf_seq_parse(bad.as_ptr(), &mut out) }, TfStatus::Parse);
    assert!(out.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { tf_seq_parse(ptr::null(), &mut out) }, TfStatus::NullPointer);
    let mut flag = false;
    assert_eq!(unsafe { tf_seq_is_log_concave(ptr::null(), &mut flag) }, TfStatus::NullPointer);

    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { tf_seq_parse(invalid.as_ptr(), &mut out) }, TfStatus::InvalidUtf8);

    let ok = seq("0:1");
    assert!(tf_last_error_message().is_null());
    unsafe { tf_seq_free(ok) };
}

#[test]
fn random_sequences_are_log_concave() {
    let bound = CString::new("3/2").unwrap();
    for seed in 0..10 {
        let mut s = ptr::null_mut();
        let mut lc = false;
        unsafe {
            assert_eq!(tf_seq_random_log_concave(6, seed, bound.as_ptr(), &mut s), TfStatus::Ok);
            assert_eq!(tf_seq_is_log_concave(s, &mut lc), TfStatus::Ok);
            tf_seq_free(s);
        }
        assert!(lc);
    }
    let neg = CString::new("-1").unwrap();
    let mut s = ptr::null_mut();
    assert_ne!(unsafe { tf_seq_random_log_concave(4, 0, neg.as_ptr(), &mut s) }, TfStatus::Ok);
}

#[test]
fn delannoy_methods_agree() {
    let (b, c, d) = (CString::new("1").unwrap(), CString::new("1").unwrap(), CString::new("1").unwrap());
    let mut csv = Vec::new();
    for method in [TfDelannoyMethod::Recursion, TfDelannoyMethod::Convolution, TfDelannoyMethod::Series] {
        let mut t = ptr::null_mut();
        unsafe {
            assert_eq!(tf_triangle_delannoy(method, b.as_ptr(), c.as_ptr(), d.as_ptr(), 5, &mut t), TfStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(tf_triangle_to_csv(t, &mut s), TfStatus::Ok);
            csv.push(take(s));
            let mut e = ptr::null_mut();
            assert_eq!(tf_triangle_entry(t, 4, 2, &mut e), TfStatus::Ok);
            assert_eq!(take(e), "13");
            tf_triangle_free(t);
        }
    }
    assert_eq!(csv[0], csv[1]);
    assert_eq!(csv[0], csv[2]);
}

#[test]
fn triangle_json_round_trip_and_verify() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(tf_triangle_pascal(6, &mut t), TfStatus::Ok);
        let mut depth = 0;
        assert_eq!(tf_triangle_depth(t, &mut depth), TfStatus::Ok);
        assert_eq!(depth, 6);
        let mut json = ptr::null_mut();
        assert_eq!(tf_triangle_to_json(t, &mut json), TfStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(tf_triangle_from_json(json, &mut back), TfStatus::Ok);
        tf_string_free(json);

        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(tf_verify_rows_log_concave(back, &mut passed, &mut report), TfStatus::Ok);
        assert!(passed);
        let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(report["passed"], true);
        tf_triangle_free(back);
        tf_triangle_free(t);
    }
}

#[test]
fn convolution_array_and_lemma_check() {
    let a = seq("0:1,2,1");
    let q = seq("0:1,1");
    let bad = seq("0:1,0,1");
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(tf_triangle_convolution_array(a, q, 5, &mut t), TfStatus::Ok);
        let mut passed = false;
        assert_eq!(tf_verify_rows_log_concave(t, &mut passed, ptr::null_mut()), TfStatus::Ok);
        assert!(passed);
        tf_triangle_free(t);

        assert_eq!(tf_verify_lemma31(a, q, 4, 6, &mut passed, ptr::null_mut()), TfStatus::Ok);
        assert!(passed);
        assert_eq!(tf_verify_lemma31(bad, q, 4, 6, &mut passed, ptr::null_mut()), TfStatus::HypothesisNotMet);

        assert_eq!(tf_verify_menon_pairing(a, q, -1, &mut passed, ptr::null_mut()), TfStatus::Ok);
        assert!(passed);

        let zero = seq("zero");
        let mut t = ptr::null_mut();
        assert_eq!(tf_triangle_convolution_array(zero, q, 3, &mut t), TfStatus::InvalidArgument);
        tf_seq_free(zero);
        tf_seq_free(bad);
        tf_seq_free(q);
        tf_seq_free(a);
    }
}

#[test]
fn two_sided_terms() {
    let parse = |lit: &str| {
        let c = CString::new(lit).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { tf_tail_parse(c.as_ptr(), &mut out) }, TfStatus::Ok);
        out
    };
    let a = parse("L1/2|0:1|R1/2");
    let ones = parse("L1|0:1|R1");
    unsafe {
        let mut lc = false;
        assert_eq!(tf_tail_is_log_concave(a, &mut lc), TfStatus::Ok);
        assert!(lc);
        let mut s = ptr::null_mut();
        assert_eq!(tf_tail_convolution_term(a, a, 0, &mut s), TfStatus::Ok);
        assert_eq!(take(s), "finite 5/3");
        assert_eq!(tf_tail_convolution_term(ones, ones, 0, &mut s), TfStatus::Ok);
        assert!(take(s).starts_with("divergent"));
        tf_tail_free(ones);
        tf_tail_free(a);
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/triangle_forge.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["tf_seq_parse", "tf_triangle_delannoy", "tf_verify_lemma31", "TF_STATUS_HYPOTHESIS_NOT_MET"] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() else {
        eprintln!("cc not found, skipping syntax check");
        return;
    };
    assert!(status.success());
}
