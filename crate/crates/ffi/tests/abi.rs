use std::ffi::{CStr, CString};
use std::ptr;

use hermite_genocchi_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hg_last_error()) }.to_str().unwrap().to_owned()
}

fn geometric() -> *mut HgDistribution {
    let json = c(r#"{"r": 1, "m": 2, "alphas": [0.5], "gamma": 0, "beta": 0, "n": 0}"#);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { hg_distribution_new(json.as_ptr(), 256, &mut d) }, HgStatus::Ok);
    assert!(!d.is_null());
    d
}

#[test]
fn family_eval_half_genocchi() {
    let (zero, one, minus_one) = (c("0"), c("1"), c("-1"));
    let mut out = ptr::null_mut();
    let status = unsafe {
        hg_family_eval(0, 1, zero.as_ptr(), one.as_ptr(), one.as_ptr(), minus_one.as_ptr(), zero.as_ptr(), zero.as_ptr(), 2, 2, &mut out)
    };
    assert_eq!(status, HgStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(out) }.to_str().unwrap(), "-1/2");
    unsafe { hg_string_free(out) };
}

#[test]
fn family_eval_reports_the_bad_parameter() {
    let (zero, one) = (c("0"), c("1"));
    let mut out = ptr::null_mut();
    let status = unsafe {
        hg_family_eval(0, 0, zero.as_ptr(), one.as_ptr(), one.as_ptr(), one.as_ptr(), zero.as_ptr(), zero.as_ptr(), 2, 2, &mut out)
    };
    assert_eq!(status, HgStatus::InvalidParameter);
    assert!(out.is_null());
    assert!(last_error().contains("alpha"), "{}", last_error());
    let status = unsafe {
        hg_family_eval(0, 0, ptr::null(), one.as_ptr(), one.as_ptr(), one.as_ptr(), zero.as_ptr(), zero.as_ptr(), 2, 2, &mut out)
    };
    assert_eq!(status, HgStatus::NullPointer);
}

#[test]
fn geometric_distribution() {
    let d = geometric();
    unsafe {
        assert_eq!(hg_distribution_rank(d), 1);
        let x = [3u64];
        let mut v = 0.0;
        assert_eq!(hg_distribution_pmf(d, x.as_ptr(), 1, &mut v), HgStatus::Ok);
        assert!((v - 1.0 / 16.0).abs() < 1e-15);
        assert_eq!(hg_distribution_reliability(d, x.as_ptr(), 1, &mut v), HgStatus::Ok);
        assert!((v - 0.125).abs() < 1e-15);
        let mut h = [0.0; 1];
        assert_eq!(hg_distribution_hazard(d, x.as_ptr(), 1, h.as_mut_ptr(), 1), HgStatus::Ok);
        assert!((h[0] - 0.5).abs() < 1e-15);
        assert_eq!(hg_distribution_hazard(d, x.as_ptr(), 1, h.as_mut_ptr(), 0), HgStatus::BufferTooSmall);
        assert_eq!(hg_distribution_cdf(d, 0, 0, &mut v), HgStatus::Ok);
        assert!((v - 0.5).abs() < 1e-12, "{v}");
        let (mut mean, mut var) = (0.0, 0.0);
        assert_eq!(hg_distribution_mean_variance(d, 0, &mut mean, &mut var), HgStatus::Ok);
        assert!((mean - 1.0).abs() < 1e-12 && (var - 2.0).abs() < 1e-12);
        for method in [HgNormalizerMethod::Series, HgNormalizerMethod::HomogeneousReduction, HgNormalizerMethod::LatticeBruteforce] {
            assert_eq!(hg_distribution_normalizer(d, method, &mut v), HgStatus::Ok);
            assert!((v - 0.25).abs() < 1e-12);
        }
        assert_eq!(hg_distribution_pmf(d, x.as_ptr(), 2, &mut v), HgStatus::InvalidParameter);
        hg_distribution_free(d);
        assert_eq!(hg_distribution_pmf(ptr::null(), x.as_ptr(), 1, &mut v), HgStatus::NullPointer);
    }
}

#[test]
fn divergent_parameters_are_rejected() {
    let json = c(r#"{"r": 1, "m": 2, "alphas": [1.5], "gamma": 0, "beta": 0, "n": 0}"#);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { hg_distribution_new(json.as_ptr(), 256, &mut d) }, HgStatus::DivergentSum);
    assert!(d.is_null());
    assert!(last_error().contains("diverges"));
}

#[test]
fn verify_small_suite() {
    let suite = c(r#"{"theorems": ["T120", "SC7"], "seed": 3, "max_n": 4, "max_r": 2, "points_per_theorem": 2}"#);
    let mut report = ptr::null_mut();
    let mut passed = false;
    assert_eq!(unsafe { hg_verify_suite(suite.as_ptr(), &mut report, &mut passed) }, HgStatus::Ok);
    assert!(passed);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe { hg_string_free(report) };
    let reports: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 20);
    let bad = c("{");
    assert_eq!(unsafe { hg_verify_suite(bad.as_ptr(), &mut report, &mut passed) }, HgStatus::Usage);
}
