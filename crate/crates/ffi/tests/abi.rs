use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use donlat_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { donlat_string_free(s) };
    out
}

fn last_error() -> String {
    let p = donlat_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn class(v: &[i64]) -> *mut DonlatClass {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { donlat_class_new(v.as_ptr(), v.len(), &mut out) }, DonlatStatus::Ok);
    out
}

#[test]
fn class_round_trip() {
    let x = class(&[0, -2, -1, -1]);
    assert_eq!(unsafe { donlat_class_rank(x) }, 4);
    let mut buf = [0i64; 4];
    assert_eq!(unsafe { donlat_class_coeffs(x, buf.as_mut_ptr(), 4) }, DonlatStatus::Ok);
    assert_eq!(buf, [0, -2, -1, -1]);
    assert_eq!(unsafe { donlat_class_coeffs(x, buf.as_mut_ptr(), 2) }, DonlatStatus::Malformed);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { donlat_class_classify_json(x, &mut json) }, DonlatStatus::Ok);
    assert_eq!(take(json), r#"{"kind":"B","i":1,"I":[2,3]}"#);
    unsafe { donlat_class_free(x) };

    let bad = class(&[1, 1, 0]);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { donlat_class_classify_json(bad, &mut json) }, DonlatStatus::Invalid);
    assert_eq!(take(json), r#"{"kind":"none","defect":-2}"#);
    unsafe { donlat_class_free(bad) };
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { donlat_class_new(ptr::null(), 3, &mut out) }, DonlatStatus::NullPointer);
    assert!(last_error().contains("coeffs"));
    assert_eq!(unsafe { donlat_class_new([0i64].as_ptr(), 0, &mut out) }, DonlatStatus::Malformed);

    let (a, b) = (class(&[1, 0]), class(&[1, 0, 0]));
    let mut m = 0;
    assert_eq!(unsafe { donlat_class_intersect(a, b, &mut m) }, DonlatStatus::Malformed);
    assert!(last_error().contains("rank mismatch"));
    unsafe {
        donlat_class_free(a);
        donlat_class_free(b);
    }

    let mut c = ptr::null_mut();
    let json = CString::new("{not json").unwrap();
    assert_eq!(unsafe { donlat_cycle_from_json(json.as_ptr(), &mut c) }, DonlatStatus::Malformed);
    assert!(c.is_null());
    let name = CString::new("nope").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { donlat_fixture_json(name.as_ptr(), &mut s) }, DonlatStatus::Malformed);
    assert!(last_error().contains("unknown fixture"));
}

#[test]
fn cycles_and_divisors() {
    let name = CString::new("kato522332").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { donlat_fixture_json(name.as_ptr(), &mut s) }, DonlatStatus::Ok);
    let fixture: serde_json::Value = serde_json::from_str(&take(s)).unwrap();

    let divisor = CString::new(fixture["config"].to_string()).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { donlat_divisor_from_json(divisor.as_ptr(), &mut d) }, DonlatStatus::Ok);
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { donlat_divisor_validate(d, &mut report) }, DonlatStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(report["trace"].as_array().unwrap().last().unwrap(), &serde_json::json!([0, 2, 3, 4, 5]));
    unsafe { donlat_divisor_free(d) };

    let cycle = CString::new(fixture["config"]["cycle"].to_string()).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { donlat_cycle_from_json(cycle.as_ptr(), &mut c) }, DonlatStatus::Ok);
    assert_eq!(unsafe { donlat_cycle_validate(c, ptr::null_mut()) }, DonlatStatus::Ok);
    let (mut v, mut value) = (DonlatVerdict::Inadmissible, 0);
    assert_eq!(unsafe { donlat_cycle_betti(c, &mut v, &mut value) }, DonlatStatus::Ok);
    assert_eq!((v, value), (DonlatVerdict::PartitionCase, 6));

    let (mut json, mut next) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { donlat_cycle_smooth(c, 0, &mut json, &mut next) }, DonlatStatus::Ok);
    let rec: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(rec["exceptional"], serde_json::json!([0, 0, 0, 0, 1, 0]));
    let (mut json, mut last) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { donlat_cycle_smooth(next, 0, &mut json, &mut last) }, DonlatStatus::Ok);
    assert!(take(json).contains("\"elliptic\""));
    assert!(last.is_null());
    unsafe {
        donlat_cycle_free(next);
        donlat_cycle_free(c);
    }

    let invalid = CString::new(r#"{"n":2,"curves":[[1,0],[0,1]]}"#).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { donlat_cycle_from_json(invalid.as_ptr(), &mut c) }, DonlatStatus::Ok);
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { donlat_cycle_validate(c, &mut report) }, DonlatStatus::Invalid);
    assert!(take(report).contains("wrong_intersection"));
    assert_eq!(unsafe { donlat_cycle_betti(c, &mut v, &mut value) }, DonlatStatus::Invalid);
    unsafe { donlat_cycle_free(c) };
}

#[test]
fn census_matches_core() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { donlat_census_tsv(3, 5, &mut s) }, DonlatStatus::Ok);
    let rows = donlat::oracle::census(3, 5).unwrap();
    assert_eq!(take(s), donlat::oracle::census_tsv(&rows));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { donlat_census_tsv(3, 2, &mut s) }, DonlatStatus::Malformed);
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        donlat_class_free(ptr::null_mut());
        donlat_cycle_free(ptr::null_mut());
        donlat_divisor_free(ptr::null_mut());
        donlat_string_free(ptr::null_mut());
        assert_eq!(donlat_class_rank(ptr::null()), 0);
        assert_eq!(donlat_cycle_validate(ptr::null(), ptr::null_mut()), DonlatStatus::NullPointer);
    }
}

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok()?.status.success().then_some(cc)
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_is_valid_c() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    let include = manifest_dir().join("include");
    let out = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(manifest_dir().join("tests/c/smoke.c"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_against_the_static_library() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libdonlat_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let bin = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("donlat_smoke");
    let out = Command::new(cc)
        .args(["-std=c99", "-I"])
        .arg(manifest_dir().join("include"))
        .arg(manifest_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
