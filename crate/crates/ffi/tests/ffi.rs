use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use fdfa_ffi::*;

const ODD: &str = "faf 1
kind fdfa
alphabet a
leading
  states 1
  initial 0
  trans 0 a 0
progress 0
  states 2
  initial 0
  accepting 1
  trans 0 a 1
  trans 1 a 0
";

fn parse(text: &str) -> *mut FdfaFamily {
    let c = CString::new(text).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fdfa_family_parse(c.as_ptr(), &mut f) }, FdfaStatus::Ok);
    assert!(!f.is_null());
    f
}

fn last_error() -> String {
    let p = fdfa_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { fdfa_string_free(p) };
    s
}

#[test]
fn parse_serialize_and_size() {
    let f = parse(ODD);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { fdfa_family_serialize(f, &mut text) }, FdfaStatus::Ok);
    assert_eq!(take(text), ODD);
    let (mut l, mut p) = (0, 0);
    assert_eq!(unsafe { fdfa_family_size(f, &mut l, &mut p) }, FdfaStatus::Ok);
    assert_eq!((l, p), (1, 2));
    unsafe { fdfa_family_free(f) };
}

#[test]
fn membership() {
    let f = parse(ODD);
    let u = CString::new("").unwrap();
    let mut out = false;
    for (x, want) in [("a", true), ("aa", false), ("aaa", true)] {
        let x = CString::new(x).unwrap();
        assert_eq!(unsafe { fdfa_family_accepts(f, u.as_ptr(), x.as_ptr(), &mut out) }, FdfaStatus::Ok);
        assert_eq!(out, want);
    }
    let empty = CString::new("").unwrap();
    assert_eq!(unsafe { fdfa_family_accepts(f, u.as_ptr(), empty.as_ptr(), &mut out) }, FdfaStatus::InvalidInput);
    let bad = CString::new("b").unwrap();
    assert_eq!(unsafe { fdfa_family_accepts(f, u.as_ptr(), bad.as_ptr(), &mut out) }, FdfaStatus::InvalidInput);
    assert!(last_error().contains("unknown symbol"));
    unsafe { fdfa_family_free(f) };
}

#[test]
fn checks_report_witnesses() {
    let f = parse(ODD);
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { fdfa_check_saturated(f, false, &mut w) }, FdfaStatus::Refuted);
    assert!(take(w).contains("\"variant\""));
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { fdfa_check_almost_saturated(f, 1_000_000, &mut w) }, FdfaStatus::Refuted);
    assert_eq!(
        take(w),
        r#"{"variant":"power","left":{"u":"","x":"a"},"right":{"u":"","x":"aa"},"left_accepted":true,"right_accepted":false}"#
    );
    // witness pointer is optional
    assert_eq!(unsafe { fdfa_check_saturated(f, true, ptr::null_mut()) }, FdfaStatus::Refuted);
    assert_eq!(unsafe { fdfa_check_regular(f, 100_000) }, FdfaStatus::Ok);
    assert_eq!(unsafe { fdfa_check_fdwa_saturated(f, ptr::null_mut()) }, FdfaStatus::Precondition);
    unsafe { fdfa_family_free(f) };
}

#[test]
fn generated_families() {
    let name = CString::new("subset-occurrence").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fdfa_family_generate(name.as_ptr(), 2, &mut f) }, FdfaStatus::Ok);
    let (mut l, mut p) = (0, 0);
    unsafe { fdfa_family_size(f, &mut l, &mut p) };
    assert_eq!((l, p), (1, 5));
    assert_eq!(unsafe { fdfa_check_fdwa_saturated(f, ptr::null_mut()) }, FdfaStatus::Ok);
    let mut nba = ptr::null_mut();
    assert_eq!(unsafe { fdfa_fdwa_to_nba(f, &mut nba) }, FdfaStatus::Ok);
    assert!(take(nba).contains("kind nba"));
    unsafe { fdfa_family_free(f) };

    let bogus = CString::new("no-such-family").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fdfa_family_generate(bogus.as_ptr(), 2, &mut g) }, FdfaStatus::InvalidInput);
    assert!(g.is_null());
}

#[test]
fn errors_and_null_arguments() {
    let mut f = ptr::null_mut();
    let bad = CString::new(ODD.replace("trans 1 a 0", "trans 1 c 0")).unwrap();
    assert_eq!(unsafe { fdfa_family_parse(bad.as_ptr(), &mut f) }, FdfaStatus::ParseError);
    assert!(f.is_null());
    let e = last_error();
    assert!(e.contains("`c`") && e.contains("line 13"), "{e}");
    assert_eq!(unsafe { fdfa_family_parse(ptr::null(), &mut f) }, FdfaStatus::NullArgument);
    assert_eq!(unsafe { fdfa_check_regular(ptr::null(), 10) }, FdfaStatus::NullArgument);
    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { fdfa_family_parse(bytes.as_ptr().cast(), &mut f) }, FdfaStatus::InvalidUtf8);
    unsafe {
        fdfa_family_free(ptr::null_mut());
        fdfa_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/fdfa.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["fdfa_family_parse", "fdfa_check_saturated", "FDFA_STATUS_CAP_EXCEEDED", "typedef struct FdfaFamily"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let probe = std::env::temp_dir().join(format!("fdfa_probe_{}.c", std::process::id()));
    std::fs::write(
        &probe,
        "#include \"fdfa.h\"\nint main(void) { FdfaFamily *f = 0; size_t l, p; \
         return fdfa_family_size(f, &l, &p) == FDFA_STATUS_NULL_ARGUMENT ? 0 : 1; }\n",
    )
    .unwrap();
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(out) = Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(dir.join("include"))
            .arg(&probe)
            .output()
        else {
            eprintln!("{cc} not available; skipping");
            continue;
        };
        assert!(out.status.success(), "{cc}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
