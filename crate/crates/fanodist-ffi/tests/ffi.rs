use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use fanodist_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    fd_string_free(p);
    s
}

#[test]
fn matrix_round_trip() {
    unsafe {
        let json = CString::new(
            r#"[["0","1","2","0"],["-1","0","0","3"],["-2","0","0","1"],["0","-3","-1","0"]]"#,
        )
        .unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(fd_skew_from_json(json.as_ptr(), &mut m), FdStatus::Ok);
        let mut size = 0;
        assert_eq!(fd_skew_size(m, &mut size), FdStatus::Ok);
        assert_eq!(size, 4);
        let mut rank = 0;
        assert_eq!(fd_skew_rank(m, &mut rank), FdStatus::Ok);
        assert_eq!(rank, 4);
        let mut stratum = FdStratum::default();
        assert_eq!(fd_class_via_rank(m, &mut stratum), FdStatus::Ok);
        assert_eq!(
            (
                stratum.class_k,
                stratum.stratum,
                stratum.vanished_pfaffian_size
            ),
            (1, 2, 6)
        );
        let mut pf = ptr::null_mut();
        assert_eq!(fd_skew_pfaffian(m, &mut pf), FdStatus::Ok);
        assert_eq!(take_string(pf), "-5");

        let mut w = ptr::null_mut();
        assert_eq!(fd_form_from_skew(m, &mut w), FdStatus::Ok);
        let mut class = 0;
        assert_eq!(fd_form_class(w, &mut class), FdStatus::Ok);
        assert_eq!(class, 1);
        fd_form_free(w);
        fd_skew_free(m);
    }
}

#[test]
fn forms_through_handles() {
    unsafe {
        let text = CString::new("z0 dz1 - z1 dz0").unwrap();
        let mut w = ptr::null_mut();
        assert_eq!(fd_form_parse(text.as_ptr(), 3, &mut w), FdStatus::Ok);
        let mut dw = ptr::null_mut();
        assert_eq!(fd_form_d(w, &mut dw), FdStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(fd_form_to_string(dw, &mut s), FdStatus::Ok);
        assert_eq!(take_string(s), "2 dz0^dz1");
        let mut wdw = ptr::null_mut();
        assert_eq!(fd_form_wedge(w, dw, &mut wdw), FdStatus::Ok);
        assert_eq!(fd_form_to_string(wdw, &mut s), FdStatus::Ok);
        assert_eq!(take_string(s), "0");
        let mut class = 7;
        assert_eq!(fd_form_class(w, &mut class), FdStatus::Ok);
        assert_eq!(class, 0);
        for h in [w, dw, wdw] {
            fd_form_free(h);
        }
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut m = ptr::null_mut();
        let entries = [0i64, 1, 1, 0];
        assert_eq!(
            fd_skew_from_ints(2, entries.as_ptr(), &mut m),
            FdStatus::NotSkew
        );
        assert!(m.is_null());
        let msg = CStr::from_ptr(fd_last_error()).to_str().unwrap();
        assert!(msg.contains("skew"), "{msg}");

        let bad = CString::new("[[\"0\",").unwrap();
        assert_eq!(fd_skew_from_json(bad.as_ptr(), &mut m), FdStatus::Parse);
        assert_eq!(
            fd_skew_from_json(ptr::null(), &mut m),
            FdStatus::NullPointer
        );

        let zero = [0i64; 4];
        assert_eq!(fd_skew_from_ints(2, zero.as_ptr(), &mut m), FdStatus::Ok);
        let mut s = FdStratum::default();
        assert_eq!(fd_class_via_rank(m, &mut s), FdStatus::ZeroMatrix);
        fd_skew_free(m);

        let mut out = ptr::null_mut();
        assert_eq!(fd_bott(9, 0, 1, 2, &mut out), FdStatus::Ok);
        assert!(fd_last_error().is_null());
        assert_eq!(take_string(out), "45");
        let weights = [1u32, 1, 2];
        assert_eq!(fd_wps_h0(weights.as_ptr(), 3, 0, 2, &mut out), FdStatus::Ok);
        assert_eq!(take_string(out), "4");
        let bad_weights = [2u32, 2, 2];
        assert_eq!(
            fd_wps_h0(bad_weights.as_ptr(), 3, 0, 2, &mut out),
            FdStatus::InvalidWeights
        );
        fd_skew_free(ptr::null_mut());
        fd_form_free(ptr::null_mut());
        fd_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/fanodist.h"),
    )
    .unwrap();
    for name in [
        "typedef struct FdSkewMatrix FdSkewMatrix;",
        "typedef struct FdForm FdForm;",
        "FD_STATUS_OK = 0",
        "fd_last_error(void)",
        "fd_skew_from_json",
        "fd_form_wedge",
        "fd_wps_h0",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles and runs a C program against the header and the static library.
#[test]
fn c_smoke_test() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libfanodist_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "45\n");
}
