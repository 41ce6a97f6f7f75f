use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use goedel_forge_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a returned string.
unsafe fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    gf_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = gf_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

#[test]
fn parse_encode_eval() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(gf_term_parse(c("comp(succ,succ)").as_ptr(), &mut t), GfStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(gf_term_encode(t, &mut s), GfStatus::Ok);
        assert_eq!(take(s), "34");
        assert_eq!(gf_eval(t, c("5").as_ptr(), 100, &mut s), GfStatus::Ok);
        assert_eq!(take(s), "7");
        gf_term_free(t);

        assert_eq!(gf_term_decode(c("25").as_ptr(), &mut t), GfStatus::Ok);
        assert_eq!(gf_term_print(t, &mut s), GfStatus::Ok);
        assert_eq!(take(s), "const(3)");
        gf_term_free(t);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(gf_term_parse(c("bogus").as_ptr(), &mut t), GfStatus::Parse);
        assert!(last_error().contains("expected"));
        assert!(t.is_null());
        assert_eq!(gf_term_parse(ptr::null(), &mut t), GfStatus::NullPointer);
        assert_eq!(gf_term_parse(c("id").as_ptr(), ptr::null_mut()), GfStatus::NullPointer);

        assert_eq!(gf_term_parse(c("mu(const(1))").as_ptr(), &mut t), GfStatus::Ok);
        assert!(gf_last_error().is_null());
        let mut s = ptr::null_mut();
        assert_eq!(gf_eval(t, c("0").as_ptr(), 50, &mut s), GfStatus::OutOfFuel);
        assert!(s.is_null());
        gf_term_free(t);

        let bad = [0xffu8, 0];
        assert_eq!(gf_term_parse(bad.as_ptr().cast(), &mut t), GfStatus::InvalidUtf8);
        // freeing null is a no-op
        gf_term_free(ptr::null_mut());
        gf_string_free(ptr::null_mut());
    }
}

#[test]
fn index_constructions() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gf_psi(GfPsiKind::Tot, c("25").as_ptr(), &mut s), GfStatus::Ok);
        let v = take(s);
        assert_eq!(v, goedel_forge::print_nat(&goedel_forge::constructions::psi_tot(&25u64.into())));
        assert_eq!(gf_extend(c("25").as_ptr(), c("99").as_ptr(), &mut s), GfStatus::Ok);
        let j = take(s);
        let mut t = ptr::null_mut();
        assert_eq!(gf_term_decode(c(&j).as_ptr(), &mut t), GfStatus::Ok);
        assert_eq!(gf_eval(t, c("1").as_ptr(), 1000, &mut s), GfStatus::Ok);
        assert_eq!(take(s), "99");
        assert_eq!(gf_eval(t, c("2").as_ptr(), 1000, &mut s), GfStatus::Ok);
        assert_eq!(take(s), "3");
        gf_term_free(t);
        assert_eq!(gf_smn(c("5").as_ptr(), c("9").as_ptr(), &mut s), GfStatus::Ok);
        take(s);
    }
}

#[test]
fn creative_run_and_audit() {
    unsafe {
        let mut t = ptr::null_mut();
        let st = gf_creative_run(c("25").as_ptr(), 2, GfPsiKind::Tot, 1_000_000, 5, &mut t);
        assert_eq!(st, GfStatus::Ok);
        let mut steps = 0;
        assert_eq!(gf_transcript_steps(t, &mut steps), GfStatus::Ok);
        assert_eq!(steps, 2);
        let mut s = ptr::null_mut();
        assert_eq!(gf_transcript_jsonl(t, &mut s), GfStatus::Ok);
        assert_eq!(take(s).lines().count(), 3);
        assert_eq!(gf_transcript_current(t, &mut s), GfStatus::Ok);
        let current = take(s);
        gf_transcript_free(t);

        let mut verdict = GfVerdict::Inconclusive;
        let mut json = ptr::null_mut();
        let st = gf_escape_audit(c(&current).as_ptr(), GfPsiKind::Tot, 5, 1_000_000, &mut verdict, &mut json);
        assert_eq!(st, GfStatus::Ok);
        assert_eq!(verdict, GfVerdict::Escaped);
        let report: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(report["verdict"], "ESCAPED");

        // an incomplete run still hands back its transcript
        let st = gf_creative_run(c("523").as_ptr(), 2, GfPsiKind::Tot, 2_000, 5, &mut t);
        assert_eq!(st, GfStatus::OutOfFuel);
        assert!(!t.is_null());
        assert_eq!(gf_transcript_steps(t, &mut steps), GfStatus::Ok);
        assert_eq!(steps, 0);
        gf_transcript_free(t);
    }
}

#[test]
fn proofs_and_godel_sentences() {
    unsafe {
        let mut sys = ptr::null_mut();
        assert_eq!(gf_system_at(0, &mut sys), GfStatus::Ok);
        let good = "1. ((0 = 0) -> ((0 = 0) -> (0 = 0))) ; AX L1\n2. (0 = 0) ; AX E1\n3. ((0 = 0) -> (0 = 0)) ; MP 2 1\n";
        assert_eq!(gf_check_proof(sys, c(good).as_ptr(), ptr::null_mut()), GfStatus::Ok);
        let bad = good.replace("2. (0 = 0) ; AX E1", "2. ~(S(0) = 0) ; AX N1");
        let mut line = 0;
        assert_eq!(gf_check_proof(sys, c(&bad).as_ptr(), &mut line), GfStatus::Rejected);
        assert_eq!(line, 3);
        assert!(last_error().contains("MP-MISMATCH"));
        assert_eq!(gf_check_proof(sys, c("1. nonsense").as_ptr(), &mut line), GfStatus::Parse);
        gf_system_free(sys);

        let (mut p, mut g) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(gf_godel_sentence(0, &mut p, &mut g), GfStatus::Ok);
        assert_eq!(take(p), "255504969");
        assert_eq!(take(g), "all v1. ~A1(255504969, v1)");
    }
}

fn target_dir() -> PathBuf {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"))
        .join("debug")
}

const C_SMOKE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "goedel_forge.h"

int main(void) {
    struct GfTerm *t = NULL;
    char *out = NULL;
    if (gf_term_parse("comp(succ,succ)", &t) != GF_STATUS_OK) return 1;
    if (gf_eval(t, "5", 100, &out) != GF_STATUS_OK) return 2;
    if (strcmp(out, "7") != 0) return 3;
    gf_string_free(out);
    if (gf_eval(t, "x", 100, &out) != GF_STATUS_PARSE) return 4;
    if (gf_last_error() == NULL) return 5;
    gf_term_free(t);
    printf("ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("libgoedel_forge_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, C_SMOKE).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
