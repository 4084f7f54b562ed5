use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qminor_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    qm_string_free(s);
    out
}

fn last_error() -> String {
    let p = qm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn commute_round_trip() {
    unsafe {
        let mut rel = ptr::null_mut();
        let st = qm_commute(
            4,
            c("[3 4|1 3]").as_ptr(),
            c("[1 2|2 4]").as_ptr(),
            &mut rel,
        );
        assert_eq!(st, QmStatus::Ok);
        assert!(qm_relation_verified(rel));
        assert!(qm_relation_term_count(rel) > 0);

        let mut s = ptr::null_mut();
        assert_eq!(qm_relation_to_json(rel, &mut s), QmStatus::Ok);
        let json = take(s);
        let mut ok = false;
        assert_eq!(qm_verify_json(c(&json).as_ptr(), &mut ok), QmStatus::Ok);
        assert!(ok);

        let mut back = ptr::null_mut();
        assert_eq!(
            qm_relation_from_json(c(&json).as_ptr(), &mut back),
            QmStatus::Ok
        );
        assert_eq!(qm_relation_term_count(back), qm_relation_term_count(rel));

        for render in [qm_relation_to_string, qm_relation_to_latex] {
            let mut s = ptr::null_mut();
            assert_eq!(render(rel, &mut s), QmStatus::Ok);
            assert!(!take(s).is_empty());
        }
        qm_relation_free(back);
        qm_relation_free(rel);
    }
}

#[test]
fn bad_inputs_set_codes_and_messages() {
    unsafe {
        let mut rel = ptr::null_mut();
        let st = qm_commute(4, c("[3 4|1").as_ptr(), c("[1|2]").as_ptr(), &mut rel);
        assert_eq!(st, QmStatus::Parse);
        assert!(rel.is_null());
        assert!(!last_error().is_empty());

        let st = qm_commute(2, c("[3|1]").as_ptr(), c("[1|2]").as_ptr(), &mut rel);
        assert_eq!(st, QmStatus::InvalidInput);
        assert!(last_error().contains('3'));

        let st = qm_commute(4, ptr::null(), c("[1|2]").as_ptr(), &mut rel);
        assert_eq!(st, QmStatus::NullPointer);
        let st = qm_commute(4, c("[1|1]").as_ptr(), c("[1|2]").as_ptr(), ptr::null_mut());
        assert_eq!(st, QmStatus::NullPointer);

        let mut ok = true;
        assert_eq!(qm_verify_json(c("{").as_ptr(), &mut ok), QmStatus::Json);

        let bad = [0xffu8, 0];
        let mut s = ptr::null_mut();
        assert_eq!(
            qm_normal_form(bad.as_ptr().cast(), &mut s),
            QmStatus::InvalidUtf8
        );
    }
}

#[test]
fn normal_form_and_congruence() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qm_normal_form(c("a12.a11").as_ptr(), &mut s), QmStatus::Ok);
        let nf = take(s);
        let mut same = false;
        assert_eq!(
            qm_congruent(c("a12.a11").as_ptr(), c(&nf).as_ptr(), &mut same),
            QmStatus::Ok
        );
        assert!(same);
        assert_eq!(
            qm_congruent(c("a12.a11").as_ptr(), c("a11.a12").as_ptr(), &mut same),
            QmStatus::Ok
        );
        assert!(!same);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        qm_relation_free(ptr::null_mut());
        qm_string_free(ptr::null_mut());
        assert!(!qm_relation_verified(ptr::null()));
        assert_eq!(qm_relation_term_count(ptr::null()), 0);
        let mut s = ptr::null_mut();
        assert_eq!(
            qm_relation_to_json(ptr::null(), &mut s),
            QmStatus::NullPointer
        );
        assert!(s.is_null());
    }
    let v = unsafe { CStr::from_ptr(qm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/qminor.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct QmRelation QmRelation;"));
}
