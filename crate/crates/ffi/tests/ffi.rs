//! Exercises the C ABI through the Rust-visible extern functions, then checks
//! the generated header compiles (and links, when a C compiler is present).

use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use qprime_ffi::*;

#[test]
fn status_messages() {
    for s in [
        QpStatus::Ok,
        QpStatus::NullPointer,
        QpStatus::BufferTooSmall,
        QpStatus::Panic,
    ] {
        let msg = unsafe { CStr::from_ptr(qp_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
    let v = unsafe { CStr::from_ptr(qp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn scalar_calls() {
    unsafe {
        let mut dr = 0u8;
        assert_eq!(qp_digital_root(123_456_789, &mut dr), QpStatus::Ok);
        assert_eq!(dr, 9);
        assert_eq!(qp_digital_root(0, &mut dr), QpStatus::Domain);
        assert_eq!(qp_digital_root(5, ptr::null_mut()), QpStatus::NullPointer);

        let mut m = 0u64;
        assert_eq!(qp_modulus_of(97, 24, &mut m), QpStatus::Ok);
        assert_eq!(m, 1);
        assert_eq!(qp_modulus_of(97, 0, &mut m), QpStatus::Config);

        let mut ok = false;
        assert_eq!(qp_is_prime_modulus(24, 19, &mut ok), QpStatus::Ok);
        assert!(ok);
        assert_eq!(qp_is_prime_modulus(24, 20, &mut ok), QpStatus::Ok);
        assert!(!ok);

        let mut v = 0u64;
        assert_eq!(qp_axis_value(4, &mut v), QpStatus::Ok);
        assert_eq!(v, 13);
        assert_eq!(qp_axis_index(35, &mut v), QpStatus::Ok);
        assert_eq!(v, 11);
        assert_eq!(qp_axis_index(9, &mut v), QpStatus::Domain);
        assert_eq!(qp_grid_value(1, 11, &mut v), QpStatus::Ok);
        assert_eq!(v, 175);
        assert_eq!(
            qp_grid_value(u64::MAX / 4, u64::MAX / 4, &mut v),
            QpStatus::Overflow
        );

        let (mut found, mut i, mut j) = (false, 0u64, 0u64);
        assert_eq!(
            qp_grid_contains(175, &mut found, &mut i, &mut j),
            QpStatus::Ok
        );
        assert!(found);
        assert_eq!((i, j), (1, 11));
        assert_eq!(
            qp_grid_contains(97, &mut found, &mut i, &mut j),
            QpStatus::Ok
        );
        assert!(!found);
        assert_eq!(
            qp_grid_contains(9, &mut found, &mut i, &mut j),
            QpStatus::NotOnPrimeModuli
        );
        assert_eq!(
            qp_grid_contains(97, ptr::null_mut(), &mut i, &mut j),
            QpStatus::NullPointer
        );

        let mut stage = QpStage::Pass;
        assert_eq!(qp_prefilter(35, &mut stage), QpStatus::Ok);
        assert_eq!(stage, QpStage::LastDigit);
        assert_eq!(qp_prefilter(91, &mut stage), QpStatus::Ok);
        assert_eq!(stage, QpStage::Pass);
    }
}

#[test]
fn verdicts() {
    unsafe {
        let mut v = std::mem::zeroed::<QpVerdict>();
        assert_eq!(qp_is_prime(91, QpStrategy::Balanced, &mut v), QpStatus::Ok);
        assert_eq!(v.kind, QpKind::Composite);
        assert_eq!(v.stage, QpStage::GridSearch);
        assert!(v.has_witness);
        assert_eq!((v.witness_a, v.witness_b), (7, 13));
        assert_eq!((v.grid_i, v.grid_j), (2, 4));

        assert_eq!(qp_is_prime(25, QpStrategy::Ascending, &mut v), QpStatus::Ok);
        assert_eq!(v.stage, QpStage::LastDigit);
        assert_eq!((v.grid_i, v.grid_j), (1, 1));

        assert_eq!(qp_is_prime(1, QpStrategy::Ascending, &mut v), QpStatus::Ok);
        assert_eq!(v.kind, QpKind::Invalid);
        assert!(!v.has_witness);

        assert_eq!(
            qp_is_prime(u64::MAX, QpStrategy::Ascending, &mut v),
            QpStatus::Overflow
        );
        assert_eq!(
            qp_is_prime(7, QpStrategy::Ascending, ptr::null_mut()),
            QpStatus::NullPointer
        );
    }
}

#[test]
fn factoring() {
    unsafe {
        let (mut a, mut b) = (0u64, 0u64);
        assert_eq!(
            qp_factor_on_grid(2491, QpStrategy::Balanced, &mut a, &mut b),
            QpStatus::Ok
        );
        assert_eq!((a, b), (47, 53));
        assert_eq!(
            qp_factor_on_grid(97, QpStrategy::Ascending, &mut a, &mut b),
            QpStatus::NoFactors
        );
        assert_eq!(
            qp_factor_on_grid(12, QpStrategy::Ascending, &mut a, &mut b),
            QpStatus::NotQuasiPrime
        );

        let mut len = 0usize;
        let mut small = [0u64; 2];
        assert_eq!(
            qp_full_factorize(360, small.as_mut_ptr(), small.len(), &mut len),
            QpStatus::BufferTooSmall
        );
        assert_eq!(len, 6);
        assert_eq!(
            qp_full_factorize(360, ptr::null_mut(), 0, &mut len),
            QpStatus::BufferTooSmall
        );
        let mut buf = [0u64; 64];
        assert_eq!(
            qp_full_factorize(360, buf.as_mut_ptr(), buf.len(), &mut len),
            QpStatus::Ok
        );
        assert_eq!(&buf[..len], &[2, 2, 2, 3, 3, 5]);
        assert_eq!(
            qp_full_factorize(1, buf.as_mut_ptr(), buf.len(), &mut len),
            QpStatus::Invalid
        );
        assert_eq!(
            qp_full_factorize(360, buf.as_mut_ptr(), buf.len(), ptr::null_mut()),
            QpStatus::NullPointer
        );
    }
}

#[test]
fn ranges() {
    unsafe {
        let (mut survivors, mut fraction) = (0u64, 0f64);
        assert_eq!(
            qp_survivor_density(100_000, &mut survivors, &mut fraction),
            QpStatus::Ok
        );
        assert!((fraction - 4.0 / 15.0).abs() < 1e-3);
        assert_eq!(
            qp_survivor_density(10, &mut survivors, &mut fraction),
            QpStatus::Invalid
        );

        let mut mismatches = 1u64;
        assert_eq!(
            qp_verify_range(5_000, QpStrategy::Balanced, &mut mismatches),
            QpStatus::Ok
        );
        assert_eq!(mismatches, 0);
        assert_eq!(
            qp_verify_range(u64::MAX, QpStrategy::Balanced, &mut mismatches),
            QpStatus::Resource
        );
    }
}

#[test]
fn sieve_handle() {
    unsafe {
        let mut t: *mut QpPrimeTable = ptr::null_mut();
        assert_eq!(qp_sieve_new(1_000_000, &mut t), QpStatus::Ok);
        assert!(!t.is_null());
        let mut count = 0u64;
        assert_eq!(qp_sieve_count(t, &mut count), QpStatus::Ok);
        assert_eq!(count, 78_498);
        let mut p = false;
        assert_eq!(qp_sieve_is_prime(t, 999_983, &mut p), QpStatus::Ok);
        assert!(p);
        assert_eq!(qp_sieve_is_prime(t, 1_000_001, &mut p), QpStatus::Domain);
        qp_sieve_free(t);
        qp_sieve_free(ptr::null_mut());
        assert_eq!(
            qp_sieve_count(ptr::null(), &mut count),
            QpStatus::NullPointer
        );
        assert_eq!(qp_sieve_new(u64::MAX, &mut t), QpStatus::Resource);
    }
}

#[test]
fn wheel_handle() {
    unsafe {
        let mut w: *mut QpWheel = ptr::null_mut();
        assert_eq!(qp_wheel_new(24, 48, &mut w), QpStatus::Ok);
        let mut rings = 0u64;
        assert_eq!(qp_wheel_rings(w, &mut rings), QpStatus::Ok);
        assert_eq!(rings, 2);
        let mut svg: *mut std::os::raw::c_char = ptr::null_mut();
        assert_eq!(qp_wheel_svg(w, &mut svg), QpStatus::Ok);
        let text = CStr::from_ptr(svg).to_str().unwrap().to_owned();
        qp_string_free(svg);
        qp_string_free(ptr::null_mut());
        qp_wheel_free(w);
        assert!(text.starts_with("<?xml"));
        assert_eq!(text.matches("<circle ").count(), 48);
        assert_eq!(qp_wheel_new(20, 48, &mut w), QpStatus::Config);
        assert_eq!(
            qp_wheel_rings(ptr::null(), &mut rings),
            QpStatus::NullPointer
        );
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qprime.h")
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(header()).unwrap();
    let src =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 20);
    for name in exports {
        assert!(
            h.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    for tag in [
        "QP_STATUS_OK = 0",
        "QP_STATUS_BUFFER_TOO_SMALL",
        "typedef struct QpWheel QpWheel",
        "#ifndef QPRIME_H",
    ] {
        assert!(h.contains(tag), "{tag}");
    }
}

const SMOKE_C: &str = r#"
#include <stdio.h>
#include <string.h>
#include "qprime.h"

int main(void) {
    QpVerdict v;
    if (qp_is_prime(91, QP_STRATEGY_ASCENDING, &v) != QP_STATUS_OK) return 1;
    if (v.kind != QP_KIND_COMPOSITE || v.witness_a != 7 || v.witness_b != 13) return 2;
    uint64_t buf[8];
    size_t len = 0;
    if (qp_full_factorize(2491, buf, 8, &len) != QP_STATUS_OK || len != 2) return 3;
    QpPrimeTable *t = NULL;
    uint64_t count = 0;
    if (qp_sieve_new(100, &t) != QP_STATUS_OK) return 4;
    qp_sieve_count(t, &count);
    qp_sieve_free(t);
    if (count != 25) return 5;
    printf("%s ok\n", qp_version());
    return 0;
}
"#;

fn find_cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc)
        .arg("--version")
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|_| cc)
}

#[test]
fn header_compiles_and_links_from_c() {
    let Some(cc) = find_cc() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, SMOKE_C).unwrap();
    let include = header().parent().unwrap().to_path_buf();

    let syntax = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(
        syntax.status.success(),
        "{}",
        String::from_utf8_lossy(&syntax.stderr)
    );

    // target/<profile>/deps/ffi-<hash> -> target/<profile>/libqprime_ffi.a
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libqprime_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping link step", lib.display());
        return;
    }
    let bin = dir.path().join("smoke");
    let link = Command::new(&cc)
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(
        link.status.success(),
        "{}",
        String::from_utf8_lossy(&link.stderr)
    );
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).ends_with("ok\n"));
}
