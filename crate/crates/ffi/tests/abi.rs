use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use charforge_ffi::*;

fn group(spec: &str) -> *mut CfGroup {
    let s = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cf_group_from_spec(s.as_ptr(), 0, false, &mut g) }, CfStatus::Ok);
    g
}

fn last_error() -> String {
    let p = cf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn table_and_products_through_the_abi() {
    let g = group("extraspecial:p=3,exp=p");
    assert_eq!(unsafe { cf_group_order(g) }, 27);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { cf_table_new(g, &mut t) }, CfStatus::Ok);
    assert_eq!(unsafe { cf_table_rows(t) }, 11);
    let mut deg = 0u64;
    assert_eq!(unsafe { cf_table_degree(t, 9, &mut deg) }, CfStatus::Ok);
    assert_eq!(deg, 3);

    let (mut rows, mut mults, mut eta) = ([0usize; 4], [0u64; 4], 0usize);
    let st = unsafe { cf_decompose_product(t, 9, 10, rows.as_mut_ptr(), mults.as_mut_ptr(), 4, &mut eta) };
    assert_eq!(st, CfStatus::Ok);
    assert_eq!(eta, 9);
    assert_eq!(rows, [0, 1, 2, 3]);
    assert_eq!(mults, [1; 4]);
    let st = unsafe { cf_decompose_product(t, 9, 9, ptr::null_mut(), ptr::null_mut(), 0, &mut eta) };
    assert_eq!((st, eta), (CfStatus::Ok, 1));

    let mut case = CfCase::Irreducible;
    assert_eq!(unsafe { cf_classify_product(t, 9, 10, 3, &mut case, &mut eta) }, CfStatus::Ok);
    assert_eq!((case, eta), (CfCase::SumOfLinears, 9));
    assert_eq!(
        unsafe { cf_classify_product(t, 0, 9, 3, &mut case, &mut eta) },
        CfStatus::HypothesisViolation
    );

    let json = unsafe { cf_table_json(t) };
    assert!(!json.is_null());
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    unsafe { cf_string_free(json) };
    let doc: charforge::chartable::TableDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.degrees.iter().filter(|&&d| d == 3).count(), 2);

    let (mut pass, mut pairs) = (false, 0usize);
    assert_eq!(unsafe { cf_verify(g, 3, &mut pass, &mut pairs) }, CfStatus::Ok);
    assert!(pass);
    assert_eq!(pairs, 4);

    unsafe {
        cf_table_free(t);
        cf_group_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let bad = CString::new("nonsense").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cf_group_from_spec(bad.as_ptr(), 0, false, &mut g) }, CfStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().contains("parse"));

    let big = CString::new("cyclic:100").unwrap();
    assert_eq!(unsafe { cf_group_from_spec(big.as_ptr(), 50, false, &mut g) }, CfStatus::CapExceeded);
    let wreath5 = CString::new("wreath:p=5").unwrap();
    assert_eq!(unsafe { cf_group_from_spec(wreath5.as_ptr(), 0, false, &mut g) }, CfStatus::Unsupported);
    assert_eq!(unsafe { cf_group_from_spec(ptr::null(), 0, false, &mut g) }, CfStatus::NullArgument);
    assert_eq!(unsafe { cf_group_order(ptr::null()) }, 0);
    assert_eq!(unsafe { cf_table_rows(ptr::null()) }, 0);
    assert!(unsafe { cf_table_json(ptr::null()) }.is_null());

    let g = group("cyclic:3");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { cf_table_new(g, &mut t) }, CfStatus::Ok);
    let mut deg = 0;
    assert_eq!(unsafe { cf_table_degree(t, 3, &mut deg) }, CfStatus::RowOutOfRange);
    assert!(last_error().contains("out of range"));
    let mut eta = 0;
    let st = unsafe { cf_decompose_product(t, 0, 0, ptr::null_mut(), ptr::null_mut(), 2, &mut eta) };
    assert_eq!(st, CfStatus::NullArgument);
    unsafe {
        cf_table_free(t);
        cf_group_free(g);
        cf_table_free(ptr::null_mut());
        cf_group_free(ptr::null_mut());
        cf_string_free(ptr::null_mut());
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn generated_header_declares_the_abi() {
    let header = std::fs::read_to_string(manifest_dir().join("include/charforge.h")).unwrap();
    for name in [
        "cf_group_from_spec",
        "cf_table_new",
        "cf_decompose_product",
        "cf_classify_product",
        "cf_verify",
        "cf_table_json",
        "cf_string_free",
        "cf_last_error_message",
        "CF_STATUS_ROW_OUT_OF_RANGE",
        "typedef struct CfTable CfTable",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles the C smoke test against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let dir = manifest_dir();
    // target/<profile>/deps/abi-<hash> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libcharforge_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out = std::env::temp_dir().join(format!("charforge_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "smoke program exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
