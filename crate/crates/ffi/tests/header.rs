use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_abi() {
    let header =
        std::fs::read_to_string(crate_dir().join("include/li2poly.h")).expect("build script writes the header");
    for decl in [
        "typedef struct Li2Polytope Li2Polytope;",
        "LI2_STATUS_OK = 0",
        "li2_last_error_message(void)",
        "li2_polytope_parse(",
        "li2_polytope_pstar(",
        "li2_polytope_dual_cyclic(",
        "li2_polytope_prism3(",
        "li2_polytope_polygon(",
        "li2_polytope_free(",
        "li2_polytope_to_hrep(",
        "li2_string_free(",
        "li2_polytope_f_vector(",
        "li2_polytope_h_vector(",
        "li2_fk_dual_cyclic(",
        "li2_fk_pstar(",
    ] {
        assert!(header.contains(decl), "header lacks {decl}");
    }
}

/// The directory holding this crate's build products (`target/<profile>`).
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = artifact_dir().join("libli2poly_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("li2poly_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is on PATH");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "64 192 240 160 60 12 1\n");
}
