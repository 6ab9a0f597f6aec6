//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

fn static_lib() -> Option<PathBuf> {
    // test builds only produce the rlib; ask cargo for the archive
    let built = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "--lib", "-p", "fbcs-ffi", "--manifest-path"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/Cargo.toml"))
        .status()
        .ok()?;
    if !built.success() {
        return None;
    }
    // CARGO_TARGET_TMPDIR is <target>/tmp; the archive sits in <target>/debug.
    let lib = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).parent()?.join("debug").join("libfbcs_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not found; skipping");
        return;
    };
    let dir = env!("CARGO_MANIFEST_DIR");
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("fbcs_smoke");
    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Wextra", "-Werror"])
        .arg(format!("-I{dir}/include"))
        .arg(format!("{dir}/examples_c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("L = 4"));
}
