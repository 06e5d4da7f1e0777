//! Compiles and runs a C program against the generated header and the
//! shared library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "zakinv.h"

int main(void) {
    ZakSpectrum *s = NULL;
    const char *psi2 = "{\"pieces\":[{\"lo\":\"0\",\"hi\":\"1/2\",\"re\":1},{\"lo\":\"3/2\",\"hi\":\"2\",\"re\":1}]}";
    if (zak_spectrum_from_json(psi2, &s) != ZAK_STATUS_OK) return 10;
    bool inv = false;
    if (zak_line_extra_invariance(s, 2, &inv) != ZAK_STATUS_OK || !inv) return 11;
    zak_spectrum_free(s);

    if (zak_spectrum_from_json("{", &s) != ZAK_STATUS_PARSE) return 12;
    if (zak_last_error_message() == NULL) return 13;

    ZakGroup *g = NULL;
    ZakLattice *k = NULL, *l = NULL;
    ZakSignal *psi = NULL;
    double re[6] = {1, 0, 0, 0, 0, 0};
    if (zak_group_parse("6", &g) != ZAK_STATUS_OK) return 14;
    if (zak_lattice_parse(g, "(3)", &k) != ZAK_STATUS_OK) return 15;
    if (zak_lattice_parse(g, "(1)", &l) != ZAK_STATUS_OK) return 16;
    if (zak_signal_new(g, re, NULL, 6, &psi) != ZAK_STATUS_OK) return 17;
    bool zak = true, oracle = true;
    double residual = 0;
    if (zak_group_extra_invariance(psi, k, l, 1e-9, &zak) != ZAK_STATUS_OK) return 18;
    if (zak_group_oracle(psi, k, l, 1e-9, &oracle, &residual) != ZAK_STATUS_OK) return 19;
    if (zak || oracle) return 20;
    if (zak_group_extra_invariance(psi, l, k, 1e-9, &zak) != ZAK_STATUS_NOT_NESTED) return 21;
    char *json = NULL;
    if (zak_group_report_json(psi, k, l, 1e-9, &json) != ZAK_STATUS_OK) return 22;
    if (strstr(json, "\"invariant\": false") == NULL) return 23;
    zak_string_free(json);
    zak_signal_free(psi);
    zak_lattice_free(k);
    zak_lattice_free(l);
    zak_group_free(g);
    printf("%s\n", zak_version());
    return 0;
}
"#;

fn shared_library_dir() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?.to_path_buf();
    let profile = deps.parent()?.to_path_buf();
    [deps, profile]
        .into_iter()
        .find(|d| d.join("libzakinv_ffi.so").exists())
}

#[test]
#[cfg(target_os = "linux")]
fn c_program_links_and_runs() {
    let Some(lib_dir) = shared_library_dir() else {
        panic!("libzakinv_ffi.so not found next to the test binary");
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("main.c");
    let bin = work.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror"])
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg("-o")
        .arg(&bin)
        .arg(format!("-L{}", lib_dir.display()))
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-lzakinv_ffi")
        .status()
        .expect("a C compiler is available as `cc`");
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "C program exited with {:?}",
        run.status.code()
    );
    assert_eq!(
        String::from_utf8_lossy(&run.stdout).trim(),
        env!("CARGO_PKG_VERSION")
    );
}
