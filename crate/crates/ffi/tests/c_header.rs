use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "nashkit.h"

int main(void) {
    NkMatrix *x = NULL, *s = NULL, *n = NULL;
    const char *json = "{\"mode\":\"exact\",\"entries\":[[\"2\",\"1\"],[\"0\",\"2\"]]}";
    if (nk_matrix_from_json(json, 1e-8, &x) != NK_STATUS_OK) return 1;
    if (nk_sn_split(x, &s, &n) != NK_STATUS_OK) return 2;
    char *out = NULL;
    if (nk_matrix_to_json(n, &out) != NK_STATUS_OK) return 3;
    puts(out);
    nk_string_free(out);
    NkMatrix *bad = NULL;
    if (nk_matrix_from_json("[", 1e-8, &bad) != NK_STATUS_MALFORMED_INPUT) return 4;
    if (strlen(nk_last_error()) == 0) return 5;
    nk_matrix_free(x);
    nk_matrix_free(s);
    nk_matrix_free(n);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libnashkit_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    let bin = tmp.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"], serde_json::json!([["0/1", "1/1"], ["0/1", "0/1"]]));
}
