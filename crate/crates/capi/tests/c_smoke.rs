//! Compiles and runs a small C program against the generated header and
//! the static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "liefat.h"

int main(void) {
    LiefatProblem *p = NULL;
    if (liefat_problem_from_json(
            "{\"family\":\"C\",\"rank\":3,\"subalgebra\":{\"kind\":\"d-type\"}}",
            &p) != LIEFAT_STATUS_OK) return 10;

    int32_t verdict = -1;
    char *json = NULL;
    if (liefat_twistor(p, &verdict, &json) != LIEFAT_STATUS_OK) return 11;
    if (verdict != 0) return 12;
    if (strstr(json, "certified_fat") == NULL) return 13;
    if (strstr(json, "SO(6)/U(3)") == NULL) return 14;
    liefat_string_free(json);

    if (liefat_fat_check(p, "1/2,1/2,1/2", &verdict, &json) != LIEFAT_STATUS_OK) return 15;
    if (verdict != 0) return 16;
    liefat_string_free(json);
    liefat_problem_free(p);

    if (liefat_problem_from_json("{oops", &p) == LIEFAT_STATUS_OK) return 17;
    if (strlen(liefat_last_error()) == 0) return 18;

    printf("c-abi ok, version %s\n", liefat_version());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let staticlib = manifest
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("target")
        .join(profile)
        .join("libliefat_capi.a");
    if !staticlib.exists() {
        panic!("static library missing at {}", staticlib.display());
    }
    let Ok(gcc) = which_compiler() else {
        eprintln!("no C compiler found; skipping the C smoke test");
        return;
    };

    let dir = std::env::temp_dir().join(format!("liefat-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    let exe = dir.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let compile = Command::new(&gcc)
        .arg(&src)
        .arg(&staticlib)
        .arg(format!("-I{}", include.display()))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("compiler runs");
    assert!(
        compile.status.success(),
        "compile failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().expect("smoke binary runs");
    assert_eq!(
        run.status.code(),
        Some(0),
        "smoke binary failed: {}\n{}",
        run.status,
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("c-abi ok"));
}

fn which_compiler() -> Result<String, ()> {
    for cand in ["cc", "gcc", "clang"] {
        if Command::new(cand).arg("--version").output().map(|o| o.status.success()).unwrap_or(false)
        {
            return Ok(cand.to_string());
        }
    }
    Err(())
}
