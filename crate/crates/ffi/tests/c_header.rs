//! Compile and run a small C program against the generated header and static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "stepwalk.h"

int main(void) {
    int64_t xy[] = {0, 1, 1, 0};
    SwStepSet *set = NULL;
    if (sw_stepset_new(xy, 2, &set) != SW_STATUS_OK) return 10;
    char *out = NULL;
    if (sw_count(set, NULL, 3, 2, 0, &out) != SW_STATUS_OK) return 11;
    int ok = strstr(out, "\"10\"") != NULL;
    printf("%s\n", out);
    sw_string_free(out);
    SwConstraint *c = NULL;
    if (sw_constraint_parse("hexagon", &c) != SW_STATUS_INVALID_INPUT) return 12;
    if (sw_last_error() == NULL) return 13;
    sw_stepset_free(set);
    return ok ? 0 : 14;
}
"#;

fn compiler() -> String {
    std::env::var("CC").unwrap_or_else(|_| "cc".into())
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    // the test binary sits in target/<profile>/deps, next to the static library
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libstepwalk_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());

    let src = tmp.join("abi_check.c");
    let bin = tmp.join("abi_check");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(compiler())
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C build failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stdout));
    assert!(String::from_utf8_lossy(&run.stdout).contains("\"exact\""));
}
