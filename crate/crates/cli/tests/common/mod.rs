//! Process-spawning helpers shared by the integration suites.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Run {
    pub status: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl Run {
    pub fn stdout_json(&self) -> serde_json::Value {
        serde_json::from_slice(&self.stdout).expect("stdout is JSON")
    }

    pub fn stderr_json(&self) -> serde_json::Value {
        serde_json::from_slice(&self.stderr).expect("stderr is JSON")
    }

    pub fn stdout_text(&self) -> &str {
        std::str::from_utf8(&self.stdout).expect("stdout is UTF-8")
    }
}

/// Runs the binary in `dir` and captures everything.
pub fn patternspace(dir: &Path, args: &[&str]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_patternspace"))
        .args(args)
        .current_dir(dir)
        .env_remove("PATTERNSPACE_THREADS")
        .output()
        .expect("the binary spawns");
    Run {
        status: output.status.code().expect("the binary exits"),
        stdout: output.stdout,
        stderr: output.stderr,
    }
}

/// A scratch directory unique to one test.
pub fn workspace(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).expect("the scratch directory is writable");
    dir
}

/// Writes one input file and returns its path.
pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("the input file is writable");
    path
}
