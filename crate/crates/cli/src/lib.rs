//! Benchmark harness and command-line plumbing around `mcs-core`.

pub mod bench;
pub mod cactus;
pub mod generate;
pub mod io;
pub mod list;

use std::path::PathBuf;

/// Directory of the checked-in fixtures, overridable with `MCS_FIXTURE_DIR`.
pub fn fixture_dir() -> PathBuf {
    match std::env::var_os("MCS_FIXTURE_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}
