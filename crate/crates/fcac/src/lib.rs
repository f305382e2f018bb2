//! Host-side tooling for `fcac-core`: CSV and JSON formats, experiment
//! configuration, thread-parallel rounds and the experiment drivers behind
//! the `fcac` binary.

pub mod config;
pub mod experiments;
pub mod io;
pub mod parallel;
pub mod report;
pub mod wire;

/// `<crate version>+<git describe>` when built inside a git checkout.
pub const VERSION: &str = env!("FCAC_VERSION");
