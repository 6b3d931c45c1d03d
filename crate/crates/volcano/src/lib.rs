//! Standard-library side of the volcano solver: run configuration, output
//! formats with embedded run manifests, and worker-pool sweeps. The
//! `volcano` binary is a thin layer over these.

pub mod config;
pub mod error;
pub mod grid;
pub mod manifest;
pub mod output;
pub mod parallel;

pub use config::RunConfig;
pub use error::{CliError, Result};
pub use manifest::RunManifest;
pub use output::Format;
