//! Std companion to `gpfree-core`: window and CSV/JSON file formats, run
//! manifests and the `gpfree` command-line front end.

pub mod cli;
pub mod error;
pub mod functions;
pub mod manifest;
pub mod output;
pub mod window_io;

pub use cli::run;
pub use error::{CliError, Result};
pub use manifest::RunManifest;
pub use window_io::{decode_window, encode_window, ingest_sequence, WindowHeader};
