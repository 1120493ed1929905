//! Command-line driver: model files, lifts, structure checks and selftests.

pub mod commands;
pub mod error;
pub mod model_file;
pub mod report;
pub mod selftest;

pub use commands::{LiftKind, Settings, DEFAULT_POINTS, DEFAULT_SEED};
pub use error::CliError;
pub use model_file::{parse_model, ModelFile};
pub use report::Report;
pub use selftest::Caps;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
