//! Configuration ingestion, batch orchestration, machine-readable reports,
//! plot-data emission and the built-in selftest.

pub mod config;
pub mod json;
pub mod report;
pub mod runner;
pub mod selftest;

pub use config::{parse_config, AnalysisConfig, ConfigError};
pub use report::{emit_plot_data, RunReport};
pub use runner::{run_analysis, RunError};

/// Exit codes: 0 success, 2 config error, 3 geometric precondition error,
/// 4 selftest assertion failure.
pub mod exit_code {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const GEOMETRY: i32 = 3;
    pub const SELFTEST: i32 = 4;
}
