//! Std front end for `qswap-core`: parallel verification sweeps, JSON/CSV reports, config
//! files and the `qswap` command line.

pub mod cli;
pub mod config;
pub mod report;
pub mod sweep;

pub use config::{max_amplitudes, parse_sweep_config, read_secrets, ConfigError};
pub use report::{format_sig, write_csv, write_json};
pub use sweep::{run_sweep, SweepError, SweepReport, Totals};
