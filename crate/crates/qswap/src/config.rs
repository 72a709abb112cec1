//! Sweep config files, the register-size guard and secrets files.

use std::path::Path;
use std::str::FromStr;

use qswap_core::families::FamilyKind;
use qswap_core::verify::{PairKind, SweepConfig, SweepMode};

/// Environment variable overriding [`DEFAULT_MAX_AMPLITUDES`].
pub const MAX_QUDITS_ENV: &str = "QSWAP_MAX_QUDITS";
pub const DEFAULT_MAX_AMPLITUDES: usize = 2_000_000;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for {key}: {message}")]
    Value {
        line: usize,
        key: String,
        message: String,
    },
    #[error("{MAX_QUDITS_ENV}={0:?} is not a positive integer")]
    Env(String),
    #[error("secrets file: {0}")]
    Secrets(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Amplitude budget for any dense register: `QSWAP_MAX_QUDITS` when set, else 2·10⁶.
pub fn max_amplitudes() -> Result<usize, ConfigError> {
    match std::env::var(MAX_QUDITS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(ConfigError::Env(raw)),
        },
        Err(_) => Ok(DEFAULT_MAX_AMPLITUDES),
    }
}

fn list<T: FromStr>(raw: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}

fn scalar<T: FromStr>(raw: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    raw.parse::<T>().map_err(|e| format!("{raw:?}: {e}"))
}

fn pair_kind(raw: &str) -> Result<PairKind, String> {
    match raw.to_ascii_lowercase().as_str() {
        "max" => Ok(PairKind::Max),
        "bell" => Ok(PairKind::Bell),
        other => Err(format!("unknown pair kind {other:?}")),
    }
}

fn mode(raw: &str) -> Result<SweepMode, String> {
    match raw.to_ascii_lowercase().as_str() {
        "exhaustive" => Ok(SweepMode::Exhaustive),
        "sampled" => Ok(SweepMode::Sampled),
        other => Err(format!("unknown mode {other:?}")),
    }
}

/// Applies `key=value` lines to `config`. Blank lines and `#` comments are ignored.
///
/// Keys: `dimensions` (alias `d`), `families`, `n_min`, `n_max`, `pairs`, `mode`, `samples`,
/// `seed`, `fidelity_tol`, `probability_tol`, `max_exhaustive_cases`.
pub fn parse_sweep_config(text: &str, mut config: SweepConfig) -> Result<SweepConfig, ConfigError> {
    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        let body = raw_line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            text: raw_line.to_string(),
        })?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let value = value.trim();
        let applied: Result<(), String> = match key.as_str() {
            "dimensions" | "d" => list(value).map(|v| config.dimensions = v),
            "families" => list::<FamilyKind>(value).map(|v| config.families = v),
            "n_min" => scalar(value).map(|v| config.n_min = v),
            "n_max" => scalar(value).map(|v| config.n_max = v),
            "pairs" => value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(pair_kind)
                .collect::<Result<Vec<_>, _>>()
                .map(|v| config.pairs = v),
            "mode" => mode(value).map(|v| config.mode = v),
            "samples" => scalar(value).map(|v| config.samples = v),
            "seed" => scalar(value).map(|v| config.seed = v),
            "fidelity_tol" => scalar(value).map(|v| config.tolerances.fidelity = v),
            "probability_tol" => scalar(value).map(|v| config.tolerances.probability = v),
            "max_exhaustive_cases" => scalar(value).map(|v| config.max_exhaustive_cases = v),
            _ => return Err(ConfigError::UnknownKey { line, key }),
        };
        applied.map_err(|message| ConfigError::Value { line, key, message })?;
    }
    Ok(config)
}

/// Reads secrets from a one-line CSV such as `1,2,4`.
pub fn read_secrets(path: &Path) -> Result<Vec<usize>, ConfigError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut records = reader.records();
    let record = match records.next() {
        Some(r) => r?,
        None => return Err(ConfigError::Secrets("file is empty".into())),
    };
    if records.next().is_some() {
        return Err(ConfigError::Secrets("expected a single line".into()));
    }
    record
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| ConfigError::Secrets(format!("{f:?} is not a non-negative integer")))
        })
        .collect()
}
