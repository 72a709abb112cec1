use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use qswap_core::verify::{run_case, CaseReport, CaseStatus, SweepConfig};
use qswap_core::Dimension;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid sweep config: {0}")]
    Config(#[from] qswap_core::Error),
    #[error("d={d}, n={n} needs {amplitudes} amplitudes in the oracle register, above the limit of {max} (QSWAP_MAX_QUDITS)")]
    TooLarge {
        d: usize,
        n: usize,
        amplitudes: String,
        max: usize,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    /// Cases that were checked: `passed + failed`.
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Zero-probability branches, not counted in `total`.
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    /// Whether the case list was enumerated or sampled.
    pub exhaustive: bool,
    pub totals: Totals,
    pub failures: Vec<CaseReport>,
    /// The only timing field; left out when a reproducible report is wanted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
    /// Every case in enumeration order. Written to CSV, not to JSON.
    #[serde(skip)]
    pub cases: Vec<CaseReport>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0
    }

    /// Drops every timing field so two runs of the same config serialize identically.
    pub fn without_timing(mut self) -> Self {
        self.wall_ms = None;
        for case in self.cases.iter_mut().chain(self.failures.iter_mut()) {
            case.elapsed = Default::default();
        }
        self
    }
}

/// Rejects configs whose oracle register (`n + 2` qudits) exceeds `max_amplitudes`.
pub fn check_size(config: &SweepConfig, max_amplitudes: usize) -> Result<(), SweepError> {
    for &d in &config.dimensions {
        let dim = Dimension::new(d)?;
        let n = config.n_max;
        let fits = dim.pow(n + 2).is_some_and(|a| a <= max_amplitudes);
        if !fits && !config.families.is_empty() {
            return Err(SweepError::TooLarge {
                d,
                n,
                amplitudes: format!("{d}^{}", n + 2),
                max: max_amplitudes,
            });
        }
    }
    Ok(())
}

/// Runs every case of `config` in parallel. Results come back in case order, so the report
/// depends only on the config.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let descriptors = config.cases()?;
    let cases: Vec<CaseReport> = descriptors
        .par_iter()
        .map(|desc| {
            let t = Instant::now();
            let mut report = run_case(desc, &config.tolerances);
            report.elapsed = t.elapsed();
            report
        })
        .collect();

    let mut totals = Totals::default();
    let mut failures = Vec::new();
    for case in &cases {
        match case.status {
            CaseStatus::Skipped(_) => totals.skipped += 1,
            _ if case.pass => totals.passed += 1,
            _ => {
                totals.failed += 1;
                failures.push(case.clone());
            }
        }
    }
    totals.total = totals.passed + totals.failed;
    Ok(SweepReport {
        config: config.clone(),
        exhaustive: config.enumerates(),
        totals,
        failures,
        wall_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        cases,
    })
}
