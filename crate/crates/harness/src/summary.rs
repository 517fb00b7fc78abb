//! Run summaries: per-n statistics plus experiment-level flags, serialized
//! as a JSON document with the fixed top-level keys
//! `{config_echo, per_n, rate_fit, flags, runtime_seconds}`.

use crate::config::ExperimentConfig;
use crate::ratefit::RateFit;
use crate::records::ReplicateRecord;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct PerN {
    pub n: usize,
    /// Replicates that produced a usable estimate.
    pub valid: usize,
    /// Sum of the skipped column (degenerate replicates / inner skips).
    pub skipped: u64,
    pub estimate_mean: f64,
    pub estimate_variance: f64,
    pub remainder_mean: f64,
    pub remainder_median_abs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub config_echo: ExperimentConfig,
    pub per_n: Vec<PerN>,
    pub rate_fit: Option<RateFit>,
    pub flags: serde_json::Value,
    pub runtime_seconds: f64,
}

pub(crate) fn median_of(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_unstable_by(f64::total_cmp);
    let n = xs.len();
    0.5 * (xs[(n + 1) / 2 - 1] + xs[(n + 2) / 2 - 1])
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Is this row a usable replicate? `max_skip` is the inner replication
/// count for experiments whose `skipped` column is a count rather than a
/// flag (ci_coverage), 1 otherwise.
fn row_valid(r: &ReplicateRecord, max_skip: u64) -> bool {
    r.skipped < max_skip
}

/// Builds per-n statistics and assembles the summary. Appends a
/// `no_valid_replicates` flag when nothing usable survived.
pub fn summarize(
    config: &ExperimentConfig,
    records: &[ReplicateRecord],
    rate_fit: Option<RateFit>,
    mut flags: serde_json::Value,
    runtime_seconds: f64,
) -> Summary {
    let max_skip = match config.experiment.kind {
        crate::config::ExperimentKind::CiCoverage => {
            config.experiment.bootstrap_b.unwrap_or(1).max(1) as u64
        }
        _ => 1,
    };
    let mut per_n = Vec::with_capacity(config.experiment.n_grid.len());
    for &n in &config.experiment.n_grid {
        let rows: Vec<&ReplicateRecord> = records.iter().filter(|r| r.n == n).collect();
        let valid: Vec<&&ReplicateRecord> = rows.iter().filter(|r| row_valid(r, max_skip)).collect();
        let estimates: Vec<f64> = valid.iter().map(|r| r.estimate).collect();
        let remainders: Vec<f64> = valid.iter().map(|r| r.remainder).collect();
        let (est_mean, est_var) = mean_var(&estimates);
        let (rem_mean, _) = mean_var(&remainders);
        per_n.push(PerN {
            n,
            valid: valid.len(),
            skipped: rows.iter().map(|r| r.skipped).sum(),
            estimate_mean: est_mean,
            estimate_variance: est_var,
            remainder_mean: rem_mean,
            remainder_median_abs: median_of(remainders.iter().map(|r| r.abs()).collect()),
        });
    }
    if per_n.iter().all(|p| p.valid == 0) {
        if let serde_json::Value::Object(map) = &mut flags {
            map.insert("no_valid_replicates".into(), serde_json::Value::Bool(true));
        }
    }
    Summary { config_echo: config.clone(), per_n, rate_fit, flags, runtime_seconds }
}
