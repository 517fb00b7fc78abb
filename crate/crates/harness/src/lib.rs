//! Declarative Monte Carlo experiment runner for the bootstrap median/MAD
//! estimator layer.
//!
//! An experiment is described by a TOML config (tables `[experiment]`,
//! `[distribution]`, `[weight]`, `[output]`; unknown keys are rejected) and
//! produces:
//!
//! * a CSV of one row per (n, replicate) with the fixed column order
//!   `experiment, dist, n, replicate_index, seed_used, estimate, target,
//!   linear_term, remainder, skipped, aux1, aux2, aux3, aux4` — UTF-8, LF
//!   line endings, floats at 17 significant digits;
//! * a summary JSON document with top-level keys
//!   `{config_echo, per_n, rate_fit, flags, runtime_seconds}`.
//!
//! Determinism contract: the per-replicate seed is
//! `derive_stream(master_seed, [n, replicate_index])` (see
//! [`madstrap_core::rng`]); the sample-draw stream and the bootstrap-index
//! stream are derived from it with context words 0 and 1. Replicates are
//! data-parallel and collected in index order, so output bytes are
//! identical for any worker count and any scheduling. `runtime_seconds` is
//! the single intentionally non-deterministic field of the summary.
//!
//! Experiment kinds:
//!
//! * `bahadur_rate` — fresh sample + one bootstrap per replicate; records
//!   the decomposition of the configured estimator and fits the remainder
//!   rate over the n-grid (weak check: √n·median|R| must fall by ≥ 2;
//!   strong check: log–log slope within [−0.95, −0.55], the log factor of
//!   the almost-sure rate being absorbed by the band).
//! * `bound_check` — deviation frequencies of the generalized bootstrap
//!   median/MAD against their analytic exponential bounds.
//! * `joint_normality` — one bootstrap per fresh sample; the scaled pairs
//!   √n(Med*−v, MAD*−ξ) are tested against the asymptotic covariance Σ.
//! * `conditional_normality` — many bootstraps of one fixed sample per n;
//!   √n(Med*−Med_n, MAD*−MAD_n) is tested against Σ/2 (the proof-internal
//!   conditional limit; labelled as such in the flags).
//! * `pwm_variance` — bootstrap projection depth weighted mean; the
//!   variance of √n(PWM*−PWM(F)) is compared with the influence-kernel
//!   value 2·var[K(X)]. Replicate rows also carry the kernel linear term
//!   centered at the conditional mean (the average of K over the observed
//!   sample).
//! * `ci_coverage` — percentile-bootstrap confidence interval for the PWM
//!   versus the classical t-interval for the mean; empirical coverage of
//!   the population targets. Degenerate (zero-MAD) bootstrap replicates
//!   are skipped and counted, never fatal.

// Same lint posture as the estimator crate: negated float comparisons are
// NaN-rejecting guards and index arithmetic keeps its floor form.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_div_ceil)]

pub mod config;
pub mod ratefit;
pub mod records;
pub mod runner;
pub mod summary;

pub use config::{DistributionConfig, ExperimentConfig, ExperimentKind, WeightConfig};
pub use ratefit::{rate_fit, RateFit};
pub use records::{write_csv, ReplicateRecord, ResultSet};
pub use runner::{run_experiment, HarnessError, RunOutput};
pub use summary::{summarize, PerN, Summary};
