//! Robust bootstrap inference for the median and the median absolute deviation.
//!
//! This crate implements the estimator layer for studying the bootstrap
//! sample median `Med*`, the bootstrap sample MAD `MAD*`, their generalized
//! order-statistic variants, and the projection depth weighted mean built on
//! top of them:
//!
//! * [`distributions`] — population models (cdf/pdf/quantile) and the derived
//!   robust constants v, ξ, F′(v), G′(ξ), α, β, γ that every asymptotic
//!   formula consumes.
//! * [`estimators`] — order statistics, sample median/MAD, the index-shifted
//!   generalizations, and empirical CDFs with left limits.
//! * [`bootstrap`] — deterministic resampling plus an exact small-n
//!   enumeration oracle over all nⁿ resamples.
//! * [`bahadur`] — linear terms and remainders of the Bahadur decompositions
//!   of `Med*` and `MAD*`, and Hoeffding-type concentration bounds.
//! * [`asymptotics`] — the 2×2 asymptotic covariance of
//!   √n(Med*−v, MAD*−ξ) and an empirical joint-normality check.
//! * [`depth`] — projection depth, the depth weighted mean (population,
//!   sample, bootstrap), its influence kernels, and the bootstrap asymptotic
//!   variance 2·var[K(X)].
//! * [`quad`] — fixed-order Gauss–Legendre quadrature against a
//!   distribution, with panel splits at the depth kink locations.
//! * [`rng`] — the frozen, documented random generator that makes every
//!   simulation in this workspace bit-reproducible.
//!
//! All types are immutable after construction and all operations are pure,
//! so everything here is safe to evaluate from parallel replicate loops.

// Negated comparisons like `!(x > 0.0)` are NaN-rejecting guards, and the
// order-statistic index arithmetic keeps the floor-form `(n + k) / 2` of
// its definitions rather than `div_ceil`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_div_ceil)]
// Frozen numeric fixtures keep their full oracle digits.
#![allow(clippy::excessive_precision)]

pub mod asymptotics;
pub mod bahadur;
pub mod bootstrap;
pub mod depth;
pub mod distributions;
pub mod error;
pub mod estimators;
pub mod quad;
pub mod rng;

pub use asymptotics::{joint_normality_check, sigma_matrix, NormalityReport, NormalityThresholds, SigmaMatrix};
pub use bahadur::{
    concentration_bound_mad, concentration_bound_median, decompose, mad_linear_term,
    med_linear_term, BahadurDecomposition, ConcentrationBound, EstimatorKind,
};
pub use bootstrap::{
    bootstrap_med_mad, enumerate_resamples, enumerate_resamples_partial, resample,
    BootstrapSample, EnumeratedDistribution, ResamplePlan,
};
pub use depth::{
    influence_f, influence_k, modified_mad_pwm, projection_depth, pwm_asym_variance,
    pwm_bootstrap, pwm_population, pwm_sample, DepthParams, InfluenceKernel, PwmResult,
    WeightFunction,
};
pub use distributions::{draw_sample, robust_params, DistributionModel, RobustParams};
pub use error::{Error, Result};
pub use estimators::{AbsDeviations, EcdfEval, SortedSample};
