//! Bahadur decompositions of the bootstrap median/MAD and Hoeffding-type
//! concentration bounds.
//!
//! The decompositions split a bootstrap estimator into its target, a linear
//! ECDF term, and a remainder:
//!
//! * median:  `Med* − v = (1/2 − F_n*(v)) / F′(v) + R_n`
//! * MAD:     `MAD* − ξ = (1/2 − [F_n*(v+ξ) − F_n*(v−ξ)]) / G′(ξ)
//!             + (β/G′(ξ)) · (1/2 − F_n*(v)) / F′(v) + R_n`,
//!   with `β = F′(v−ξ) − F′(v+ξ)`.
//!
//! The second MAD coefficient is `+β/G′(ξ)`: shifting the deviation center
//! up by δ moves the scale by `−(F′(v+ξ)−F′(v−ξ))/G′(ξ)·δ = +β/G′(ξ)·δ`
//! (implicit differentiation of F(c+t) − F(c−t) = 1/2 in c). The same
//! coefficient is forced by the joint covariance: only with `+β/G′` does
//! the linearization reproduce σ₁₂ = [1 − 4F(v−ξ) + β/F′(v)]/(2F′(v)G′(ξ)).
//!
//! The identical linear term serves both the almost-sure `O(n^{-3/4} log n)`
//! and the in-probability `o_p(n^{-1/2})` remainder statements; only the
//! claimed rate differs, which is a property of the Monte Carlo remainder
//! sequence, not of the per-replicate arithmetic here.
//!
//! The concentration bounds are population quantities: for a shift `l`
//! and deviation `ε > 0`,
//!
//! ```text
//! a₀ = F(v+ε/2) − (⌊(n+l)/2⌋−1)/n       b₀ = ⌊(n+l)/2⌋/n − F(v−ε/2)
//! P(|v̂*_{n,l} − v| > ε)      ≤ 2·exp(−√2·n·min(a₀,b₀)²)
//! c₀ = F(v+ξ+ε/2) − F(v−ξ−ε/2) − (⌊(n+m)/2⌋−1)/n
//! d₀ = ⌊(n+m)/2⌋/n − F(v+ξ−ε/2) + F(v−ξ+ε/2)
//! P(|ξ̂*_{n,m,l} − ξ| > ε)    ≤ 6·exp(−√2·n·min(a₀,b₀,c₀,d₀)²)
//! ```
//!
//! valid once all constants are positive (they converge to positive limits,
//! so validity is a "sufficiently large n" condition). In the invalid
//! regime the bound is reported as the trivial 1 with a flag instead of
//! erroring, so small-n sweeps degrade gracefully. All constants use the
//! model's analytic cdf, never the empirical one. (In the empirical
//! two-sided counts the left limit F_n(v−ξ−ε/2⁻) is the relevant lower
//! evaluation; for the continuous families here it coincides with the value
//! almost surely.)

use crate::bootstrap::BootstrapSample;
use crate::distributions::{DistributionModel, RobustParams};
use crate::error::{Error, Result};
use serde::Serialize;

/// Which estimator a decomposition describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EstimatorKind {
    /// `Med*`, the two-order-statistic average.
    Median,
    /// `MAD*`, deviations about `Med*`, two-order-statistic average.
    Mad,
    /// `ξ̂*_{n,m,l}`, a single order statistic of deviations about `v̂*_{n,l}`.
    GeneralizedMad { m: usize, l: usize },
}

/// One replicate's estimate split as `estimate − target = linear + remainder`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BahadurDecomposition {
    pub estimate: f64,
    pub target: f64,
    pub linear_term: f64,
    pub remainder: f64,
    pub n: usize,
    pub kind: EstimatorKind,
}

/// Linear term of the bootstrap median: `(1/2 − F_n*(v)) / F′(v)`.
pub fn med_linear_term(fn_star_at_v: f64, params: &RobustParams) -> Result<f64> {
    if !(params.fv > 0.0) {
        return Err(Error::DegenerateDensity(format!("F'(v) = {}", params.fv)));
    }
    Ok((0.5 - fn_star_at_v) / params.fv)
}

/// Linear term of the bootstrap MAD (see the module docs for the sign of
/// the second coefficient).
pub fn mad_linear_term(
    fn_star_at_v: f64,
    fn_star_hi: f64,
    fn_star_lo: f64,
    params: &RobustParams,
) -> Result<f64> {
    if !(params.g_prime > 0.0) {
        return Err(Error::DegenerateDensity(format!("G'(xi) = {}", params.g_prime)));
    }
    if !(params.fv > 0.0) {
        return Err(Error::DegenerateDensity(format!("F'(v) = {}", params.fv)));
    }
    let scale_part = (0.5 - (fn_star_hi - fn_star_lo)) / params.g_prime;
    let center_part = (params.beta / params.g_prime) * (0.5 - fn_star_at_v) / params.fv;
    Ok(scale_part + center_part)
}

/// Evaluates `F_n*` at v and v±ξ on a bootstrap resample and assembles the
/// decomposition for the requested estimator kind. The remainder is
/// `estimate − target − linear_term` by construction.
pub fn decompose(
    bs: &BootstrapSample<'_>,
    params: &RobustParams,
    kind: EstimatorKind,
) -> Result<BahadurDecomposition> {
    let r = bs.resampled();
    let fn_v = r.ecdf(params.v).value;
    let fn_hi = r.ecdf(params.v + params.xi).value;
    let fn_lo = r.ecdf(params.v - params.xi).value;
    let (estimate, target, linear_term) = match kind {
        EstimatorKind::Median => (r.median(), params.v, med_linear_term(fn_v, params)?),
        EstimatorKind::Mad => {
            (r.mad(), params.xi, mad_linear_term(fn_v, fn_hi, fn_lo, params)?)
        }
        EstimatorKind::GeneralizedMad { m, l } => (
            r.generalized_mad(m, l)?,
            params.xi,
            mad_linear_term(fn_v, fn_hi, fn_lo, params)?,
        ),
    };
    Ok(BahadurDecomposition {
        estimate,
        target,
        linear_term,
        remainder: estimate - target - linear_term,
        n: r.n(),
        kind,
    })
}

/// A Hoeffding-type exponential deviation bound with its constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcentrationBound {
    pub epsilon: f64,
    pub n: usize,
    pub a0: f64,
    pub b0: f64,
    pub c0: Option<f64>,
    pub d0: Option<f64>,
    /// min(a₀, b₀).
    pub delta: f64,
    /// min of all available constants.
    pub big_delta: f64,
    /// The bound value; the trivial 1.0 when `valid` is false.
    pub bound: f64,
    /// D = max{8/F′(v), 8/G′(ξ)}, the deviation-rate constant in the
    /// almost-sure envelope `D·√(log n / n)`.
    pub d_rate: f64,
    /// False when some constant is nonpositive ("n too small for bound validity").
    pub valid: bool,
}

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn shift_index(n: usize, l: usize) -> Result<usize> {
    if l == 0 || l > n / 2 {
        return Err(Error::IndexRange(format!("shift {l} outside [1, {}] for n = {n}", n / 2)));
    }
    Ok((n + l) / 2)
}

/// Deviation bound for the generalized bootstrap median `v̂*_{n,l}`.
pub fn concentration_bound_median(
    model: &DistributionModel,
    params: &RobustParams,
    n: usize,
    l: usize,
    epsilon: f64,
) -> Result<ConcentrationBound> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    let idx = shift_index(n, l)? as f64;
    let nf = n as f64;
    let a0 = model.cdf(params.v + 0.5 * epsilon) - (idx - 1.0) / nf;
    let b0 = idx / nf - model.cdf(params.v - 0.5 * epsilon);
    let delta = a0.min(b0);
    let valid = a0 > 0.0 && b0 > 0.0;
    let bound = if valid { 2.0 * (-SQRT2 * nf * delta * delta).exp() } else { 1.0 };
    Ok(ConcentrationBound {
        epsilon,
        n,
        a0,
        b0,
        c0: None,
        d0: None,
        delta,
        big_delta: delta,
        bound,
        d_rate: (8.0 / params.fv).max(8.0 / params.g_prime),
        valid,
    })
}

/// Deviation bound for the generalized bootstrap MAD `ξ̂*_{n,m,l}`.
pub fn concentration_bound_mad(
    model: &DistributionModel,
    params: &RobustParams,
    n: usize,
    l: usize,
    m: usize,
    epsilon: f64,
) -> Result<ConcentrationBound> {
    let med = concentration_bound_median(model, params, n, l, epsilon)?;
    let idx_m = shift_index(n, m)? as f64;
    let nf = n as f64;
    let (v, xi) = (params.v, params.xi);
    let c0 = model.cdf(v + xi + 0.5 * epsilon) - model.cdf(v - xi - 0.5 * epsilon) - (idx_m - 1.0) / nf;
    let d0 = idx_m / nf - model.cdf(v + xi - 0.5 * epsilon) + model.cdf(v - xi + 0.5 * epsilon);
    let big_delta = med.delta.min(c0).min(d0);
    let valid = med.valid && c0 > 0.0 && d0 > 0.0;
    let bound = if valid { 6.0 * (-SQRT2 * nf * big_delta * big_delta).exp() } else { 1.0 };
    Ok(ConcentrationBound {
        c0: Some(c0),
        d0: Some(d0),
        big_delta,
        bound,
        valid,
        ..med
    })
}
