//! Projection depth and the projection depth weighted mean (PWM).
//!
//! Projection depth of a point against a location/scale pair is
//! `PD(x) = 1/(1 + |x−center|/scale)`: 1 at the center, 1/2 one scale unit
//! away, decaying to 0 in the tails. The PWM re-weights observations by a
//! function of their depth,
//!
//! ```text
//! PWM(F)   = ∫ x·w(PD(x,F)) dF / ∫ w(PD(x,F)) dF
//! PWM(F_n) = Σ wᵢXᵢ / Σ wᵢ,    wᵢ = w(1/(1 + |Xᵢ−Med_n|/MAD_n))
//! ```
//!
//! and the bootstrap version recomputes `Med*`, `MAD*` on the resample.
//! The Stahel–Donoho location estimator is the special case of depth
//! weighting in one dimension.
//!
//! The bootstrap PWM admits the linearization
//! `PWM(F_n*) − PWM(F) = (1/n)Σ[K(Xᵢ*) − E K(Xᵢ*)] + o_p(n^{-1/2})` with
//!
//! ```text
//! K(x) = [ ∫(y−PWM)·w′(PD(y))·f(y,x) dF(y) + (x−PWM)·w(PD(x)) ] / ∫w(PD)dF
//! f(x,y) = g₁(x)·(1/2 − I(v−ξ<y≤v+ξ))/G′(ξ) + g₂(x)·(1/2 − I(y≤v))/F′(v)
//! g₁(x) = |x−v|/(ξ+|x−v|)²
//! g₂(x) = |x−v|·β/(G′(ξ)(ξ+|x−v|)²) + ξ·sign(x−v)/(ξ+|x−v|)²
//! ```
//!
//! where β = F′(v−ξ) − F′(v+ξ) (the deviation-center sensitivity of the
//! MAD, see [`crate::bahadur`]), and √n(PWM(F_n*) − PWM(F)) → N(0, 2·var[K(X)]).
//!
//! Conventions at measure-zero points: `sign(0) = 0`, and the indicators
//! take the symmetrized value 1/2 exactly at their boundaries y ∈ {v, v±ξ}.
//! This makes `f(v, ·) = 0` and makes K odd about v for symmetric models
//! (in particular K(v) = 0); quadrature nodes never land on these points,
//! so every integral is unaffected.
//!
//! In K(x), the inner dF(y)-integral depends on x only through the two
//! bounded step coefficients, so it is evaluated by computing the two
//! x-free integrals J₁, J₂ of `(y−PWM)·w′(PD(y))·gᵢ(y)` once (same nodes,
//! same values as integrating f(y,x) directly — the factorization is exact
//! linearity, not an approximation).

use crate::bootstrap::{resample, ResamplePlan};
use crate::distributions::{DistributionModel, RobustParams};
use crate::error::{Error, Result};
use crate::estimators::SortedSample;
use crate::quad::DfGrid;
use serde::Serialize;

/// Default Gauss–Legendre nodes per quadrature panel.
pub const DEFAULT_NODES: usize = 256;

/// A depth weight: nonnegative, continuously differentiable on [0, 1] with
/// w(0) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightFunction {
    /// w(r) = rᵖ, p ≥ 1.
    Power { p: f64 },
    /// w(r) = [e^{−k(1−r/c)²} − e^{−k}] / (1 − e^{−k}) for r < c, else 1,
    /// with k > 0 and 0 < c ≤ 1. w(0) = 0 holds structurally; c = 1 keeps
    /// the weight C¹ on all of [0, 1] (for c < 1 the derivative jumps at
    /// r = c, as in the classical saturated form).
    ZuoExponential { k: f64, c: f64 },
}

impl WeightFunction {
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidParameters(format!("power weight requires p >= 1, got {p}")));
        }
        Ok(Self::Power { p })
    }

    pub fn zuo_exponential(k: f64, c: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0 && c.is_finite() && c > 0.0 && c <= 1.0) {
            return Err(Error::InvalidParameters(format!(
                "zuo_exponential weight requires k > 0 and 0 < c <= 1, got k={k}, c={c}"
            )));
        }
        Ok(Self::ZuoExponential { k, c })
    }

    /// w(r).
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Self::Power { p } => r.powf(p),
            Self::ZuoExponential { k, c } => {
                if r >= c {
                    1.0
                } else {
                    let t = 1.0 - r / c;
                    ((-k * t * t).exp() - (-k).exp()) / (1.0 - (-k).exp())
                }
            }
        }
    }

    /// w′(r), analytic.
    pub fn deriv(&self, r: f64) -> f64 {
        match *self {
            Self::Power { p } => p * r.powf(p - 1.0),
            Self::ZuoExponential { k, c } => {
                if r >= c {
                    0.0
                } else {
                    let t = 1.0 - r / c;
                    2.0 * k * t / c * (-k * t * t).exp() / (1.0 - (-k).exp())
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::Power { p } => format!("power({p})"),
            Self::ZuoExponential { k, c } => format!("zuo_exponential({k},{c})"),
        }
    }
}

/// Location/scale pair defining a depth function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepthParams {
    pub center: f64,
    pub scale: f64,
}

impl DepthParams {
    pub fn new(center: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite() && center.is_finite()) {
            return Err(Error::DegenerateScale(format!(
                "depth requires finite center and scale > 0, got center={center}, scale={scale}"
            )));
        }
        Ok(Self { center, scale })
    }
}

/// `PD(x) = 1/(1 + |x−center|/scale)`, in (0, 1].
pub fn projection_depth(x: f64, dp: &DepthParams) -> f64 {
    1.0 / (1.0 + (x - dp.center).abs() / dp.scale)
}

/// Summary of the weights entering one PWM evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// A weighted-mean evaluation: `value = numerator / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PwmResult {
    pub value: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub weights: WeightStats,
}

fn pwm_of_weighted(values: &[f64], weights: &[f64]) -> PwmResult {
    let numerator: f64 = values.iter().zip(weights).map(|(&x, &w)| w * x).sum();
    let denominator: f64 = weights.iter().sum();
    debug_assert!(denominator > 0.0);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &w in weights {
        lo = lo.min(w);
        hi = hi.max(w);
    }
    PwmResult {
        value: numerator / denominator,
        numerator,
        denominator,
        weights: WeightStats { min: lo, max: hi, mean: denominator / weights.len() as f64 },
    }
}

/// Sample PWM with depth taken against (Med_n, MAD_n).
///
/// Errors with [`Error::DegenerateScale`] when MAD_n = 0 (all weight mass
/// at one point).
pub fn pwm_sample(s: &SortedSample, w: &WeightFunction) -> Result<PwmResult> {
    let med = s.median();
    let mad = s.mad();
    if !(mad > 0.0) {
        return Err(Error::DegenerateScale(format!("sample MAD = {mad}")));
    }
    let dp = DepthParams { center: med, scale: mad };
    let weights: Vec<f64> = s.values().iter().map(|&x| w.eval(projection_depth(x, &dp))).collect();
    Ok(pwm_of_weighted(s.values(), &weights))
}

/// Bootstrap PWM: Med*, MAD* are recomputed on the resample.
///
/// A zero resample MAD yields [`Error::DegenerateResample`]; callers should
/// skip and count such replicates.
pub fn pwm_bootstrap(s: &SortedSample, plan: ResamplePlan, w: &WeightFunction) -> Result<PwmResult> {
    let bs = resample(s, plan);
    pwm_of_resampled(bs.resampled(), w)
}

/// PWM of an already-resampled sample with the degenerate-resample flag.
pub fn pwm_of_resampled(r: &SortedSample, w: &WeightFunction) -> Result<PwmResult> {
    match pwm_sample(r, w) {
        Err(Error::DegenerateScale(_)) => Err(Error::DegenerateResample),
        other => other,
    }
}

/// Sample PWM with the scale replaced by the modified MAD of shift `k`.
/// `k = 1` reduces to [`pwm_sample`].
pub fn modified_mad_pwm(s: &SortedSample, k: usize, w: &WeightFunction) -> Result<PwmResult> {
    let med = s.median();
    let scale = s.modified_mad(k)?;
    if !(scale > 0.0) {
        return Err(Error::DegenerateScale(format!("modified MAD (k={k}) = {scale}")));
    }
    let dp = DepthParams { center: med, scale };
    let weights: Vec<f64> = s.values().iter().map(|&x| w.eval(projection_depth(x, &dp))).collect();
    Ok(pwm_of_weighted(s.values(), &weights))
}

/// Refuses model/weight combinations whose depth-weighted integrands are
/// not integrable.
///
/// Heavy-tailed models need the weight to kill the tails: for the Cauchy
/// family the power weight must have p ≥ 3. On top of the family rule, a
/// numeric probe checks that |x−v|·w(PD(x)) stays bounded along the far
/// quantile tails (u = 1e-6 down to 1e-12 on both sides).
fn integrability_guard(
    model: &DistributionModel,
    w: &WeightFunction,
    params: &RobustParams,
) -> Result<()> {
    if let DistributionModel::Cauchy { .. } = model {
        if let WeightFunction::Power { p } = w {
            if *p < 3.0 {
                return Err(Error::Integrability(format!(
                    "cauchy requires a power weight with p >= 3, got p = {p}"
                )));
            }
        }
    }
    let dp = DepthParams { center: params.v, scale: params.xi };
    let probe = |u: f64| -> Result<f64> {
        let x = model.quantile(u)?;
        Ok((x - params.v).abs() * w.eval(projection_depth(x, &dp)))
    };
    for (mild, extreme) in [(1e-6, 1e-12), (1.0 - 1e-6, 1.0 - 1e-12)] {
        let h_mild = probe(mild)?;
        let h_extreme = probe(extreme)?;
        if !h_extreme.is_finite() || h_extreme > 10.0 * (h_mild + 1.0) {
            return Err(Error::Integrability(format!(
                "{} with {}: tail weight grows ({h_mild} -> {h_extreme})",
                model.label(),
                w.label()
            )));
        }
    }
    Ok(())
}

/// Population PWM by Gauss–Legendre quadrature in u = F(x) coordinates.
pub fn pwm_population(
    model: &DistributionModel,
    w: &WeightFunction,
    params: &RobustParams,
) -> Result<PwmResult> {
    pwm_population_with_nodes(model, w, params, DEFAULT_NODES)
}

/// [`pwm_population`] with an explicit per-panel node count (used by the
/// quadrature-convergence checks).
pub fn pwm_population_with_nodes(
    model: &DistributionModel,
    w: &WeightFunction,
    params: &RobustParams,
    nodes: usize,
) -> Result<PwmResult> {
    integrability_guard(model, w, params)?;
    let dp = DepthParams { center: params.v, scale: params.xi };
    let grid = DfGrid::new(model, params, nodes);
    let denominator = grid.integrate(|x| w.eval(projection_depth(x, &dp)));
    let numerator = grid.integrate(|x| x * w.eval(projection_depth(x, &dp)));
    if !(denominator > 0.0) {
        return Err(Error::Integrability(format!(
            "weight integral is not positive: {denominator}"
        )));
    }
    Ok(PwmResult {
        value: numerator / denominator,
        numerator,
        denominator,
        weights: WeightStats { min: 0.0, max: w.eval(1.0), mean: denominator },
    })
}

/// Indicator coefficient (1/2 − I(v−ξ < y ≤ v+ξ))/G′(ξ), symmetrized at
/// the boundary points.
fn c_scale(y: f64, params: &RobustParams) -> f64 {
    let lo = params.v - params.xi;
    let hi = params.v + params.xi;
    let ind = if y == lo || y == hi {
        0.5
    } else if y > lo && y < hi {
        1.0
    } else {
        0.0
    };
    (0.5 - ind) / params.g_prime
}

/// Indicator coefficient (1/2 − I(y ≤ v))/F′(v), symmetrized at y = v.
fn c_center(y: f64, params: &RobustParams) -> f64 {
    let ind = if y == params.v {
        0.5
    } else if y < params.v {
        1.0
    } else {
        0.0
    };
    (0.5 - ind) / params.fv
}

/// g₁(x) = |x−v|/(ξ+|x−v|)².
fn g1(x: f64, params: &RobustParams) -> f64 {
    let ax = (x - params.v).abs();
    let d = params.xi + ax;
    ax / (d * d)
}

/// g₂(x) = |x−v|·β/(G′(ξ)(ξ+|x−v|)²) + ξ·sign(x−v)/(ξ+|x−v|)², sign(0)=0.
fn g2(x: f64, params: &RobustParams) -> f64 {
    let dxv = x - params.v;
    let ax = dxv.abs();
    let d = params.xi + ax;
    let sg = if dxv > 0.0 {
        1.0
    } else if dxv < 0.0 {
        -1.0
    } else {
        0.0
    };
    ax * params.beta / (params.g_prime * d * d) + params.xi * sg / (d * d)
}

/// The depth-linearization kernel f(x, y); see the module docs.
pub fn influence_f(x: f64, y: f64, params: &RobustParams) -> f64 {
    g1(x, params) * c_scale(y, params) + g2(x, params) * c_center(y, params)
}

/// Precomputed machinery for evaluating K(x) and its moments.
#[derive(Debug, Clone)]
pub struct InfluenceKernel {
    params: RobustParams,
    w: WeightFunction,
    pwm0: f64,
    denominator: f64,
    j1: f64,
    j2: f64,
    grid: DfGrid,
}

impl InfluenceKernel {
    pub fn new(model: &DistributionModel, w: &WeightFunction, params: &RobustParams) -> Result<Self> {
        Self::with_nodes(model, w, params, DEFAULT_NODES)
    }

    pub fn with_nodes(
        model: &DistributionModel,
        w: &WeightFunction,
        params: &RobustParams,
        nodes: usize,
    ) -> Result<Self> {
        let pop = pwm_population_with_nodes(model, w, params, nodes)?;
        Ok(Self::with_pwm0(model, w, params, pop.value, nodes, pop.denominator))
    }

    fn with_pwm0(
        model: &DistributionModel,
        w: &WeightFunction,
        params: &RobustParams,
        pwm0: f64,
        nodes: usize,
        denominator: f64,
    ) -> Self {
        let dp = DepthParams { center: params.v, scale: params.xi };
        let grid = DfGrid::new(model, params, nodes);
        let j1 = grid.integrate(|y| (y - pwm0) * w.deriv(projection_depth(y, &dp)) * g1(y, params));
        let j2 = grid.integrate(|y| (y - pwm0) * w.deriv(projection_depth(y, &dp)) * g2(y, params));
        Self { params: *params, w: *w, pwm0, denominator, j1, j2, grid }
    }

    pub fn pwm0(&self) -> f64 {
        self.pwm0
    }

    pub fn denominator(&self) -> f64 {
        self.denominator
    }

    /// K(x).
    pub fn k(&self, x: f64) -> f64 {
        let p = &self.params;
        let dp = DepthParams { center: p.v, scale: p.xi };
        let inner = c_scale(x, p) * self.j1 + c_center(x, p) * self.j2;
        (inner + (x - self.pwm0) * self.w.eval(projection_depth(x, &dp))) / self.denominator
    }

    /// ∫ K dF (0 in exact arithmetic; an influence function is centered).
    pub fn mean(&self) -> f64 {
        self.grid.integrate(|x| self.k(x))
    }

    /// var[K(X)] = ∫K² dF − (∫K dF)².
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.grid.integrate(|x| self.k(x) * self.k(x)) - m * m
    }
}

/// One-shot K(x) evaluation sharing the denominator with the population
/// PWM whose value is passed as `pwm0`. Prefer [`InfluenceKernel`] when
/// evaluating at many points.
pub fn influence_k(
    x: f64,
    model: &DistributionModel,
    w: &WeightFunction,
    params: &RobustParams,
    pwm0: f64,
) -> Result<f64> {
    integrability_guard(model, w, params)?;
    let dp = DepthParams { center: params.v, scale: params.xi };
    let grid = DfGrid::new(model, params, DEFAULT_NODES);
    let denominator = grid.integrate(|y| w.eval(projection_depth(y, &dp)));
    if !(denominator > 0.0) {
        return Err(Error::Integrability("weight integral is not positive".into()));
    }
    let kernel = InfluenceKernel::with_pwm0(model, w, params, pwm0, DEFAULT_NODES, denominator);
    Ok(kernel.k(x))
}

/// Asymptotic variance 2·var[K(X)] of √n(PWM(F_n*) − PWM(F)).
pub fn pwm_asym_variance(
    model: &DistributionModel,
    w: &WeightFunction,
    params: &RobustParams,
) -> Result<f64> {
    pwm_asym_variance_with_nodes(model, w, params, DEFAULT_NODES)
}

/// [`pwm_asym_variance`] with an explicit per-panel node count.
pub fn pwm_asym_variance_with_nodes(
    model: &DistributionModel,
    w: &WeightFunction,
    params: &RobustParams,
    nodes: usize,
) -> Result<f64> {
    let kernel = InfluenceKernel::with_nodes(model, w, params, nodes)?;
    Ok(2.0 * kernel.variance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bootstrap::enumerate_resamples_partial;
    use crate::distributions::{draw_sample, robust_params};
    use approx::assert_abs_diff_eq;

    fn normal() -> (DistributionModel, RobustParams) {
        let m = DistributionModel::normal(0.0, 1.0).unwrap();
        let p = robust_params(&m).unwrap();
        (m, p)
    }

    fn s(values: &[f64]) -> SortedSample {
        SortedSample::new(values.to_vec()).unwrap()
    }

    #[test]
    fn weight_constructors_validate() {
        assert!(WeightFunction::power(0.5).is_err());
        assert!(WeightFunction::power(1.0).is_ok());
        assert!(WeightFunction::zuo_exponential(0.0, 1.0).is_err());
        assert!(WeightFunction::zuo_exponential(3.0, 1.5).is_err());
        assert!(WeightFunction::zuo_exponential(3.0, 1.0).is_ok());
    }

    #[test]
    fn weights_vanish_at_zero_and_are_c1() {
        for w in [
            WeightFunction::power(1.0).unwrap(),
            WeightFunction::power(2.0).unwrap(),
            WeightFunction::power(3.5).unwrap(),
            WeightFunction::zuo_exponential(2.0, 1.0).unwrap(),
            WeightFunction::zuo_exponential(7.0, 1.0).unwrap(),
        ] {
            assert_eq!(w.eval(0.0), 0.0, "{}", w.label());
            let h = 1e-7;
            for i in 1..100 {
                let r = i as f64 / 100.0;
                let fd = (w.eval(r + h) - w.eval(r - h)) / (2.0 * h);
                assert!(
                    (fd - w.deriv(r)).abs() <= 1e-6,
                    "{} at r={r}: fd {fd} vs analytic {}",
                    w.label(),
                    w.deriv(r)
                );
                assert!(w.eval(r) >= 0.0);
            }
        }
    }

    #[test]
    fn projection_depth_examples() {
        let dp = DepthParams::new(2.0, 0.5).unwrap();
        assert_eq!(projection_depth(2.0, &dp), 1.0);
        assert_eq!(projection_depth(2.5, &dp), 0.5);
        assert_eq!(projection_depth(1.5, &dp), 0.5);
        assert_eq!(projection_depth(3.5, &dp), 0.25);
        assert!(DepthParams::new(0.0, 0.0).is_err());
        assert!(DepthParams::new(0.0, -1.0).is_err());
    }

    #[test]
    fn projection_depth_affine_invariance() {
        let dp = DepthParams::new(1.0, 2.0).unwrap();
        for (a, b) in [(2.0, 3.0), (-1.5, 0.25), (0.125, -8.0)] {
            let mapped = DepthParams::new(a * 1.0 + b, a.abs() * 2.0).unwrap();
            for x in [-3.0, 0.0, 0.7, 5.0] {
                assert_abs_diff_eq!(
                    projection_depth(a * x + b, &mapped),
                    projection_depth(x, &dp),
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn pwm_sample_examples() {
        // symmetric two-level sample: weights equal in pairs
        let r = pwm_sample(&s(&[-2.0, -2.0, 2.0, 2.0]), &WeightFunction::power(2.0).unwrap()).unwrap();
        assert_eq!(r.value, 0.0);
        // hand computation with w = power(1): depths {1/3,1/2,1,1/2,1/3}
        let r = pwm_sample(&s(&[1.0, 2.0, 3.0, 4.0, 5.0]), &WeightFunction::power(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.value, 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.denominator, 8.0 / 3.0, epsilon = 1e-14);
        // n = 1 has MAD 0
        assert!(matches!(
            pwm_sample(&s(&[7.0]), &WeightFunction::power(2.0).unwrap()),
            Err(Error::DegenerateScale(_))
        ));
    }

    #[test]
    fn weight_monotonicity_transfers_to_samples() {
        let sample = s(&[-4.0, -1.0, -0.2, 0.3, 0.9, 2.5, 6.0]);
        let med = sample.median();
        for w in [WeightFunction::power(2.0).unwrap(), WeightFunction::zuo_exponential(3.0, 1.0).unwrap()] {
            let mad = sample.mad();
            let dp = DepthParams { center: med, scale: mad };
            let mut pairs: Vec<(f64, f64)> = sample
                .values()
                .iter()
                .map(|&x| ((x - med).abs(), w.eval(projection_depth(x, &dp))))
                .collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            for win in pairs.windows(2) {
                assert!(win[0].1 >= win[1].1 - 1e-15);
            }
        }
    }

    #[test]
    fn pwm_bootstrap_degenerate_and_deterministic() {
        let w = WeightFunction::power(2.0).unwrap();
        let degr = s(&[5.0, 5.0, 5.0, 5.0]);
        assert!(matches!(
            pwm_bootstrap(&degr, ResamplePlan::new(1, 0), &w),
            Err(Error::DegenerateResample)
        ));
        let sample = s(&[0.1, 0.9, 2.3, 3.7, 4.1, 5.5]);
        let plan = ResamplePlan::new(42, 7);
        let a = pwm_bootstrap(&sample, plan, &w);
        let b = pwm_bootstrap(&sample, plan, &w);
        match (a, b) {
            (Ok(x), Ok(y)) => assert_eq!(x.value, y.value),
            (Err(Error::DegenerateResample), Err(Error::DegenerateResample)) => {}
            other => panic!("mismatched outcomes: {other:?}"),
        }
    }

    #[test]
    fn pwm_bootstrap_enumeration_on_123() {
        // n = 3: only the 6 all-distinct resamples have a positive MAD
        let parent = s(&[1.0, 2.0, 3.0]);
        let w = WeightFunction::power(2.0).unwrap();
        let (dist, skipped) =
            enumerate_resamples_partial(&parent, |r| pwm_of_resampled(r, &w).ok().map(|p| p.value))
                .unwrap();
        assert_eq!(skipped, 21);
        assert_eq!(dist.total_count(), 6);
        assert_eq!(dist.outcomes.len(), 1);
        assert_eq!(dist.outcomes[0].0, 2.0);
    }

    #[test]
    fn modified_mad_pwm_examples() {
        let sample = s(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let w = WeightFunction::power(1.0).unwrap();
        let plain = pwm_sample(&sample, &w).unwrap();
        let k1 = modified_mad_pwm(&sample, 1, &w).unwrap();
        assert_eq!(plain.value, k1.value);
        assert_eq!(plain.denominator, k1.denominator);

        let sym = s(&[-2.0, -1.0, 1.0, 2.0]);
        let r = modified_mad_pwm(&sym, 2, &w).unwrap();
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-15);

        // k = 3 on [1..5]: scale = modified MAD = 2, depths {1/2,2/3,1,2/3,1/2}
        let r3 = modified_mad_pwm(&sample, 3, &w).unwrap();
        let weights = [0.5, 2.0 / 3.0, 1.0, 2.0 / 3.0, 0.5];
        let num: f64 = weights.iter().zip(sample.values()).map(|(w, x)| w * x).sum();
        let den: f64 = weights.iter().sum();
        assert_abs_diff_eq!(r3.value, num / den, epsilon = 1e-14);
        assert_abs_diff_eq!(r3.value, 3.0, epsilon = 1e-14);
    }

    #[test]
    fn pwm_population_symmetric_equals_median() {
        let w = WeightFunction::power(2.0).unwrap();
        for m in [
            DistributionModel::normal(1.5, 2.0).unwrap(),
            DistributionModel::laplace(-0.5, 1.0).unwrap(),
            DistributionModel::uniform(-2.0, 4.0).unwrap(),
            DistributionModel::contaminated_normal(0.1, 3.0).unwrap(),
        ] {
            let p = robust_params(&m).unwrap();
            let r = pwm_population(&m, &w, &p).unwrap();
            assert_abs_diff_eq!(r.value, p.v, epsilon = 1e-9);
            assert!(r.denominator > 0.0);
        }
    }

    #[test]
    fn pwm_population_exponential_fixture() {
        // frozen from two independent adaptive integrators (50-digit agreement)
        let m = DistributionModel::exponential(1.0).unwrap();
        let p = robust_params(&m).unwrap();
        let w = WeightFunction::power(2.0).unwrap();
        let r = pwm_population(&m, &w, &p).unwrap();
        assert_abs_diff_eq!(r.value, 0.6724842353708629, epsilon = 1e-9);
        assert_abs_diff_eq!(r.denominator, 0.3164237638082980, epsilon = 1e-9);
    }

    #[test]
    fn pwm_population_cauchy_guard() {
        let m = DistributionModel::cauchy(0.0, 1.0).unwrap();
        let p = robust_params(&m).unwrap();
        assert!(matches!(
            pwm_population(&m, &WeightFunction::power(2.0).unwrap(), &p),
            Err(Error::Integrability(_))
        ));
        let r = pwm_population(&m, &WeightFunction::power(3.0).unwrap(), &p).unwrap();
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn quadrature_convergence_on_node_doubling() {
        let (m, p) = normal();
        let w = WeightFunction::power(2.0).unwrap();
        let a = pwm_population_with_nodes(&m, &w, &p, 256).unwrap().value;
        let b = pwm_population_with_nodes(&m, &w, &p, 512).unwrap().value;
        assert!((a - b).abs() < 1e-8, "pwm drift {:.3e}", (a - b).abs());
        let va = pwm_asym_variance_with_nodes(&m, &w, &p, 256).unwrap();
        let vb = pwm_asym_variance_with_nodes(&m, &w, &p, 512).unwrap();
        assert!((va - vb).abs() < 1e-8, "variance drift {:.3e}", (va - vb).abs());
    }

    #[test]
    fn influence_f_fixtures() {
        let (_, p) = normal();
        // x = v kills every term (sign(0) = 0)
        for y in [-5.0, -0.2, 0.0, 0.3, 2.0] {
            assert_eq!(influence_f(p.v, y, &p), 0.0);
        }
        let x = p.v + p.xi;
        // frozen from the 50-digit oracle
        assert_abs_diff_eq!(influence_f(x, p.v + 2.0 * p.xi, &p), 0.7561384019782041, epsilon = 1e-9);
        assert_abs_diff_eq!(influence_f(x, p.v - 2.0 * p.xi, &p), -0.1729447582559935, epsilon = 1e-9);
    }

    #[test]
    fn influence_f_symmetry_identity() {
        use crate::rng::SplitMix64;
        let (_, p) = normal(); // v = 0, so reflection is plain negation
        let mut rng = SplitMix64::new(91);
        for _ in 0..200 {
            let x = 6.0 * (rng.next_open_unit() - 0.5);
            let mut y = 6.0 * (rng.next_open_unit() - 0.5);
            // keep clear of the indicator boundaries
            for b in [p.v, p.v - p.xi, p.v + p.xi] {
                if (y - b).abs() < 1e-6 {
                    y += 1e-3;
                }
            }
            let lhs = influence_f(2.0 * p.v - x, 2.0 * p.v - y, &p);
            let rhs = influence_f(x, y, &p);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn influence_k_symmetric_center_and_mean() {
        let (m, p) = normal();
        let w = WeightFunction::power(2.0).unwrap();
        let kernel = InfluenceKernel::new(&m, &w, &p).unwrap();
        assert!(kernel.k(p.v).abs() <= 1e-8, "K(v) = {}", kernel.k(p.v));
        assert!(kernel.mean().abs() <= 1e-6, "E K = {}", kernel.mean());
        // oddness about v away from boundaries
        for x in [0.3, 1.1, 2.7] {
            assert_abs_diff_eq!(kernel.k(-x), -kernel.k(x), epsilon = 1e-9);
        }
    }

    #[test]
    fn influence_k_fixtures_from_oracle() {
        let (m, p) = normal();
        let w = WeightFunction::power(2.0).unwrap();
        let kernel = InfluenceKernel::new(&m, &w, &p).unwrap();
        assert_abs_diff_eq!(kernel.k(p.v + p.xi), 1.3185307981615220, epsilon = 1e-7);
        assert_abs_diff_eq!(kernel.k(p.v - 1.0), -1.2989896291154694, epsilon = 1e-7);
        assert_abs_diff_eq!(kernel.denominator(), 0.3260837606880245, epsilon = 1e-9);
    }

    #[test]
    fn influence_k_inner_term_two_resolution_check() {
        // K(x) minus its direct (x - pwm0) w(PD(x)) / D part is the inner
        // integral; recomputing at doubled resolution must agree
        let (m, p) = normal();
        let w = WeightFunction::power(2.0).unwrap();
        let lo = InfluenceKernel::with_nodes(&m, &w, &p, 256).unwrap();
        let hi = InfluenceKernel::with_nodes(&m, &w, &p, 512).unwrap();
        let dp = DepthParams { center: p.v, scale: p.xi };
        for x in [-2.0, -0.4, 0.9, 3.0] {
            let direct_lo = lo.k(x) - (x - lo.pwm0()) * w.eval(projection_depth(x, &dp)) / lo.denominator();
            let direct_hi = hi.k(x) - (x - hi.pwm0()) * w.eval(projection_depth(x, &dp)) / hi.denominator();
            assert_abs_diff_eq!(direct_lo, direct_hi, epsilon = 1e-8);
        }
    }

    #[test]
    fn influence_k_free_function_matches_kernel() {
        let (m, p) = normal();
        let w = WeightFunction::power(2.0).unwrap();
        let kernel = InfluenceKernel::new(&m, &w, &p).unwrap();
        let x = 1.7;
        let via_free = influence_k(x, &m, &w, &p, kernel.pwm0()).unwrap();
        assert_eq!(via_free, kernel.k(x));
    }

    #[test]
    fn k_tail_increment_matches_direct_weight_share() {
        // far in the tail the step coefficients are constant, so a small
        // shift changes K by about delta * w(PD(x)) / D
        let (m, p) = normal();
        let w = WeightFunction::power(1.0).unwrap();
        let kernel = InfluenceKernel::new(&m, &w, &p).unwrap();
        let x0 = p.v + 300.0 * p.xi;
        let delta = 1e-3;
        let dp = DepthParams { center: p.v, scale: p.xi };
        let change = kernel.k(x0 + delta) - kernel.k(x0);
        let claimed = delta * w.eval(projection_depth(x0, &dp)) / kernel.denominator();
        assert!(
            (change - claimed).abs() <= 1e-4 * kernel.k(x0).abs(),
            "change {change:.3e} vs claimed {claimed:.3e}, K(x0) = {}",
            kernel.k(x0)
        );
    }

    #[test]
    fn asym_variance_fixtures() {
        let (m, p) = normal();
        let w = WeightFunction::power(2.0).unwrap();
        let v = pwm_asym_variance(&m, &w, &p).unwrap();
        assert_abs_diff_eq!(v, 3.0556738994138729, epsilon = 1e-7);
        assert!(v >= 0.0);

        let me = DistributionModel::exponential(1.0).unwrap();
        let pe = robust_params(&me).unwrap();
        let ve = pwm_asym_variance(&me, &w, &pe).unwrap();
        assert_abs_diff_eq!(ve, 1.9443947006373641, epsilon = 1e-7);
        let kernel = InfluenceKernel::new(&me, &w, &pe).unwrap();
        assert!(kernel.mean().abs() <= 1e-6);

        let ml = DistributionModel::laplace(0.0, 1.0).unwrap();
        let pl = robust_params(&ml).unwrap();
        assert_abs_diff_eq!(
            pwm_asym_variance(&ml, &w, &pl).unwrap(),
            2.0303655754862160,
            epsilon = 1e-7
        );
    }

    #[test]
    fn pwm_mc_variance_cross_validation() {
        // Monte Carlo of sqrt(n)(PWM* - PWM(F)) must land within 10% of the
        // quadrature value; modest replicate count keeps this test quick
        let (m, p) = normal();
        let w = WeightFunction::power(2.0).unwrap();
        let target = pwm_asym_variance(&m, &w, &p).unwrap();
        let n = 4000usize;
        let reps = 1200u64;
        let mut vals = Vec::with_capacity(reps as usize);
        for r in 0..reps {
            let seed = crate::rng::derive_stream(777, &[r]);
            let parent = draw_sample(&m, n, seed).unwrap();
            match pwm_bootstrap(&parent, ResamplePlan::new(seed ^ 0xABCD, 0), &w) {
                Ok(res) => vals.push((n as f64).sqrt() * (res.value - 0.0)),
                Err(Error::DegenerateResample) => {}
                Err(e) => panic!("{e}"),
            }
        }
        let k = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / k;
        let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
        assert!(
            (var - target).abs() <= 0.10 * target,
            "MC var {var} vs quadrature {target}"
        );
    }
}
