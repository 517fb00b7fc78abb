//! Order-statistic machinery: sample median and MAD, their index-shifted
//! generalizations, absolute-deviation transforms, and empirical CDFs with
//! left limits.
//!
//! With `X_{1:n} ≤ … ≤ X_{n:n}` the order statistics of the sample,
//!
//! * `Med_n  = (X_{⌊(n+1)/2⌋:n} + X_{⌊(n+2)/2⌋:n}) / 2`
//! * `MAD_n  = (W_{⌊(n+1)/2⌋:n} + W_{⌊(n+2)/2⌋:n}) / 2`,
//!   `W_i = |X_i − Med_n|`
//! * `v̂_{n,l}   = X_{⌊(n+l)/2⌋:n}` — single order statistic, shift `l`
//! * `ξ̂_{n,m,l} = W_{⌊(n+m)/2⌋:n,l}` — order statistic of `W_{i,l} = |X_i − v̂_{n,l}|`
//! * `MAD_{nk}  = (W_{⌊(n+k)/2⌋:n} + W_{⌊(n+k+1)/2⌋:n}) / 2` — the
//!   breakdown-tunable modification, deviations taken about `Med_n`
//!
//! Shift indices are validated to `1 ≤ l, m ≤ ⌊n/2⌋` (and `1 ≤ k ≤ n−1`);
//! larger shifts are rejected rather than extrapolated. All index arithmetic
//! is exact integer arithmetic, never floating-point floor.
//!
//! ECDF tie semantics: `value` counts `≤ x`, `left` counts `< x`, matching
//! the left-limit convention in G(y) = F(v+y) − F(v−y⁻).
//!
//! Each sample is sorted once at construction (O(n log n)) because it is
//! then queried for many order statistics and ECDF evaluations.

use crate::error::{Error, Result};

/// A validated sample holding both the original order and the sorted order.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSample {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl SortedSample {
    /// Builds a sample. Rejects empty input and non-finite values.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("sample must be nonempty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("sample contains non-finite value {bad}")));
        }
        let mut sorted = values.clone();
        sorted.sort_unstable_by(f64::total_cmp);
        Ok(Self { values, sorted })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Observations in their original order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Observations in ascending order.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// The k-th smallest value, 1-based.
    pub fn order_stat(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.n() {
            return Err(Error::IndexRange(format!("order statistic {k} of n = {}", self.n())));
        }
        Ok(self.sorted[k - 1])
    }

    /// Sample median `Med_n`.
    pub fn median(&self) -> f64 {
        let n = self.n();
        let a = self.sorted[(n + 1) / 2 - 1];
        let b = self.sorted[(n + 2) / 2 - 1];
        0.5 * (a + b)
    }

    /// Sample MAD: the median of `|X_i − Med_n|`.
    pub fn mad(&self) -> f64 {
        let devs = AbsDeviations::about(self, self.median());
        let n = self.n();
        0.5 * (devs.sorted_devs[(n + 1) / 2 - 1] + devs.sorted_devs[(n + 2) / 2 - 1])
    }

    /// Generalized median `v̂_{n,l} = X_{⌊(n+l)/2⌋:n}` for `1 ≤ l ≤ ⌊n/2⌋`.
    pub fn generalized_median(&self, l: usize) -> Result<f64> {
        let n = self.n();
        if l == 0 || l > n / 2 {
            return Err(Error::IndexRange(format!("shift l = {l} outside [1, {}] for n = {n}", n / 2)));
        }
        Ok(self.sorted[(n + l) / 2 - 1])
    }

    /// Generalized MAD `ξ̂_{n,m,l}`: the `⌊(n+m)/2⌋`-th order statistic of
    /// `|X_i − v̂_{n,l}|`.
    pub fn generalized_mad(&self, m: usize, l: usize) -> Result<f64> {
        let n = self.n();
        if m == 0 || m > n / 2 {
            return Err(Error::IndexRange(format!("shift m = {m} outside [1, {}] for n = {n}", n / 2)));
        }
        let center = self.generalized_median(l)?;
        let devs = AbsDeviations::about(self, center);
        Ok(devs.sorted_devs[(n + m) / 2 - 1])
    }

    /// Modified MAD `MAD_{nk}` with deviations about the sample median,
    /// `1 ≤ k ≤ n−1`. `k = 1` reduces to [`SortedSample::mad`].
    pub fn modified_mad(&self, k: usize) -> Result<f64> {
        let n = self.n();
        if k == 0 || k > n - 1 {
            return Err(Error::IndexRange(format!("shift k = {k} outside [1, {}] for n = {n}", n - 1)));
        }
        let devs = AbsDeviations::about(self, self.median());
        Ok(0.5 * (devs.sorted_devs[(n + k) / 2 - 1] + devs.sorted_devs[(n + k + 1) / 2 - 1]))
    }

    /// Empirical CDF at `x`: `value` = #{X_i ≤ x}/n, `left` = #{X_i < x}/n.
    pub fn ecdf(&self, x: f64) -> EcdfEval {
        let n = self.n() as f64;
        let le = self.sorted.partition_point(|&v| v <= x);
        let lt = self.sorted.partition_point(|&v| v < x);
        EcdfEval { at: x, value: le as f64 / n, left: lt as f64 / n }
    }

    /// ECDF of the absolute deviations about `center`:
    /// `value` = #{|X_i − center| ≤ y}/n, `left` = #{|X_i − center| < y}/n.
    /// Negative `y` yields 0.
    ///
    /// Deviations are evaluated with the same expression `|x − center|`
    /// the MAD estimators use, so tie counts at an order statistic of the
    /// deviations are exact rather than subject to `center ± y` rounding.
    pub fn absdev_ecdf(&self, center: f64, y: f64) -> EcdfEval {
        let n = self.n() as f64;
        if y < 0.0 {
            return EcdfEval { at: y, value: 0.0, left: 0.0 };
        }
        let mut le = 0usize;
        let mut lt = 0usize;
        for &x in &self.values {
            let d = (x - center).abs();
            if d <= y {
                le += 1;
                if d < y {
                    lt += 1;
                }
            }
        }
        EcdfEval { at: y, value: le as f64 / n, left: lt as f64 / n }
    }
}

/// Absolute deviations `W_i = |X_i − center|` with their sorted order.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsDeviations {
    pub center: f64,
    pub devs: Vec<f64>,
    pub sorted_devs: Vec<f64>,
}

impl AbsDeviations {
    pub fn about(sample: &SortedSample, center: f64) -> Self {
        let devs: Vec<f64> = sample.values().iter().map(|&x| (x - center).abs()).collect();
        let mut sorted_devs = devs.clone();
        sorted_devs.sort_unstable_by(f64::total_cmp);
        Self { center, devs, sorted_devs }
    }
}

/// One ECDF evaluation with its left limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcdfEval {
    /// The query point.
    pub at: f64,
    /// F_n(at) = #{≤ at}/n.
    pub value: f64,
    /// F_n(at⁻) = #{< at}/n.
    pub left: f64,
}

impl EcdfEval {
    /// Number of observations tied exactly at the query point, out of `n`.
    pub fn tie_count(&self, n: usize) -> usize {
        ((self.value - self.left) * n as f64).round() as usize
    }
}
