//! Deterministic resampling and the exact small-n enumeration oracle.
//!
//! A bootstrap sample is `n` draws with replacement from the observed
//! sample; its empirical function is `F_n*`. Resampling here is driven by
//! the frozen generator in [`crate::rng`]: the per-replicate stream seed is
//! a pure function of `(master_seed, replicate_index)`, so replicates can be
//! evaluated in any order or degree of parallelism and still produce
//! byte-identical results.
//!
//! For `n ≤ 8` the full set of nⁿ equiprobable index vectors can be
//! enumerated, giving exact rational distributions of any resample
//! statistic. The enumeration is the ground truth that Monte Carlo runs are
//! checked against.

use crate::error::{Error, Result};
use crate::estimators::SortedSample;
use crate::rng::{derive_stream, SplitMix64};

/// Addressing for one bootstrap replicate within a deterministic run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResamplePlan {
    pub master_seed: u64,
    pub replicate_index: u64,
}

impl ResamplePlan {
    pub fn new(master_seed: u64, replicate_index: u64) -> Self {
        Self { master_seed, replicate_index }
    }

    /// The derived per-replicate stream seed (see [`crate::rng::derive_stream`]).
    pub fn stream_seed(&self) -> u64 {
        derive_stream(self.master_seed, &[self.replicate_index])
    }
}

/// One bootstrap resample: the chosen indices (1-based) and the resampled
/// data as a [`SortedSample`].
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapSample<'a> {
    parent: &'a SortedSample,
    indices: Vec<usize>,
    resampled: SortedSample,
}

impl<'a> BootstrapSample<'a> {
    pub fn parent(&self) -> &SortedSample {
        self.parent
    }

    /// Indices into the parent sample, 1-based, one per draw.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn resampled(&self) -> &SortedSample {
        &self.resampled
    }
}

/// Draws `n` indices uniformly with replacement from the parent sample.
/// Deterministic given the plan.
pub fn resample<'a>(parent: &'a SortedSample, plan: ResamplePlan) -> BootstrapSample<'a> {
    let n = parent.n();
    let mut rng = SplitMix64::new(plan.stream_seed());
    let mut indices = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        let i = rng.next_index(n as u64) as usize;
        indices.push(i + 1);
        values.push(parent.values()[i]);
    }
    let resampled = SortedSample::new(values).expect("parent sample is nonempty and finite");
    BootstrapSample { parent, indices, resampled }
}

/// `(Med*, MAD*)` of one bootstrap resample.
pub fn bootstrap_med_mad(parent: &SortedSample, plan: ResamplePlan) -> (f64, f64) {
    let bs = resample(parent, plan);
    (bs.resampled().median(), bs.resampled().mad())
}

/// Exact distribution of a resample statistic over all nⁿ index vectors.
///
/// Probabilities are kept as exact rational counts over the common
/// denominator nⁿ, so they sum to 1 without rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct EnumeratedDistribution {
    /// Distinct statistic values with their outcome counts, ascending by value.
    pub outcomes: Vec<(f64, u64)>,
    /// The common denominator nⁿ.
    pub denominator: u64,
}

impl EnumeratedDistribution {
    pub fn total_count(&self) -> u64 {
        self.outcomes.iter().map(|&(_, c)| c).sum()
    }

    pub fn prob(&self, value: f64) -> f64 {
        self.outcomes
            .iter()
            .find(|&&(v, _)| v == value)
            .map(|&(_, c)| c as f64 / self.denominator as f64)
            .unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        let d = self.total_count() as f64;
        self.outcomes.iter().map(|&(v, c)| v * c as f64).sum::<f64>() / d
    }

    /// Central moment of the given order.
    pub fn central_moment(&self, order: u32) -> f64 {
        let m = self.mean();
        let d = self.total_count() as f64;
        self.outcomes
            .iter()
            .map(|&(v, c)| (v - m).powi(order as i32) * c as f64)
            .sum::<f64>()
            / d
    }

    pub fn variance(&self) -> f64 {
        self.central_moment(2)
    }
}

const ENUM_MAX_N: usize = 8;

/// Enumerates all nⁿ resamples of a small sample and returns the exact
/// distribution of `statistic` over them. Guarded to `n ≤ 8`.
pub fn enumerate_resamples<F>(parent: &SortedSample, statistic: F) -> Result<EnumeratedDistribution>
where
    F: Fn(&SortedSample) -> f64,
{
    let (dist, skipped) = enumerate_resamples_partial(parent, |s| Some(statistic(s)))?;
    debug_assert_eq!(skipped, 0);
    Ok(dist)
}

/// Like [`enumerate_resamples`], but the statistic may return `None` for
/// degenerate resamples; those outcomes are excluded from the distribution
/// and returned as a count.
pub fn enumerate_resamples_partial<F>(
    parent: &SortedSample,
    statistic: F,
) -> Result<(EnumeratedDistribution, u64)>
where
    F: Fn(&SortedSample) -> Option<f64>,
{
    let n = parent.n();
    if n > ENUM_MAX_N {
        return Err(Error::SizeLimit { n, max: ENUM_MAX_N });
    }
    let denominator = (n as u64).pow(n as u32);
    let values = parent.values();
    let mut idx = vec![0usize; n];
    let mut buf = vec![0.0f64; n];
    let mut outcomes: std::collections::BTreeMap<u64, (f64, u64)> = std::collections::BTreeMap::new();
    let mut skipped = 0u64;
    loop {
        for (b, &i) in buf.iter_mut().zip(idx.iter()) {
            *b = values[i];
        }
        let resampled = SortedSample::new(buf.clone()).expect("finite parent values");
        match statistic(&resampled) {
            Some(v) => {
                // key by total order of the f64 bits so -0.0/0.0 and ties collapse
                let key = (v + 0.0).to_bits() ^ if v < 0.0 { !0 } else { 1 << 63 };
                outcomes.entry(key).or_insert((v, 0)).1 += 1;
            }
            None => skipped += 1,
        }
        // odometer over [0, n)^n
        let mut pos = 0;
        loop {
            if pos == n {
                let dist = EnumeratedDistribution {
                    outcomes: outcomes.into_values().collect(),
                    denominator,
                };
                return Ok((dist, skipped));
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
