//! Experiment configuration: TOML schema, validation, and construction of
//! the model/weight/estimator objects.

use madstrap_core::bahadur::EstimatorKind;
use madstrap_core::depth::WeightFunction;
use madstrap_core::distributions::DistributionModel;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    BahadurRate,
    BoundCheck,
    JointNormality,
    ConditionalNormality,
    PwmVariance,
    CiCoverage,
}

impl ExperimentKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::BahadurRate => "bahadur_rate",
            Self::BoundCheck => "bound_check",
            Self::JointNormality => "joint_normality",
            Self::ConditionalNormality => "conditional_normality",
            Self::PwmVariance => "pwm_variance",
            Self::CiCoverage => "ci_coverage",
        }
    }
}

/// `[experiment]` table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentTable {
    pub kind: ExperimentKind,
    pub n_grid: Vec<usize>,
    pub reps: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub estimator: Option<String>,
    #[serde(default)]
    pub bootstrap_b: Option<usize>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub l: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub ci_level: Option<f64>,
    #[serde(default)]
    pub workers: Option<usize>,
}

/// `[distribution]` table: a family name plus its parameters. Omitted
/// parameters default to the standard member of the family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionConfig {
    pub family: String,
    #[serde(default)]
    pub mu: Option<f64>,
    #[serde(default)]
    pub sigma: Option<f64>,
    #[serde(default)]
    pub b: Option<f64>,
    #[serde(default)]
    pub x0: Option<f64>,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub sigma_c: Option<f64>,
}

impl DistributionConfig {
    pub fn standard(family: &str) -> Self {
        Self {
            family: family.to_string(),
            mu: None,
            sigma: None,
            b: None,
            x0: None,
            gamma: None,
            a: None,
            lambda: None,
            eps: None,
            sigma_c: None,
        }
    }

    pub fn build(&self) -> Result<DistributionModel, HarnessConfigError> {
        let m = match self.family.as_str() {
            "normal" => DistributionModel::normal(self.mu.unwrap_or(0.0), self.sigma.unwrap_or(1.0)),
            "laplace" => DistributionModel::laplace(self.mu.unwrap_or(0.0), self.b.unwrap_or(1.0)),
            "cauchy" => DistributionModel::cauchy(self.x0.unwrap_or(0.0), self.gamma.unwrap_or(1.0)),
            "uniform" => DistributionModel::uniform(self.a.unwrap_or(0.0), self.b.unwrap_or(1.0)),
            "exponential" => DistributionModel::exponential(self.lambda.unwrap_or(1.0)),
            "contaminated_normal" => DistributionModel::contaminated_normal(
                self.eps.unwrap_or(0.1),
                self.sigma_c.unwrap_or(3.0),
            ),
            other => {
                return Err(HarnessConfigError(format!("unknown distribution family `{other}`")))
            }
        };
        m.map_err(|e| HarnessConfigError(format!("distribution: {e}")))
    }
}

/// `[weight]` table; defaults to the power weight with p = 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    pub kind: String,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub k: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
}

impl Default for WeightConfig {
    fn default() -> Self {
        Self { kind: "power".into(), p: Some(2.0), k: None, c: None }
    }
}

impl WeightConfig {
    pub fn build(&self) -> Result<WeightFunction, HarnessConfigError> {
        match self.kind.as_str() {
            "power" => WeightFunction::power(self.p.unwrap_or(2.0)),
            "zuo_exponential" => {
                WeightFunction::zuo_exponential(self.k.unwrap_or(3.0), self.c.unwrap_or(1.0))
            }
            other => return Err(HarnessConfigError(format!("unknown weight kind `{other}`"))),
        }
        .map_err(|e| HarnessConfigError(format!("weight: {e}")))
    }
}

/// `[output]` table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputTable {
    pub path: String,
}

/// The whole config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentTable,
    pub distribution: DistributionConfig,
    #[serde(default)]
    pub weight: Option<WeightConfig>,
    pub output: OutputTable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("config error: {0}")]
pub struct HarnessConfigError(pub String);

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessConfigError> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| HarnessConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessConfigError> {
        let e = &self.experiment;
        if e.n_grid.is_empty() {
            return Err(HarnessConfigError("experiment.n_grid must be nonempty".into()));
        }
        if !e.n_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(HarnessConfigError("experiment.n_grid must be strictly ascending".into()));
        }
        if e.n_grid[0] == 0 {
            return Err(HarnessConfigError("experiment.n_grid entries must be positive".into()));
        }
        if e.reps == 0 {
            return Err(HarnessConfigError("experiment.reps must be at least 1".into()));
        }
        if let Some(level) = e.ci_level {
            if !(level > 0.0 && level < 1.0) {
                return Err(HarnessConfigError(format!(
                    "experiment.ci_level must lie in (0,1), got {level}"
                )));
            }
        }
        match e.kind {
            ExperimentKind::BoundCheck => {
                let eps = e.epsilon.ok_or_else(|| {
                    HarnessConfigError("experiment.epsilon is required for bound_check".into())
                })?;
                if !(eps > 0.0) {
                    return Err(HarnessConfigError(format!(
                        "experiment.epsilon must be positive, got {eps}"
                    )));
                }
            }
            ExperimentKind::CiCoverage => {
                let b = e.bootstrap_b.ok_or_else(|| {
                    HarnessConfigError("experiment.bootstrap_b is required for ci_coverage".into())
                })?;
                if b < 500 {
                    return Err(HarnessConfigError(format!(
                        "experiment.bootstrap_b must be at least 500, got {b}"
                    )));
                }
                if self.distribution.family == "cauchy" {
                    return Err(HarnessConfigError(
                        "ci_coverage needs a finite population mean for the t-interval; cauchy has none"
                            .into(),
                    ));
                }
            }
            _ => {}
        }
        self.distribution.build()?;
        self.weight.clone().unwrap_or_default().build()?;
        self.estimator_kind()?;
        Ok(())
    }

    /// Estimator selection for the decomposition experiments. Defaults to
    /// the averaged MAD.
    pub fn estimator_kind(&self) -> Result<EstimatorKind, HarnessConfigError> {
        let e = &self.experiment;
        let name = e.estimator.as_deref().unwrap_or("mad");
        match name {
            "median" => Ok(EstimatorKind::Median),
            "mad" => Ok(EstimatorKind::Mad),
            "generalized_mad" => Ok(EstimatorKind::GeneralizedMad {
                m: e.m.unwrap_or(1),
                l: e.l.unwrap_or(1),
            }),
            other => Err(HarnessConfigError(format!("unknown estimator `{other}`"))),
        }
    }

    pub fn weight(&self) -> Result<WeightFunction, HarnessConfigError> {
        self.weight.clone().unwrap_or_default().build()
    }

    pub fn ci_level(&self) -> f64 {
        self.experiment.ci_level.unwrap_or(0.95)
    }
}
