//! `madstrap` — command-line front end for the bootstrap median/MAD
//! estimator layer and its Monte Carlo experiment harness.
//!
//! Single-shot commands emit machine-readable JSON on stdout; experiments
//! write CSV to the configured path and print the summary JSON. Human
//! diagnostics go to stderr. Exit codes: 0 success, 1 runtime failure,
//! 2 usage or config error.

use clap::{Args, Parser, Subcommand};
use madstrap_core::bahadur::EstimatorKind;
use madstrap_core::bootstrap::{resample, ResamplePlan};
use madstrap_core::depth::{pwm_asym_variance, pwm_population, pwm_sample, WeightFunction};
use madstrap_core::distributions::{draw_sample, robust_params, DistributionModel};
use madstrap_core::error::Error as CoreError;
use madstrap_core::estimators::SortedSample;
use madstrap_core::rng::derive_stream;
use madstrap_harness::config::{DistributionConfig, ExperimentConfig};
use madstrap_harness::runner::{run_experiment, HarnessError};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "madstrap",
    version,
    about = "Bootstrap median/MAD estimators, their asymptotics, and deterministic Monte Carlo experiments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct DistArgs {
    /// Distribution family (normal, laplace, cauchy, uniform, exponential, contaminated_normal)
    #[arg(long)]
    dist: String,
    /// Location of normal/laplace
    #[arg(long)]
    mu: Option<f64>,
    /// Scale of normal
    #[arg(long)]
    sigma: Option<f64>,
    /// Scale of laplace, or upper endpoint of uniform
    #[arg(long)]
    b: Option<f64>,
    /// Location of cauchy
    #[arg(long)]
    x0: Option<f64>,
    /// Scale of cauchy
    #[arg(long)]
    gamma: Option<f64>,
    /// Lower endpoint of uniform
    #[arg(long)]
    a: Option<f64>,
    /// Rate of exponential
    #[arg(long)]
    lambda: Option<f64>,
    /// Contamination fraction of contaminated_normal
    #[arg(long = "eps-c")]
    eps_c: Option<f64>,
    /// Contaminant scale of contaminated_normal
    #[arg(long = "sigma-c")]
    sigma_c: Option<f64>,
}

impl DistArgs {
    fn config(&self) -> DistributionConfig {
        DistributionConfig {
            family: self.dist.clone(),
            mu: self.mu,
            sigma: self.sigma,
            b: self.b,
            x0: self.x0,
            gamma: self.gamma,
            a: self.a,
            lambda: self.lambda,
            eps: self.eps_c,
            sigma_c: self.sigma_c,
        }
    }

    fn build(&self) -> Result<DistributionModel, CliError> {
        self.config().build().map_err(|e| CliError::usage(e.to_string()))
    }
}

#[derive(Args)]
struct WeightArgs {
    /// Depth weight kind (power, zuo_exponential)
    #[arg(long, default_value = "power")]
    weight: String,
    /// Exponent of the power weight
    #[arg(long)]
    p: Option<f64>,
    /// Steepness of the zuo_exponential weight
    #[arg(long = "weight-k")]
    weight_k: Option<f64>,
    /// Saturation point of the zuo_exponential weight
    #[arg(long = "weight-c")]
    weight_c: Option<f64>,
}

impl WeightArgs {
    fn build(&self) -> Result<WeightFunction, CliError> {
        match self.weight.as_str() {
            "power" => WeightFunction::power(self.p.unwrap_or(2.0)),
            "zuo_exponential" => WeightFunction::zuo_exponential(
                self.weight_k.unwrap_or(3.0),
                self.weight_c.unwrap_or(1.0),
            ),
            other => return Err(CliError::usage(format!("unknown weight kind `{other}`"))),
        }
        .map_err(|e| CliError::usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Population median, MAD and the derived density constants
    Params(DistArgs),
    /// Asymptotic covariance matrix of sqrt(n)(Med*-v, MAD*-xi)
    Sigma(DistArgs),
    /// Sample estimators (median, MAD, generalized/modified variants, PWM) on data
    Estimate {
        /// Comma-separated values
        #[arg(long, conflicts_with = "input")]
        data: Option<String>,
        /// File with one value per line
        #[arg(long)]
        input: Option<String>,
        /// Order-statistic shift for the generalized median
        #[arg(long)]
        l: Option<usize>,
        /// Order-statistic shift for the generalized MAD
        #[arg(long)]
        m: Option<usize>,
        /// Shift of the modified MAD
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Exponential deviation bound for the bootstrap median or MAD
    Bound {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Deviation threshold
        #[arg(long)]
        eps: f64,
        /// Which estimator the bound is for (median or mad)
        #[arg(long, default_value = "median")]
        which: String,
    },
    /// One bootstrap replicate's Bahadur decomposition
    Bahadur {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Estimator kind (median, mad, generalized_mad)
        #[arg(long, default_value = "mad")]
        kind: String,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Empirical joint-normality check of the bootstrap median and MAD
    Jointnorm {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// unconditional (vs Sigma) or conditional (vs Sigma/2)
        #[arg(long, default_value = "unconditional")]
        mode: String,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Population projection depth weighted mean and its bootstrap variance
    Pwm {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        weight: WeightArgs,
        /// Also compute the asymptotic variance 2 var[K(X)]
        #[arg(long)]
        variance: bool,
    },
    /// Run a TOML-configured Monte Carlo experiment
    Experiment {
        /// Path to the TOML config
        #[arg(long)]
        config: String,
        /// Override the CSV output path
        #[arg(long)]
        out: Option<String>,
        /// Worker threads (0 = default); falls back to MADSTRAP_WORKERS
        #[arg(long)]
        workers: Option<usize>,
    },
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameters(_)
            | CoreError::Domain(_)
            | CoreError::IndexRange(_)
            | CoreError::SizeLimit { .. } => CliError::usage(e.to_string()),
            other => CliError::runtime(other.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Config(c) => CliError::usage(c.to_string()),
            other => CliError::runtime(other.to_string()),
        }
    }
}

fn emit(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
}

fn parse_data(data: Option<&str>, input: Option<&str>) -> Result<SortedSample, CliError> {
    let values: Vec<f64> = if let Some(text) = data {
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::usage(format!("bad value `{t}`: {e}")))
            })
            .collect::<Result<_, _>>()?
    } else if let Some(path) = input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::runtime(format!("cannot read {path}: {e}")))?;
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| CliError::usage(format!("bad value `{t}`: {e}")))
            })
            .collect::<Result<_, _>>()?
    } else {
        return Err(CliError::usage("estimate needs --data or --input"));
    };
    Ok(SortedSample::new(values)?)
}

fn workers_or_env(cli: Option<usize>) -> Result<usize, CliError> {
    if let Some(w) = cli {
        return Ok(w);
    }
    match std::env::var("MADSTRAP_WORKERS") {
        Ok(s) => s
            .parse::<usize>()
            .map_err(|e| CliError::usage(format!("MADSTRAP_WORKERS must be an integer: {e}"))),
        Err(_) => Ok(0),
    }
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Params(dist) => {
            let model = dist.build()?;
            let params = robust_params(&model)?;
            let mut v = serde_json::to_value(params).expect("params serialization");
            v.as_object_mut()
                .expect("object")
                .insert("dist".into(), json!(model.label()));
            emit(v);
            Ok(())
        }
        Cmd::Sigma(dist) => {
            let model = dist.build()?;
            let params = robust_params(&model)?;
            let s = madstrap_core::asymptotics::sigma_matrix(&params)?;
            emit(json!({
                "dist": model.label(),
                "s11": s.s11,
                "s12": s.s12,
                "s22": s.s22,
                "matrix": [[s.s11, s.s12], [s.s12, s.s22]],
            }));
            Ok(())
        }
        Cmd::Estimate { data, input, l, m, k, weight } => {
            let sample = parse_data(data.as_deref(), input.as_deref())?;
            let w = weight.build()?;
            let mut out = json!({
                "n": sample.n(),
                "median": sample.median(),
                "mad": sample.mad(),
            });
            let obj = out.as_object_mut().expect("object");
            if let Some(l) = l {
                obj.insert("generalized_median".into(), json!(sample.generalized_median(l)?));
                let m_shift = m.unwrap_or(1);
                obj.insert("generalized_mad".into(), json!(sample.generalized_mad(m_shift, l)?));
            }
            if let Some(k) = k {
                obj.insert("modified_mad".into(), json!(sample.modified_mad(k)?));
            }
            match pwm_sample(&sample, &w) {
                Ok(p) => {
                    obj.insert("pwm".into(), json!(p.value));
                }
                Err(CoreError::DegenerateScale(_)) => {
                    obj.insert("pwm".into(), serde_json::Value::Null);
                    obj.insert("pwm_degenerate".into(), json!(true));
                }
                Err(e) => return Err(e.into()),
            }
            emit(out);
            Ok(())
        }
        Cmd::Bound { dist, n, l, m, eps, which } => {
            let model = dist.build()?;
            let params = robust_params(&model)?;
            let b = match which.as_str() {
                "median" => {
                    madstrap_core::bahadur::concentration_bound_median(&model, &params, n, l, eps)?
                }
                "mad" => {
                    madstrap_core::bahadur::concentration_bound_mad(&model, &params, n, l, m, eps)?
                }
                other => {
                    return Err(CliError::usage(format!(
                        "--which must be median or mad, got `{other}`"
                    )))
                }
            };
            let mut v = serde_json::to_value(b).expect("bound serialization");
            v.as_object_mut()
                .expect("object")
                .insert("dist".into(), json!(model.label()));
            emit(v);
            Ok(())
        }
        Cmd::Bahadur { dist, n, seed, kind, l, m } => {
            let model = dist.build()?;
            let params = robust_params(&model)?;
            let estimator = match kind.as_str() {
                "median" => EstimatorKind::Median,
                "mad" => EstimatorKind::Mad,
                "generalized_mad" => EstimatorKind::GeneralizedMad { m, l },
                other => return Err(CliError::usage(format!("unknown estimator kind `{other}`"))),
            };
            let parent = draw_sample(&model, n, derive_stream(seed, &[0]))?;
            let bs = resample(&parent, ResamplePlan::new(seed, 1));
            let d = madstrap_core::bahadur::decompose(&bs, &params, estimator)?;
            let mut v = serde_json::to_value(d).expect("decomposition serialization");
            let obj = v.as_object_mut().expect("object");
            obj.insert("dist".into(), json!(model.label()));
            obj.insert("seed".into(), json!(seed));
            emit(v);
            Ok(())
        }
        Cmd::Jointnorm { dist, n, reps, seed, mode, workers } => {
            let kind = match mode.as_str() {
                "unconditional" => "joint_normality",
                "conditional" => "conditional_normality",
                other => {
                    return Err(CliError::usage(format!(
                        "--mode must be unconditional or conditional, got `{other}`"
                    )))
                }
            };
            let workers = workers_or_env(workers)?;
            let dir = std::env::temp_dir().join(format!(
                "madstrap-jointnorm-{}-{seed}",
                std::process::id()
            ));
            std::fs::create_dir_all(&dir)
                .map_err(|e| CliError::runtime(format!("cannot create temp dir: {e}")))?;
            let csv = dir.join("jointnorm.csv");
            let toml_text = format!(
                "[experiment]\nkind = \"{kind}\"\nn_grid = [{n}]\nreps = {reps}\nmaster_seed = {seed}\nworkers = {workers}\n\n[distribution]\nfamily = \"{}\"\n\n[output]\npath = '{}'\n",
                dist.dist,
                csv.display()
            );
            let mut cfg = ExperimentConfig::from_toml(&toml_text).map_err(HarnessError::Config)?;
            cfg.distribution = dist.config();
            cfg.validate().map_err(HarnessError::Config)?;
            let out = run_experiment(&cfg)?;
            emit(out.summary.flags.clone());
            let _ = std::fs::remove_dir_all(&dir);
            Ok(())
        }
        Cmd::Pwm { dist, weight, variance } => {
            let model = dist.build()?;
            let params = robust_params(&model)?;
            let w = weight.build()?;
            let pop = pwm_population(&model, &w, &params)?;
            let mut out = json!({
                "dist": model.label(),
                "weight": w.label(),
                "pwm": pop.value,
                "numerator": pop.numerator,
                "denominator": pop.denominator,
            });
            if variance {
                let v = pwm_asym_variance(&model, &w, &params)?;
                out.as_object_mut()
                    .expect("object")
                    .insert("asym_variance".into(), json!(v));
            }
            emit(out);
            Ok(())
        }
        Cmd::Experiment { config, out, workers } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::runtime(format!("cannot read {config}: {e}")))?;
            let mut cfg = ExperimentConfig::from_toml(&text).map_err(HarnessError::Config)?;
            if let Some(path) = out {
                cfg.output.path = path;
            }
            let workers = workers_or_env(workers)?;
            if workers > 0 {
                cfg.experiment.workers = Some(workers);
            }
            let result = run_experiment(&cfg)?;
            eprintln!(
                "wrote {} ({} rows) and {}",
                result.csv_path,
                result.results.records.len(),
                result.summary_path
            );
            let json = serde_json::to_string_pretty(&result.summary).expect("summary json");
            println!("{json}");
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli.cmd) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
