//! Repeated bandit experiments and regret bookkeeping.
//!
//! Every repetition owns its instance, learners and random streams, so the
//! repetitions can run on a thread pool and still aggregate to exactly the
//! same numbers: streams are derived from `(master_seed, repetition,
//! algorithm)` and the reduction walks repetitions in index order.

mod config;
mod output;

pub use config::{default_checkpoints, parse_list, AlgorithmSpec, ExperimentConfig, InstanceSpec, WeightsSpec};
pub use output::{format_sig12, read_means_csv, read_results_csv, write_results, CsvRow, CSV_COLUMNS, METADATA_FILE, RESULTS_FILE};

use rayon::prelude::*;
use serde::Serialize;

use crate::env::{make_random_instance, stream_rng, true_means, ArmDistribution, ArmMeans, EmpiricalState, SimRng};
use crate::error::{check_dim, Error, Result};
use crate::ggi::{ggi_unchecked, ggi_value, GgiWeights};
use crate::policies::{sample_arm, FixedArm, Learner, MoLp, MoOgde, UniformRandom};
use crate::programs::optimal_mixed_policy;
use crate::projection::MixedPolicy;

/// `G_w(cumulative_cost / t) − ggi_star`.
pub fn regret(w: &GgiWeights, cumulative_cost: &[f64], t: u64, ggi_star: f64) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidParameter("regret needs at least one round".into()));
    }
    let average: Vec<f64> = cumulative_cost.iter().map(|c| c / t as f64).collect();
    Ok(ggi_value(w, &average)? - ggi_star)
}

/// `G_w(μ ᾱ) − ggi_star`.
pub fn pseudo_regret(w: &GgiWeights, mu: &ArmMeans, alpha_bar: &MixedPolicy, ggi_star: f64) -> Result<f64> {
    check_dim(w.dim(), mu.dim())?;
    Ok(ggi_unchecked(w, &mu.mix(alpha_bar.as_slice())?) - ggi_star)
}

/// Snapshot of one run at round `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckpointRecord {
    pub t: u64,
    pub cumulative_cost: Vec<f64>,
    pub pull_counts: Vec<u64>,
    /// `(1/t) Σ_τ α^{(τ)}`.
    pub alpha_bar: Vec<f64>,
    pub regret: f64,
    pub pseudo_regret: f64,
}

impl CheckpointRecord {
    pub fn abs_gap(&self) -> f64 {
        (self.regret - self.pseudo_regret).abs()
    }

    /// `|T_k(t) − Σ_τ α_k^{(τ)}|` for each arm.
    pub fn pull_deviation(&self) -> Vec<f64> {
        self.pull_counts
            .iter()
            .zip(&self.alpha_bar)
            .map(|(n, a)| (*n as f64 - a * self.t as f64).abs())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunTrace {
    pub algorithm: String,
    pub checkpoints: Vec<CheckpointRecord>,
    /// Smallest `min_k α_k^{(t)} − floor_t` over all rounds where the learner
    /// promised a floor; `None` if it never did.
    pub min_floor_margin: Option<f64>,
}

impl RunTrace {
    pub fn at(&self, t: u64) -> Option<&CheckpointRecord> {
        self.checkpoints.iter().find(|c| c.t == t)
    }
}

/// Fixed inputs of one simulated run.
pub struct RunSetup<'a> {
    pub arms: &'a [ArmDistribution],
    pub weights: &'a GgiWeights,
    pub means: &'a ArmMeans,
    pub ggi_star: f64,
    pub horizon: u64,
    pub checkpoints: &'a [u64],
}

/// Plays `learner` for `horizon` rounds, recording the requested checkpoints.
pub fn run_learner(learner: &mut dyn Learner, setup: &RunSetup<'_>, rng: &mut SimRng) -> Result<RunTrace> {
    let arms = setup.arms.len();
    let dim = setup.means.dim();
    let mut stats = EmpiricalState::new(arms, dim);
    let mut alpha_sum = vec![0.0; arms];
    let mut cost = vec![0.0; dim];
    let mut records = Vec::with_capacity(setup.checkpoints.len());
    let mut next_cp = setup.checkpoints.iter().peekable();
    let mut margin: Option<f64> = None;

    for t in 1..=setup.horizon {
        let policy = learner.next_policy(t, &stats)?;
        check_dim(arms, policy.arms())?;
        if let Some(floor) = learner.exploration_floor(t) {
            let m = policy.min_prob() - floor;
            margin = Some(margin.map_or(m, |old| old.min(m)));
        }
        for (s, a) in alpha_sum.iter_mut().zip(policy.as_slice()) {
            *s += a;
        }
        let k = sample_arm(&policy, rng);
        setup.arms[k].sample_into(rng, &mut cost);
        stats.update(k, &cost)?;
        learner.observe(t, &stats)?;

        if next_cp.peek() == Some(&&t) {
            next_cp.next();
            let alpha_bar: Vec<f64> = alpha_sum.iter().map(|s| s / t as f64).collect();
            let r = regret(setup.weights, stats.cumulative_cost(), t, setup.ggi_star)?;
            let pr = ggi_unchecked(setup.weights, &setup.means.mix_unchecked(&alpha_bar)) - setup.ggi_star;
            records.push(CheckpointRecord {
                t,
                cumulative_cost: stats.cumulative_cost().to_vec(),
                pull_counts: stats.pull_counts().to_vec(),
                alpha_bar,
                regret: r,
                pseudo_regret: pr,
            });
        }
    }
    Ok(RunTrace { algorithm: learner.label(), checkpoints: records, min_floor_margin: margin })
}

/// Builds the learner for `spec`.
pub fn make_learner(spec: AlgorithmSpec, arms: usize, weights: &GgiWeights, delta: f64) -> Result<Box<dyn Learner>> {
    Ok(match spec {
        AlgorithmSpec::MoOgde => Box::new(MoOgde::new(arms, weights.clone(), delta)?),
        AlgorithmSpec::MoLp => Box::new(MoLp::new(arms, weights.clone(), delta)?),
        AlgorithmSpec::Fixed(k) => Box::new(FixedArm::new(k, arms)?),
        AlgorithmSpec::Uniform => Box::new(UniformRandom::new(arms)?),
    })
}

/// Everything produced by one repetition.
#[derive(Debug, Clone, Serialize)]
pub struct RepetitionResult {
    pub rep: usize,
    /// Seed of the generated instance, for random instances.
    pub instance_seed: Option<u64>,
    pub ggi_star: f64,
    pub alpha_star: Vec<f64>,
    /// One trace per configured algorithm, in config order.
    pub traces: Vec<RunTrace>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of the random instance used in repetition `rep`.
pub fn instance_seed(base: u64, rep: usize) -> u64 {
    splitmix64(base ^ splitmix64(rep as u64))
}

/// Stream id of algorithm `algo` in repetition `rep`.
pub fn noise_stream(rep: usize, algo: usize) -> u64 {
    ((rep as u64) << 16) | (algo as u64 + 1)
}

fn run_repetition(cfg: &ExperimentConfig, weights: &GgiWeights, checkpoints: &[u64], rep: usize) -> Result<RepetitionResult> {
    let (arms, seed) = match &cfg.instance_spec {
        InstanceSpec::RandomBernoulli { seed } => {
            let s = instance_seed(seed.unwrap_or(cfg.master_seed), rep);
            (make_random_instance(cfg.arms, cfg.dim, s)?, Some(s))
        }
        InstanceSpec::Explicit(arms) => (arms.clone(), None),
    };
    let means = true_means(&arms)?;
    let optimum = optimal_mixed_policy(weights, &means)?;
    let setup = RunSetup {
        arms: &arms,
        weights,
        means: &means,
        ggi_star: optimum.ggi_star,
        horizon: cfg.horizon,
        checkpoints,
    };
    let traces = cfg
        .algorithms
        .iter()
        .enumerate()
        .map(|(a, spec)| {
            let mut learner = make_learner(*spec, cfg.arms, weights, cfg.delta)?;
            let mut rng = stream_rng(cfg.master_seed, noise_stream(rep, a));
            run_learner(learner.as_mut(), &setup, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RepetitionResult {
        rep,
        instance_seed: seed,
        ggi_star: optimum.ggi_star,
        alpha_star: optimum.alpha_star.into_vec(),
        traces,
    })
}

/// Runs all repetitions, on `threads` workers if given (else rayon's default).
pub fn run_repetitions(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<Vec<RepetitionResult>> {
    cfg.validate()?;
    let weights = cfg.weights()?;
    let checkpoints = cfg.checkpoint_rounds();
    let work = || {
        (0..cfg.reps)
            .into_par_iter()
            .map(|rep| run_repetition(cfg, &weights, &checkpoints, rep))
            .collect::<Result<Vec<_>>>()
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Mean and standard error over repetitions at one checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckpointStats {
    pub t: u64,
    pub regret_mean: f64,
    pub regret_stderr: f64,
    pub pseudo_regret_mean: f64,
    pub pseudo_regret_stderr: f64,
    pub abs_gap_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmSeries {
    pub algorithm: String,
    pub points: Vec<CheckpointStats>,
}

impl AlgorithmSeries {
    pub fn at(&self, t: u64) -> Option<&CheckpointStats> {
        self.points.iter().find(|p| p.t == t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateResult {
    pub config: ExperimentConfig,
    pub instance_seeds: Vec<u64>,
    pub series: Vec<AlgorithmSeries>,
}

impl AggregateResult {
    pub fn series(&self, algorithm: &str) -> Option<&AlgorithmSeries> {
        self.series.iter().find(|s| s.algorithm == algorithm)
    }
}

/// Sample mean and `std / √n` (zero for a single value).
pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn aggregate(cfg: &ExperimentConfig, reps: &[RepetitionResult]) -> AggregateResult {
    let checkpoints = cfg.checkpoint_rounds();
    let series = cfg
        .algorithms
        .iter()
        .enumerate()
        .map(|(a, spec)| AlgorithmSeries {
            algorithm: spec.label(),
            points: checkpoints
                .iter()
                .enumerate()
                .map(|(c, &t)| {
                    let recs: Vec<&CheckpointRecord> = reps.iter().map(|r| &r.traces[a].checkpoints[c]).collect();
                    let (regret_mean, regret_stderr) = mean_stderr(&recs.iter().map(|r| r.regret).collect::<Vec<_>>());
                    let (pseudo_regret_mean, pseudo_regret_stderr) =
                        mean_stderr(&recs.iter().map(|r| r.pseudo_regret).collect::<Vec<_>>());
                    let abs_gap_mean = recs.iter().map(|r| r.abs_gap()).sum::<f64>() / recs.len() as f64;
                    CheckpointStats { t, regret_mean, regret_stderr, pseudo_regret_mean, pseudo_regret_stderr, abs_gap_mean }
                })
                .collect(),
        })
        .collect();
    AggregateResult {
        config: cfg.clone(),
        instance_seeds: reps.iter().filter_map(|r| r.instance_seed).collect(),
        series,
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<AggregateResult> {
    run_experiment_with_threads(cfg, None)
}

pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<AggregateResult> {
    let reps = run_repetitions(cfg, threads)?;
    Ok(aggregate(cfg, &reps))
}
