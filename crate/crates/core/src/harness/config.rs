use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::env::ArmDistribution;
use crate::error::{Error, Result};
use crate::ggi::GgiWeights;

fn default_delta() -> f64 {
    0.1
}

fn default_reps() -> usize {
    100
}

/// Experiment description; serialized field names are the config-file keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "K")]
    pub arms: usize,
    #[serde(rename = "D")]
    pub dim: usize,
    #[serde(rename = "T")]
    pub horizon: u64,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    pub weights_spec: WeightsSpec,
    pub instance_spec: InstanceSpec,
    pub algorithms: Vec<AlgorithmSpec>,
    /// Rounds at which traces are recorded; a geometric grid when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<u64>>,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightsSpec {
    Geometric,
    Gini,
    Explicit(Vec<f64>),
}

impl WeightsSpec {
    pub fn build(&self, dim: usize) -> Result<GgiWeights> {
        match self {
            Self::Geometric => GgiWeights::geometric(dim),
            Self::Gini => GgiWeights::gini(dim),
            Self::Explicit(w) => {
                if w.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: w.len() });
                }
                GgiWeights::new(w.clone())
            }
        }
    }
}

/// `geometric`, `gini`, or a comma-separated weight list.
impl FromStr for WeightsSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "geometric" => Ok(Self::Geometric),
            "gini" => Ok(Self::Gini),
            other => parse_list(other).map(Self::Explicit),
        }
    }
}

/// Parses `"0.1, 0.2,0.3"` into numbers.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidParameter(format!("cannot parse {v:?} as a number: {e}")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSpec {
    /// Fresh Uniform[0, 1] Bernoulli parameters every repetition, seeded from
    /// `seed` (or the master seed) and the repetition index.
    RandomBernoulli {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    /// The same arms in every repetition.
    Explicit(Vec<ArmDistribution>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmSpec {
    MoOgde,
    MoLp,
    /// Zero-based arm index.
    Fixed(usize),
    Uniform,
}

impl AlgorithmSpec {
    pub fn label(&self) -> String {
        match self {
            Self::MoOgde => "mo-ogde".into(),
            Self::MoLp => "mo-lp".into(),
            Self::Fixed(k) => format!("fixed-{k}"),
            Self::Uniform => "uniform".into(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s).map_err(|source| Error::Json {
            path: "<config>".into(),
            source,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let cfg: Self = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn weights(&self) -> Result<GgiWeights> {
        self.weights_spec.build(self.dim)
    }

    /// Explicit checkpoints or [`default_checkpoints`].
    pub fn checkpoint_rounds(&self) -> Vec<u64> {
        self.checkpoints
            .clone()
            .unwrap_or_else(|| default_checkpoints(self.horizon))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.arms < 2 {
            return bad(format!("K must be at least 2, got {}", self.arms));
        }
        if self.dim == 0 {
            return bad("D must be at least 1".into());
        }
        if self.horizon == 0 {
            return bad("T must be at least 1".into());
        }
        if self.reps == 0 {
            return bad("reps must be at least 1".into());
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        self.weights()
            .map_err(|e| Error::Config(format!("weights_spec: {e}")))?;
        if self.algorithms.is_empty() {
            return bad("algorithms must not be empty".into());
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if let AlgorithmSpec::Fixed(k) = a {
                if *k >= self.arms {
                    return bad(format!("algorithms[{i}]: fixed arm {k} out of range for K = {}", self.arms));
                }
            }
            if self.algorithms[..i].contains(a) {
                return bad(format!("algorithms[{i}]: {} listed twice", a.label()));
            }
        }
        if let InstanceSpec::Explicit(arms) = &self.instance_spec {
            if arms.len() != self.arms {
                return bad(format!(
                    "instance_spec lists {} arms but K = {}",
                    arms.len(),
                    self.arms
                ));
            }
            for (k, arm) in arms.iter().enumerate() {
                arm.validate()
                    .map_err(|e| Error::Config(format!("instance_spec arm {k}: {e}")))?;
                if arm.dim() != self.dim {
                    return bad(format!(
                        "instance_spec arm {k} has dimension {} but D = {}",
                        arm.dim(),
                        self.dim
                    ));
                }
            }
        }
        if let Some(cp) = &self.checkpoints {
            if cp.is_empty() {
                return bad("checkpoints must not be empty".into());
            }
            if cp.windows(2).any(|p| p[1] <= p[0]) {
                return bad("checkpoints must be strictly increasing".into());
            }
            if cp[0] == 0 || *cp.last().unwrap() > self.horizon {
                return bad(format!("checkpoints must lie in [1, T = {}]", self.horizon));
            }
        }
        Ok(())
    }
}

/// About 50 log-spaced rounds from 100 (or 1 when `T < 100`) to `T`, plus every power of
/// ten in that range.
pub fn default_checkpoints(horizon: u64) -> Vec<u64> {
    let start = if horizon >= 100 { 100 } else { 1 };
    let (lo, hi) = ((start as f64).ln(), (horizon as f64).ln());
    let mut grid: Vec<u64> = (0..50)
        .map(|i| (lo + (hi - lo) * i as f64 / 49.0).exp().round() as u64)
        .collect();
    let mut p = 1u64;
    while p <= horizon {
        if p >= start {
            grid.push(p);
        }
        p = p.saturating_mul(10);
    }
    grid.push(horizon);
    grid.retain(|t| (start..=horizon).contains(t));
    grid.sort_unstable();
    grid.dedup();
    grid
}
