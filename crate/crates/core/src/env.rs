//! Arm distributions, bandit instances and running empirical statistics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, check_finite, Error, Result};

/// Generator used for every random stream in the crate.
pub type SimRng = ChaCha8Rng;

/// Recorded in result metadata.
pub const GENERATOR_NAME: &str = "rand_chacha::ChaCha8Rng (rand_chacha 0.3, seed_from_u64 + set_stream)";

/// A seeded generator positioned on an independent stream.
pub fn stream_rng(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const PROB_SUM_TOL: f64 = 1e-12;

/// `D × K` matrix of expected costs; column `k` is the mean cost vector of arm `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmMeans {
    dim: usize,
    arms: usize,
    // column-major: data[k * dim + j] = μ_{j,k}
    data: Vec<f64>,
}

impl ArmMeans {
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let arms = columns.len();
        if arms == 0 {
            return Err(Error::InvalidParameter("at least one arm is required".into()));
        }
        let dim = columns[0].len();
        if dim == 0 {
            return Err(Error::InvalidParameter("cost dimension must be at least 1".into()));
        }
        let mut data = Vec::with_capacity(arms * dim);
        for col in columns {
            check_dim(dim, col.len())?;
            data.extend_from_slice(col);
        }
        Self::from_data(dim, arms, data)
    }

    /// `rows[j][k]` is objective `j` of arm `k` (the layout of means CSV files).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("cost dimension must be at least 1".into()));
        }
        let arms = rows[0].len();
        for row in rows {
            check_dim(arms, row.len())?;
        }
        let columns: Vec<Vec<f64>> = (0..arms)
            .map(|k| rows.iter().map(|r| r[k]).collect())
            .collect();
        Self::from_columns(&columns)
    }

    fn from_data(dim: usize, arms: usize, data: Vec<f64>) -> Result<Self> {
        check_finite(&data, "arm means")?;
        if let Some(v) = data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!("arm mean {v} outside [0, 1]")));
        }
        Ok(Self { dim, arms, data })
    }

    pub(crate) fn zeros(dim: usize, arms: usize) -> Self {
        Self { dim, arms, data: vec![0.0; dim * arms] }
    }

    /// Number of objectives `D`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of arms `K`.
    pub fn arms(&self) -> usize {
        self.arms
    }

    pub fn column(&self, k: usize) -> &[f64] {
        &self.data[k * self.dim..(k + 1) * self.dim]
    }

    fn column_mut(&mut self, k: usize) -> &mut [f64] {
        &mut self.data[k * self.dim..(k + 1) * self.dim]
    }

    pub fn get(&self, objective: usize, arm: usize) -> f64 {
        self.data[arm * self.dim + objective]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|j| (0..self.arms).map(|k| self.get(j, k)).collect())
            .collect()
    }

    /// The mixed mean cost `μα = Σ_k α_k μ_k`.
    pub fn mix(&self, alpha: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.arms, alpha.len())?;
        check_finite(alpha, "policy")?;
        Ok(self.mix_unchecked(alpha))
    }

    pub(crate) fn mix_unchecked(&self, alpha: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (col, a) in self.columns().zip(alpha) {
            for (o, m) in out.iter_mut().zip(col) {
                *o += a * m;
            }
        }
        out
    }

    /// Reorders arms so that new arm `i` is old arm `order[i]`.
    pub fn permute_arms(&self, order: &[usize]) -> Result<Self> {
        check_dim(self.arms, order.len())?;
        let columns: Vec<Vec<f64>> = order
            .iter()
            .map(|&k| {
                if k >= self.arms {
                    Err(Error::ArmOutOfRange { index: k, arms: self.arms })
                } else {
                    Ok(self.column(k).to_vec())
                }
            })
            .collect::<Result<_>>()?;
        Self::from_columns(&columns)
    }
}

/// One atom of a finite-support cost distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub cost: Vec<f64>,
    pub prob: f64,
}

/// Cost distribution of a single arm over `[0, 1]^D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArmDistribution {
    /// Independent Bernoulli components with success probabilities `p`.
    IndependentBernoulli { p: Vec<f64> },
    /// Arbitrary (possibly dependent) distribution on finitely many cost vectors.
    FiniteSupport { atoms: Vec<Atom> },
}

impl ArmDistribution {
    pub fn bernoulli(p: Vec<f64>) -> Result<Self> {
        let arm = Self::IndependentBernoulli { p };
        arm.validate()?;
        Ok(arm)
    }

    pub fn finite_support(atoms: Vec<Atom>) -> Result<Self> {
        let arm = Self::FiniteSupport { atoms };
        arm.validate()?;
        Ok(arm)
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::IndependentBernoulli { p } => p.len(),
            Self::FiniteSupport { atoms } => atoms.first().map_or(0, |a| a.cost.len()),
        }
    }

    /// Checks parameter ranges; needed after deserialization.
    pub fn validate(&self) -> Result<()> {
        let unit = |v: &f64| (0.0..=1.0).contains(v);
        match self {
            Self::IndependentBernoulli { p } => {
                if p.is_empty() {
                    return Err(Error::InvalidParameter("Bernoulli arm has no components".into()));
                }
                if !p.iter().all(unit) {
                    return Err(Error::InvalidParameter(
                        "Bernoulli parameters must lie in [0, 1]".into(),
                    ));
                }
            }
            Self::FiniteSupport { atoms } => {
                let dim = self.dim();
                if atoms.is_empty() || dim == 0 {
                    return Err(Error::InvalidParameter("finite-support arm has no atoms".into()));
                }
                for atom in atoms {
                    check_dim(dim, atom.cost.len())?;
                    if !atom.cost.iter().all(unit) || !unit(&atom.prob) {
                        return Err(Error::InvalidParameter(
                            "atom costs and probabilities must lie in [0, 1]".into(),
                        ));
                    }
                }
                let total: f64 = atoms.iter().map(|a| a.prob).sum();
                if (total - 1.0).abs() > PROB_SUM_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "atom probabilities sum to {total}, expected 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exact expected cost vector.
    pub fn mean(&self) -> Vec<f64> {
        match self {
            Self::IndependentBernoulli { p } => p.clone(),
            Self::FiniteSupport { atoms } => {
                let mut out = vec![0.0; self.dim()];
                for atom in atoms {
                    for (o, c) in out.iter_mut().zip(&atom.cost) {
                        *o += atom.prob * c;
                    }
                }
                out.iter_mut().for_each(|v| *v = v.clamp(0.0, 1.0));
                out
            }
        }
    }

    /// Draws one cost vector.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.sample_into(rng, &mut out);
        out
    }

    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match self {
            Self::IndependentBernoulli { p } => {
                for (o, pd) in out.iter_mut().zip(p) {
                    *o = if rng.gen::<f64>() < *pd { 1.0 } else { 0.0 };
                }
            }
            Self::FiniteSupport { atoms } => {
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                let mut chosen = atoms.len() - 1;
                for (i, atom) in atoms.iter().enumerate() {
                    acc += atom.prob;
                    if u < acc {
                        chosen = i;
                        break;
                    }
                }
                out.copy_from_slice(&atoms[chosen].cost);
            }
        }
    }
}

/// `K` independent-Bernoulli arms with i.i.d. `Uniform[0, 1)` parameters.
pub fn make_random_instance(arms: usize, dim: usize, seed: u64) -> Result<Vec<ArmDistribution>> {
    if arms < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 arms, got {arms}")));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("cost dimension must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..arms)
        .map(|_| ArmDistribution::IndependentBernoulli {
            p: (0..dim).map(|_| rng.gen::<f64>()).collect(),
        })
        .collect())
}

/// Analytic mean matrix of a list of arms.
pub fn true_means(arms: &[ArmDistribution]) -> Result<ArmMeans> {
    for arm in arms {
        arm.validate()?;
    }
    ArmMeans::from_columns(&arms.iter().map(ArmDistribution::mean).collect::<Vec<_>>())
}

/// Running per-arm sample means, pull counts and cumulative cost.
#[derive(Debug, Clone)]
pub struct EmpiricalState {
    mu_hat: ArmMeans,
    pulls: Vec<u64>,
    cumulative: Vec<f64>,
    t: u64,
}

impl EmpiricalState {
    pub fn new(arms: usize, dim: usize) -> Self {
        Self {
            mu_hat: ArmMeans::zeros(dim, arms),
            pulls: vec![0; arms],
            cumulative: vec![0.0; dim],
            t: 0,
        }
    }

    /// Folds the cost `x` observed on arm `k` into the statistics.
    pub fn update(&mut self, k: usize, x: &[f64]) -> Result<()> {
        let arms = self.pulls.len();
        if k >= arms {
            return Err(Error::ArmOutOfRange { index: k, arms });
        }
        check_dim(self.cumulative.len(), x.len())?;
        if !x.iter().all(|v| (0.0..=1.0).contains(v)) {
            return Err(Error::InvalidParameter("observed cost outside [0, 1]".into()));
        }
        self.pulls[k] += 1;
        let n = self.pulls[k] as f64;
        for (m, v) in self.mu_hat.column_mut(k).iter_mut().zip(x) {
            *m = (*m + (v - *m) / n).clamp(0.0, 1.0);
        }
        for (c, v) in self.cumulative.iter_mut().zip(x) {
            *c += v;
        }
        self.t += 1;
        Ok(())
    }

    pub fn mu_hat(&self) -> &ArmMeans {
        &self.mu_hat
    }

    pub fn pull_counts(&self) -> &[u64] {
        &self.pulls
    }

    pub fn cumulative_cost(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn rounds(&self) -> u64 {
        self.t
    }
}
