//! Learners sharing one round interface.
//!
//! Each round `t` (1-based) the harness asks a [`Learner`] for a policy,
//! samples an arm from it, draws that arm's cost, folds it into the
//! [`EmpiricalState`] and then calls [`Learner::observe`]. So `next_policy`
//! sees statistics of rounds `1..t` exclusive, and `observe` sees them
//! including round `t`.

use rand::Rng;

use crate::env::{ArmMeans, EmpiricalState};
use crate::error::{check_dim, Error, Result};
use crate::ggi::{gradient_unchecked, GgiWeights};
use crate::programs::molp_step_policy;
use crate::projection::{project_truncated_simplex, MixedPolicy};

/// Exploration rate `η_t`, always in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct StepSize(f64);

impl StepSize {
    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("confidence {delta} outside (0, 1)")))
    }
}

fn check_arms(arms: usize) -> Result<()> {
    if arms < 2 {
        Err(Error::InvalidParameter(format!("need at least 2 arms, got {arms}")))
    } else {
        Ok(())
    }
}

/// `η_t = min(1, √2/(1 − 1/√K) · √(ln(2/δ)/t))`.
pub fn step_size(arms: usize, delta: f64, t: u64) -> Result<StepSize> {
    check_arms(arms)?;
    check_delta(delta)?;
    if t == 0 {
        return Err(Error::InvalidParameter("rounds are counted from 1".into()));
    }
    Ok(StepSize(raw_step_size(arms, delta, t).min(1.0)))
}

fn raw_step_size(arms: usize, delta: f64, t: u64) -> f64 {
    let k = arms as f64;
    std::f64::consts::SQRT_2 / (1.0 - 1.0 / k.sqrt()) * ((2.0 / delta).ln() / t as f64).sqrt()
}

/// Draws an arm index with probability `α_k` by inverse CDF over ascending indices.
pub fn sample_arm<R: Rng + ?Sized>(policy: &MixedPolicy, rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let alpha = policy.as_slice();
    let mut acc = 0.0;
    for (k, a) in alpha.iter().enumerate() {
        acc += a;
        if u < acc {
            return k;
        }
    }
    // u landed in the round-off gap above Σα
    alpha.iter().rposition(|a| *a > 0.0).unwrap_or(alpha.len() - 1)
}

/// One-hot policy on `arm`.
pub fn fixed_arm_policy(arm: usize, arms: usize) -> Result<MixedPolicy> {
    MixedPolicy::one_hot(arm, arms)
}

/// State of the projected online gradient learner.
#[derive(Debug, Clone)]
pub struct OgdeState {
    alpha: MixedPolicy,
    alpha_sum: Vec<f64>,
    delta: f64,
    t: u64,
    arms: usize,
    dim: usize,
}

impl OgdeState {
    /// Primed so the first `K` decisions pull arms `0..K` in order, followed
    /// by the uniform policy.
    pub fn new(arms: usize, dim: usize, delta: f64) -> Result<Self> {
        check_arms(arms)?;
        check_delta(delta)?;
        if dim == 0 {
            return Err(Error::InvalidParameter("cost dimension must be at least 1".into()));
        }
        Ok(Self {
            alpha: MixedPolicy::uniform(arms)?,
            alpha_sum: vec![0.0; arms],
            delta,
            t: 0,
            arms,
            dim,
        })
    }

    /// Policy for round `rounds() + 1`.
    pub fn next_decision(&self) -> MixedPolicy {
        let next = self.t as usize;
        if next < self.arms {
            MixedPolicy::one_hot(next, self.arms).expect("index below arm count")
        } else {
            self.alpha.clone()
        }
    }

    /// Records that `policy` was played, advancing the round counter.
    pub fn record_play(&mut self, policy: &MixedPolicy) {
        self.t += 1;
        for (s, a) in self.alpha_sum.iter_mut().zip(policy.as_slice()) {
            *s += a;
        }
    }

    /// Gradient step after the round-`t` sample has been observed.
    /// A no-op during the `K` initialization rounds.
    pub fn step(&mut self, w: &GgiWeights, mu_hat: &ArmMeans) -> Result<&MixedPolicy> {
        check_dim(self.dim, mu_hat.dim())?;
        check_dim(self.arms, mu_hat.arms())?;
        if self.t > self.arms as u64 {
            let eta = step_size(self.arms, self.delta, self.t)?.value();
            self.alpha = ogde_update(&self.alpha, w, mu_hat, eta)?;
        }
        Ok(&self.alpha)
    }

    /// Current iterate `α^{(t+1)}`.
    pub fn alpha(&self) -> &MixedPolicy {
        &self.alpha
    }

    pub fn alpha_sum(&self) -> &[f64] {
        &self.alpha_sum
    }

    /// `(1/t) Σ_τ α^{(τ)}`, the learner's output policy.
    pub fn average_policy(&self) -> Result<MixedPolicy> {
        if self.t == 0 {
            return MixedPolicy::uniform(self.arms);
        }
        MixedPolicy::new(self.alpha_sum.iter().map(|s| s / self.t as f64).collect())
    }

    pub fn rounds(&self) -> u64 {
        self.t
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// `Π_{Δ_K^η}(α − η·∇f(α))` with `f(α) = G_w(μ̂α)`.
pub fn ogde_update(
    alpha: &MixedPolicy,
    w: &GgiWeights,
    mu_hat: &ArmMeans,
    eta: f64,
) -> Result<MixedPolicy> {
    check_dim(w.dim(), mu_hat.dim())?;
    check_dim(mu_hat.arms(), alpha.arms())?;
    let g = gradient_unchecked(w, mu_hat, alpha.as_slice());
    let moved: Vec<f64> = alpha.as_slice().iter().zip(&g).map(|(a, gk)| a - eta * gk).collect();
    project_truncated_simplex(&moved, eta)
}

/// The MO-LP policy for round `t`: the LP optimum over `Δ_K^{η_t}` for `μ̂`.
pub fn molp_policy_step(
    t: u64,
    arms: usize,
    delta: f64,
    w: &GgiWeights,
    mu_hat: &ArmMeans,
) -> Result<MixedPolicy> {
    check_dim(arms, mu_hat.arms())?;
    let eta = step_size(arms, delta, t)?.value();
    molp_step_policy(w, mu_hat, eta)
}

/// A policy-producing learner driven round by round.
pub trait Learner {
    /// Stable name used in result files.
    fn label(&self) -> String;

    /// Policy for round `t`; `stats` covers rounds before `t`.
    fn next_policy(&mut self, t: u64, stats: &EmpiricalState) -> Result<MixedPolicy>;

    /// Called after the round-`t` sample is folded into `stats`.
    fn observe(&mut self, _t: u64, _stats: &EmpiricalState) -> Result<()> {
        Ok(())
    }

    /// Lower bound the learner promises on every arm's probability in round `t`.
    fn exploration_floor(&self, _t: u64) -> Option<f64> {
        None
    }
}

/// Online gradient descent with a shrinking forced-exploration floor.
#[derive(Debug, Clone)]
pub struct MoOgde {
    state: OgdeState,
    weights: GgiWeights,
}

impl MoOgde {
    pub fn new(arms: usize, weights: GgiWeights, delta: f64) -> Result<Self> {
        Ok(Self { state: OgdeState::new(arms, weights.dim(), delta)?, weights })
    }

    pub fn state(&self) -> &OgdeState {
        &self.state
    }
}

impl Learner for MoOgde {
    fn label(&self) -> String {
        "mo-ogde".into()
    }

    fn next_policy(&mut self, _t: u64, _stats: &EmpiricalState) -> Result<MixedPolicy> {
        let policy = self.state.next_decision();
        self.state.record_play(&policy);
        Ok(policy)
    }

    fn observe(&mut self, _t: u64, stats: &EmpiricalState) -> Result<()> {
        self.state.step(&self.weights, stats.mu_hat()).map(|_| ())
    }

    fn exploration_floor(&self, t: u64) -> Option<f64> {
        let arms = self.state.arms;
        (t > arms as u64).then(|| {
            step_size(arms, self.state.delta, t).map_or(0.0, StepSize::value) / arms as f64
        })
    }
}

/// Re-solves the truncated policy LP on the current estimates every round.
#[derive(Debug, Clone)]
pub struct MoLp {
    arms: usize,
    delta: f64,
    weights: GgiWeights,
}

impl MoLp {
    pub fn new(arms: usize, weights: GgiWeights, delta: f64) -> Result<Self> {
        check_arms(arms)?;
        check_delta(delta)?;
        Ok(Self { arms, delta, weights })
    }
}

impl Learner for MoLp {
    fn label(&self) -> String {
        "mo-lp".into()
    }

    fn next_policy(&mut self, t: u64, stats: &EmpiricalState) -> Result<MixedPolicy> {
        if t <= self.arms as u64 {
            return MixedPolicy::one_hot(t as usize - 1, self.arms);
        }
        molp_policy_step(t, self.arms, self.delta, &self.weights, stats.mu_hat())
    }

    fn exploration_floor(&self, t: u64) -> Option<f64> {
        (t > self.arms as u64).then(|| {
            step_size(self.arms, self.delta, t).map_or(0.0, StepSize::value) / self.arms as f64
        })
    }
}

/// Always plays the same arm.
#[derive(Debug, Clone)]
pub struct FixedArm {
    policy: MixedPolicy,
    arm: usize,
}

impl FixedArm {
    pub fn new(arm: usize, arms: usize) -> Result<Self> {
        Ok(Self { policy: fixed_arm_policy(arm, arms)?, arm })
    }
}

impl Learner for FixedArm {
    fn label(&self) -> String {
        format!("fixed-{}", self.arm)
    }

    fn next_policy(&mut self, _t: u64, _stats: &EmpiricalState) -> Result<MixedPolicy> {
        Ok(self.policy.clone())
    }
}

/// Plays the uniform policy every round.
#[derive(Debug, Clone)]
pub struct UniformRandom {
    policy: MixedPolicy,
}

impl UniformRandom {
    pub fn new(arms: usize) -> Result<Self> {
        Ok(Self { policy: MixedPolicy::uniform(arms)? })
    }
}

impl Learner for UniformRandom {
    fn label(&self) -> String {
        "uniform".into()
    }

    fn next_policy(&mut self, _t: u64, _stats: &EmpiricalState) -> Result<MixedPolicy> {
        Ok(self.policy.clone())
    }

    fn exploration_floor(&self, _t: u64) -> Option<f64> {
        Some(self.policy.floor())
    }
}
