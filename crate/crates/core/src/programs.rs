//! Linear programs over GGI.
//!
//! All three programs share one encoding of the Lorenz form: for every
//! `d ∈ 1..=D` a free variable `r_d` and non-negative `b_{j,d}` with
//! `r_d + b_{j,d} ≥ y_j`, minimizing `Σ_d w′_d (d·r_d + Σ_j b_{j,d})`.
//! At the optimum the inner expression equals the sum of the `d` largest
//! entries of `y`. When `y = μα` the policy `α` becomes a decision variable.

use crate::env::ArmMeans;
use crate::error::{check_dim, check_finite, Error, Result};
use crate::ggi::{ggi_unchecked, GgiWeights};
use crate::lp::{LpProblem, LpStatus, Relation};
use crate::projection::MixedPolicy;

/// Optimal mixed policy for known means.
#[derive(Debug, Clone)]
pub struct OptimalPolicyResult {
    pub alpha_star: MixedPolicy,
    /// `G_w(μ α*)` evaluated in sort form.
    pub ggi_star: f64,
    /// Objective value reported by the solver.
    pub lp_value: f64,
    pub lp_status: LpStatus,
}

struct LorenzLayout {
    arms: usize,
    dim: usize,
}

impl LorenzLayout {
    fn r(&self, d: usize) -> usize {
        self.arms + d
    }

    fn b(&self, j: usize, d: usize) -> usize {
        self.arms + self.dim + j * self.dim + d
    }

    fn num_vars(&self) -> usize {
        self.arms + self.dim + self.dim * self.dim
    }

    /// Objective and rows `r_d + b_{j,d} − Σ_k μ_{j,k} α_k ≥ x_j`.
    fn build(&self, w: &GgiWeights, mu: Option<&ArmMeans>, x: &[f64]) -> Result<LpProblem> {
        let mut objective = vec![0.0; self.num_vars()];
        for (d, wd) in w.diffs().iter().enumerate() {
            objective[self.r(d)] = wd * (d + 1) as f64;
            for j in 0..self.dim {
                objective[self.b(j, d)] = *wd;
            }
        }
        let mut lp = LpProblem::new(objective)?;
        for d in 0..self.dim {
            lp.set_bounds(self.r(d), f64::NEG_INFINITY, f64::INFINITY)?;
        }
        for j in 0..self.dim {
            for d in 0..self.dim {
                let mut row = vec![0.0; self.num_vars()];
                row[self.r(d)] = 1.0;
                row[self.b(j, d)] = 1.0;
                if let Some(mu) = mu {
                    for (k, r) in row[..self.arms].iter_mut().enumerate() {
                        *r = -mu.get(j, k);
                    }
                }
                lp.add_constraint(row, Relation::Ge, x[j])?;
            }
        }
        Ok(lp)
    }
}

/// GGI of `x` as the optimal value of its linear program.
pub fn ggi_lp_value(w: &GgiWeights, x: &[f64]) -> Result<f64> {
    check_dim(w.dim(), x.len())?;
    check_finite(x, "cost vector")?;
    let layout = LorenzLayout { arms: 0, dim: x.len() };
    let lp = layout.build(w, None, x)?;
    let (_, value) = lp.solve()?.into_optimal()?;
    Ok(value)
}

fn policy_program(w: &GgiWeights, mu: &ArmMeans, floor: f64) -> Result<(MixedPolicy, f64, LpStatus)> {
    check_dim(w.dim(), mu.dim())?;
    let layout = LorenzLayout { arms: mu.arms(), dim: mu.dim() };
    let mut lp = layout.build(w, Some(mu), &vec![0.0; mu.dim()])?;
    for k in 0..mu.arms() {
        lp.set_bounds(k, floor, f64::INFINITY)?;
    }
    let mut simplex_row = vec![0.0; layout.num_vars()];
    simplex_row[..mu.arms()].iter_mut().for_each(|v| *v = 1.0);
    lp.add_constraint(simplex_row, Relation::Eq, 1.0)?;
    let solution = lp.solve()?;
    let status = solution.status();
    let (z, value) = solution.into_optimal()?;
    let alpha = clean_policy(&z[..mu.arms()], floor);
    Ok((alpha, value, status))
}

/// Restores exact `Σα = 1` and `α_k ≥ floor` after solver round-off.
fn clean_policy(raw: &[f64], floor: f64) -> MixedPolicy {
    let arms = raw.len();
    let mut alpha: Vec<f64> = raw.iter().map(|v| v.max(floor)).collect();
    let excess: f64 = alpha.iter().sum::<f64>() - 1.0;
    let room: f64 = alpha.iter().map(|v| v - floor).sum();
    if room <= 0.0 {
        return MixedPolicy::with_floor(vec![1.0 / arms as f64; arms], floor);
    }
    for v in alpha.iter_mut() {
        *v -= excess * (*v - floor) / room;
        *v = v.max(floor);
    }
    MixedPolicy::with_floor(alpha, floor)
}

/// Minimizer of `G_w(μα)` over the whole simplex.
pub fn optimal_mixed_policy(w: &GgiWeights, mu: &ArmMeans) -> Result<OptimalPolicyResult> {
    let (alpha_star, lp_value, lp_status) = policy_program(w, mu, 0.0)?;
    let ggi_star = ggi_unchecked(w, &mu.mix_unchecked(alpha_star.as_slice()));
    Ok(OptimalPolicyResult { alpha_star, ggi_star, lp_value, lp_status })
}

/// Minimizer of `G_w(μ̂α)` over the truncated simplex `Δ_K^η`.
pub fn molp_step_policy(w: &GgiWeights, mu_hat: &ArmMeans, eta: f64) -> Result<MixedPolicy> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!("truncation {eta} outside [0, 1]")));
    }
    let (alpha, _, _) = policy_program(w, mu_hat, eta / mu_hat.arms() as f64)?;
    Ok(alpha)
}
