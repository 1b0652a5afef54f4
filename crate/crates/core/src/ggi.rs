//! Generalized Gini Index.
//!
//! For a cost vector `x` and non-increasing weights `w`,
//! `G_w(x) = Σ_d w_d x_σ(d)` where `σ` sorts `x` in decreasing order, so the
//! largest cost receives the largest weight. Lower is better.
//!
//! The Lorenz form used here accumulates the *largest* components:
//! `L_d(x)` is the sum of the `d` largest entries of `x`, and
//! `G_w(x) = Σ_d (w_d − w_{d+1}) L_d(x)`. With that convention the sort form,
//! the Lorenz form and the linear program in [`crate::programs`] all agree.

use crate::env::ArmMeans;
use crate::error::{check_dim, check_finite, Error, Result};

/// Tolerance on `Σα = 1` and `α ≥ 0` accepted by [`ggi_policy_gradient`].
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Non-increasing weight vector in `[0, 1]^D` with its difference vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GgiWeights {
    w: Vec<f64>,
    w_diff: Vec<f64>,
}

impl GgiWeights {
    /// Accepts any non-increasing vector with entries in `[0, 1]`.
    pub fn new(w: Vec<f64>) -> Result<Self> {
        Self::build(w, false)
    }

    /// Like [`GgiWeights::new`] but also rejects ties between consecutive weights.
    pub fn new_strict(w: Vec<f64>) -> Result<Self> {
        Self::build(w, true)
    }

    fn build(w: Vec<f64>, strict: bool) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidWeights("weight vector is empty".into()));
        }
        check_finite(&w, "weights")?;
        if let Some(v) = w.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidWeights(format!("weight {v} outside [0, 1]")));
        }
        for (d, pair) in w.windows(2).enumerate() {
            if pair[1] > pair[0] || (strict && pair[1] == pair[0]) {
                return Err(Error::InvalidWeights(format!(
                    "w[{}] = {} and w[{}] = {} are not {} decreasing",
                    d,
                    pair[0],
                    d + 1,
                    pair[1],
                    if strict { "strictly" } else { "weakly" }
                )));
            }
        }
        let w_diff = (0..w.len())
            .map(|d| w[d] - w.get(d + 1).copied().unwrap_or(0.0))
            .collect();
        Ok(Self { w, w_diff })
    }

    /// Weights that recover the classical Gini index: `w_d = (2(D−d)+1)/D²`.
    pub fn gini(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidWeights("dimension must be at least 1".into()));
        }
        let sq = (dim * dim) as f64;
        Self::new((1..=dim).map(|d| (2 * (dim - d) + 1) as f64 / sq).collect())
    }

    /// Geometric weights `w_d = 2^{−(d−1)}`.
    pub fn geometric(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidWeights("dimension must be at least 1".into()));
        }
        Self::new((0..dim).map(|d| 0.5f64.powi(d as i32)).collect())
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// `w′_d = w_d − w_{d+1}` with `w_{D+1} = 0`.
    pub fn diffs(&self) -> &[f64] {
        &self.w_diff
    }
}

/// Indices of `x` sorted by value descending, ties broken by ascending index.
pub fn decreasing_order(x: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    // sort_by is stable, so equal values keep ascending index order
    idx.sort_by(|&a, &b| x[b].total_cmp(&x[a]));
    idx
}

fn check_cost(w: &GgiWeights, x: &[f64]) -> Result<()> {
    check_dim(w.dim(), x.len())?;
    check_finite(x, "cost vector")
}

/// Sort-form GGI value.
pub fn ggi_value(w: &GgiWeights, x: &[f64]) -> Result<f64> {
    check_cost(w, x)?;
    Ok(ggi_unchecked(w, x))
}

pub(crate) fn ggi_unchecked(w: &GgiWeights, x: &[f64]) -> f64 {
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    w.w.iter().zip(&sorted).map(|(wd, xd)| wd * xd).sum()
}

/// Cumulative sums of the decreasingly sorted components of a cost vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LorenzVector(Vec<f64>);

impl LorenzVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// `L_d` = sum of the `d` largest components of `x`.
pub fn lorenz_vector(x: &[f64]) -> Result<LorenzVector> {
    if x.is_empty() {
        return Err(Error::InvalidParameter("cost vector is empty".into()));
    }
    check_finite(x, "cost vector")?;
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    Ok(LorenzVector(
        sorted
            .into_iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect(),
    ))
}

/// Lorenz-form GGI value, `Σ_d w′_d L_d(x)`.
pub fn ggi_via_lorenz(w: &GgiWeights, x: &[f64]) -> Result<f64> {
    check_cost(w, x)?;
    let lorenz = lorenz_vector(x)?;
    Ok(w.diffs().iter().zip(lorenz.as_slice()).map(|(a, b)| a * b).sum())
}

pub(crate) fn check_simplex(alpha: &[f64], tol: f64) -> Result<()> {
    check_finite(alpha, "policy")?;
    let sum: f64 = alpha.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::NotInSimplex(format!("components sum to {sum}")));
    }
    if let Some(v) = alpha.iter().find(|v| **v < -tol) {
        return Err(Error::NotInSimplex(format!("negative component {v}")));
    }
    Ok(())
}

/// `f(α) = G_w(μα)`.
pub fn policy_objective(w: &GgiWeights, mu: &ArmMeans, alpha: &[f64]) -> Result<f64> {
    check_dim(w.dim(), mu.dim())?;
    let mixed = mu.mix(alpha)?;
    Ok(ggi_unchecked(w, &mixed))
}

/// Subgradient of `f(α) = G_w(μα)` over the arms.
///
/// Component `k` is `Σ_d w_d μ_{π(d), k}` where `π` sorts `μα` decreasingly.
/// Where `μα` has ties any tie-consistent `π` gives a valid subgradient; the
/// stable order of [`decreasing_order`] is used.
pub fn ggi_policy_gradient(w: &GgiWeights, mu: &ArmMeans, alpha: &[f64]) -> Result<Vec<f64>> {
    check_dim(w.dim(), mu.dim())?;
    check_dim(mu.arms(), alpha.len())?;
    check_simplex(alpha, SIMPLEX_TOL)?;
    Ok(gradient_unchecked(w, mu, alpha))
}

pub(crate) fn gradient_unchecked(w: &GgiWeights, mu: &ArmMeans, alpha: &[f64]) -> Vec<f64> {
    let mixed = mu.mix_unchecked(alpha);
    let order = decreasing_order(&mixed);
    (0..mu.arms())
        .map(|k| {
            let col = mu.column(k);
            order
                .iter()
                .zip(w.weights())
                .map(|(&j, wd)| wd * col[j])
                .sum()
        })
        .collect()
}
