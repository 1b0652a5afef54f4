//! Euclidean projection onto the probability simplex and its truncation
//! `Δ_K^β = {α : Σα = 1, α_k ≥ β/K}`.
//!
//! Both use the sort-and-threshold rule; the truncated case reduces to the
//! plain simplex through `Δ_K^β = (β/K)·1 + (1 − β)·Δ_K`.

use crate::error::{check_finite, Error, Result};
use crate::ggi::check_simplex;

/// Tolerance on `Σα = 1` accepted by [`MixedPolicy::new`].
pub const POLICY_SUM_TOL: f64 = 1e-9;

/// A probability vector over arms, optionally tagged with the per-arm floor it
/// was constructed to respect.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedPolicy {
    alpha: Vec<f64>,
    floor: f64,
}

impl MixedPolicy {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidParameter("policy over zero arms".into()));
        }
        check_simplex(&alpha, POLICY_SUM_TOL)?;
        if let Some(v) = alpha.iter().find(|v| **v < -1e-12) {
            return Err(Error::NotInSimplex(format!("negative component {v}")));
        }
        Ok(Self { alpha: alpha.into_iter().map(|v| v.max(0.0)).collect(), floor: 0.0 })
    }

    pub fn uniform(arms: usize) -> Result<Self> {
        if arms == 0 {
            return Err(Error::InvalidParameter("policy over zero arms".into()));
        }
        Ok(Self { alpha: vec![1.0 / arms as f64; arms], floor: 1.0 / arms as f64 })
    }

    pub fn one_hot(arm: usize, arms: usize) -> Result<Self> {
        if arm >= arms {
            return Err(Error::ArmOutOfRange { index: arm, arms });
        }
        let mut alpha = vec![0.0; arms];
        alpha[arm] = 1.0;
        Ok(Self { alpha, floor: 0.0 })
    }

    pub(crate) fn with_floor(alpha: Vec<f64>, floor: f64) -> Self {
        Self { alpha, floor }
    }

    pub fn arms(&self) -> usize {
        self.alpha.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.alpha
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.alpha
    }

    /// The guaranteed lower bound on every component (`β/K`), zero if untagged.
    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn min_prob(&self) -> f64 {
        self.alpha.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `argmin_{z ∈ Δ_K} ‖z − x‖₂`.
pub fn project_simplex(x: &[f64]) -> Result<MixedPolicy> {
    if x.is_empty() {
        return Err(Error::InvalidParameter("cannot project a zero-length vector".into()));
    }
    check_finite(x, "projection input")?;
    Ok(MixedPolicy::with_floor(simplex_threshold(x), 0.0))
}

fn simplex_threshold(x: &[f64]) -> Vec<f64> {
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut tau = 0.0;
    for (j, u) in sorted.iter().enumerate() {
        acc += u;
        let candidate = (acc - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            tau = candidate;
        } else {
            break;
        }
    }
    x.iter().map(|v| (v - tau).max(0.0)).collect()
}

/// `argmin_{z ∈ Δ_K^β} ‖z − x‖₂` for `β ∈ [0, 1]`.
pub fn project_truncated_simplex(x: &[f64], beta: f64) -> Result<MixedPolicy> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter(format!("truncation {beta} outside [0, 1]")));
    }
    if x.is_empty() {
        return Err(Error::InvalidParameter("cannot project a zero-length vector".into()));
    }
    check_finite(x, "projection input")?;
    let arms = x.len();
    let floor = beta / arms as f64;
    if beta == 1.0 {
        return Ok(MixedPolicy::with_floor(vec![floor; arms], floor));
    }
    if beta == 0.0 {
        return Ok(MixedPolicy::with_floor(simplex_threshold(x), 0.0));
    }
    let scale = 1.0 - beta;
    let reduced: Vec<f64> = x.iter().map(|v| (v - floor) / scale).collect();
    let alpha = simplex_threshold(&reduced)
        .into_iter()
        .map(|p| floor + scale * p)
        .collect();
    Ok(MixedPolicy::with_floor(alpha, floor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn feasible_point_is_fixed() {
        let x = [0.2, 0.3, 0.5];
        assert_close(project_simplex(&x).unwrap().as_slice(), &x, 1e-15);
        assert_close(project_truncated_simplex(&[0.5, 0.5], 0.2).unwrap().as_slice(), &[0.5, 0.5], 1e-15);
    }

    #[test]
    fn simple_cases() {
        assert_close(project_simplex(&[2.0, 0.0]).unwrap().as_slice(), &[1.0, 0.0], 1e-15);
        assert_close(project_simplex(&[0.6, 0.6]).unwrap().as_slice(), &[0.5, 0.5], 1e-15);
        assert_close(project_simplex(&[-3.0, -3.0, -3.0]).unwrap().as_slice(), &[1.0 / 3.0; 3], 1e-15);
    }

    #[test]
    fn truncated_cases() {
        let p = project_truncated_simplex(&[1.0, 0.0], 0.2).unwrap();
        assert_close(p.as_slice(), &[0.9, 0.1], 1e-15);
        assert!((p.floor() - 0.1).abs() < 1e-15);
        let q = project_truncated_simplex(&[5.0, -1.0, 0.3], 1.0).unwrap();
        assert_eq!(q.as_slice(), &[1.0 / 3.0; 3]);
        let x = [0.9, -0.4, 0.1, 2.0];
        assert_eq!(
            project_truncated_simplex(&x, 0.0).unwrap().as_slice(),
            project_simplex(&x).unwrap().as_slice()
        );
    }

    #[test]
    fn errors() {
        assert!(project_simplex(&[]).is_err());
        assert!(project_simplex(&[f64::NAN, 1.0]).is_err());
        assert!(project_truncated_simplex(&[1.0], 1.5).is_err());
        assert!(project_truncated_simplex(&[1.0], -0.1).is_err());
        assert!(project_truncated_simplex(&[], 0.5).is_err());
    }

    #[test]
    fn policy_constructors() {
        assert!(MixedPolicy::new(vec![0.5, 0.6]).is_err());
        assert!(MixedPolicy::new(vec![1.5, -0.5]).is_err());
        assert!(MixedPolicy::new(vec![]).is_err());
        assert_eq!(MixedPolicy::one_hot(0, 3).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
        assert!(MixedPolicy::one_hot(3, 3).is_err());
        assert_eq!(MixedPolicy::uniform(4).unwrap().min_prob(), 0.25);
    }
}
