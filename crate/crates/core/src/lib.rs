//! Multi-objective stochastic bandits under the Generalized Gini Index.
//!
//! Each arm emits a random cost vector in `[0, 1]^D`. A learner plays mixed
//! policies over the `K` arms and wants the average observed cost vector to
//! have a small GGI value, an ordered weighted sum that rewards both low and
//! balanced costs.
//!
//! The crate is organised bottom-up:
//!
//! - [`ggi`]: GGI evaluation (sort form and Lorenz form), weight constructors
//!   and the subgradient of `α ↦ G_w(μα)`.
//! - [`lp`]: a dense two-phase simplex solver.
//! - [`programs`]: the linear programs for the GGI value, the optimal mixed
//!   policy and the per-round baseline policy.
//! - [`projection`]: Euclidean projection onto the (truncated) simplex.
//! - [`env`]: arm distributions, instance generation and running estimates.
//! - [`policies`]: MO-OGDE, the MO-LP baseline and two reference policies.
//! - [`harness`]: repeated experiments, regret bookkeeping and CSV/JSON output.
//!
//! The `examples/` directory has one runnable program per capability, and the
//! `ggi-bandit` binary wraps the harness for config-driven runs.

pub mod env;
pub mod error;
pub mod ggi;
pub mod harness;
pub mod lp;
pub mod policies;
pub mod programs;
pub mod projection;

pub use env::{ArmDistribution, ArmMeans, EmpiricalState};
pub use error::{Error, Result};
pub use ggi::{GgiWeights, LorenzVector};
pub use lp::{LpProblem, LpSolution, LpStatus, Relation};
pub use policies::{Learner, StepSize};
pub use programs::OptimalPolicyResult;
pub use projection::MixedPolicy;
