//! MO-OGDE against the MO-LP baseline and two reference policies on one
//! shared instance, using the harness run loop.

use ggi_bandit::env::{make_random_instance, stream_rng, true_means};
use ggi_bandit::harness::{make_learner, run_learner, AlgorithmSpec, RunSetup};
use ggi_bandit::programs::optimal_mixed_policy;
use ggi_bandit::GgiWeights;

fn main() -> ggi_bandit::Result<()> {
    let (k, d, horizon) = (5, 5, 20_000);
    let arms = make_random_instance(k, d, 11)?;
    let means = true_means(&arms)?;
    let w = GgiWeights::geometric(d)?;
    let best = optimal_mixed_policy(&w, &means)?;
    let checkpoints = [100, 1000, 5000, 20_000];
    let setup = RunSetup {
        arms: &arms,
        weights: &w,
        means: &means,
        ggi_star: best.ggi_star,
        horizon,
        checkpoints: &checkpoints,
    };

    println!("{:<10} {:>8} {:>14} {:>14}", "algorithm", "t", "pseudo-regret", "regret");
    let specs = [AlgorithmSpec::MoOgde, AlgorithmSpec::MoLp, AlgorithmSpec::Uniform, AlgorithmSpec::Fixed(0)];
    for (i, spec) in specs.into_iter().enumerate() {
        let mut learner = make_learner(spec, k, &w, 0.1)?;
        let trace = run_learner(learner.as_mut(), &setup, &mut stream_rng(11, i as u64 + 1))?;
        for c in &trace.checkpoints {
            println!("{:<10} {:>8} {:>14.6e} {:>14.6e}", trace.algorithm, c.t, c.pseudo_regret, c.regret);
        }
    }
    Ok(())
}
