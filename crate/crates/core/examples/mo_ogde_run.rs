//! A single MO-OGDE run on a random Bernoulli instance, driven round by
//! round through the `Learner` interface.

use ggi_bandit::env::{make_random_instance, stream_rng, true_means};
use ggi_bandit::ggi::ggi_value;
use ggi_bandit::policies::{sample_arm, step_size, Learner, MoOgde};
use ggi_bandit::programs::optimal_mixed_policy;
use ggi_bandit::{EmpiricalState, GgiWeights};

fn main() -> ggi_bandit::Result<()> {
    let (k, d, delta) = (4, 3, 0.1);
    let arms = make_random_instance(k, d, 7)?;
    let mu = true_means(&arms)?;
    let w = GgiWeights::gini(d)?;
    let best = optimal_mixed_policy(&w, &mu)?;
    println!("alpha* = {:.4?}, G* = {:.6}", best.alpha_star.as_slice(), best.ggi_star);

    let mut learner = MoOgde::new(k, w.clone(), delta)?;
    let mut stats = EmpiricalState::new(k, d);
    let mut rng = stream_rng(7, 1);
    for t in 1..=100_000u64 {
        let policy = learner.next_policy(t, &stats)?;
        let arm = sample_arm(&policy, &mut rng);
        stats.update(arm, &arms[arm].sample(&mut rng))?;
        learner.observe(t, &stats)?;
        if t.is_power_of_two() && t >= 1024 || t == 100_000 {
            let avg = learner.state().average_policy()?;
            let pseudo = ggi_value(&w, &mu.mix(avg.as_slice())?)? - best.ggi_star;
            let mean_cost: Vec<f64> = stats.cumulative_cost().iter().map(|c| c / t as f64).collect();
            let regret = ggi_value(&w, &mean_cost)? - best.ggi_star;
            println!(
                "t = {t:>6}  eta = {:.4}  pseudo-regret {pseudo:.3e}  regret {regret:+.3e}  pulls {:?}",
                step_size(k, delta, t)?.value(),
                stats.pull_counts()
            );
        }
    }
    println!("final average policy {:.4?}", learner.state().average_policy()?.as_slice());
    Ok(())
}
