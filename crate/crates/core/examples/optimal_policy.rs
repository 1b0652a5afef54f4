//! Optimal mixed policy for known arm means. A mixture of arms can be
//! strictly fairer than any single arm.

use ggi_bandit::ggi::ggi_value;
use ggi_bandit::programs::{molp_step_policy, optimal_mixed_policy};
use ggi_bandit::{ArmMeans, GgiWeights};

fn main() -> ggi_bandit::Result<()> {
    // Three arms, three objectives; each arm is cheap on a different objective.
    let mu = ArmMeans::from_columns(&[
        vec![0.1, 0.8, 0.7],
        vec![0.7, 0.2, 0.8],
        vec![0.8, 0.7, 0.15],
    ])?;
    let w = GgiWeights::geometric(3)?;

    for (k, col) in mu.columns().enumerate() {
        println!("pure arm {k}: G = {:.6}", ggi_value(&w, col)?);
    }
    let best = optimal_mixed_policy(&w, &mu)?;
    println!("alpha* = {:?}", best.alpha_star.as_slice());
    println!("G(mu alpha*) = {:.6} (LP value {:.6})", best.ggi_star, best.lp_value);
    println!("mixed cost  = {:?}", mu.mix(best.alpha_star.as_slice())?);

    // Same program restricted to policies giving each arm at least eta/K.
    for eta in [0.1, 0.5, 1.0] {
        let p = molp_step_policy(&w, &mu, eta)?;
        println!("eta = {eta}: {:?}", p.as_slice());
    }
    Ok(())
}
