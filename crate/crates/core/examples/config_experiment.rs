//! Loads an experiment from a JSON config, overrides a few fields and prints
//! the aggregated table without writing files.
//!
//! `cargo run --release --example config_experiment -- crates/core/examples/configs/battery_like.json`

use std::path::PathBuf;

use ggi_bandit::harness::{run_experiment, ExperimentConfig};

fn main() -> ggi_bandit::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/battery_like.json")));
    let mut cfg = ExperimentConfig::from_json_file(&path)?;
    cfg.reps = cfg.reps.min(8);
    println!("{} arms, {} objectives, T = {}, {} reps", cfg.arms, cfg.dim, cfg.horizon, cfg.reps);

    let res = run_experiment(&cfg)?;
    println!("{:<10} {:>7} {:>14} {:>12}", "algorithm", "t", "pseudo-regret", "stderr");
    for s in &res.series {
        for p in s.points.iter().step_by(10).chain(s.points.last()) {
            println!("{:<10} {:>7} {:>14.6e} {:>12.3e}", s.algorithm, p.t, p.pseudo_regret_mean, p.pseudo_regret_stderr);
        }
    }
    Ok(())
}
