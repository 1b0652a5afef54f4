use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};

use ggi_bandit::ggi::ggi_value;
use ggi_bandit::harness::{parse_list, read_means_csv, run_experiment_with_threads, write_results, ExperimentConfig, WeightsSpec};
use ggi_bandit::programs::optimal_mixed_policy;

#[derive(Parser)]
#[command(version, about = "Multi-objective bandit simulator under the Generalized Gini Index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a config-driven experiment and write results.csv + metadata.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides master_seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides reps.
        #[arg(long)]
        reps: Option<usize>,
        /// Worker threads for repetitions.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the GGI of a cost vector.
    Ggi {
        /// `geometric`, `gini` or a comma-separated list.
        #[arg(long)]
        weights: WeightsSpec,
        /// Comma-separated cost vector.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Print the optimal mixed policy and its GGI for a D×K means CSV.
    SolveOptimal {
        #[arg(long)]
        means: PathBuf,
        #[arg(long)]
        weights: WeightsSpec,
    },
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Simulate { config, out, seed, reps, threads } => {
            let mut cfg = ExperimentConfig::from_json_file(&config)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(r) = reps {
                cfg.reps = r;
            }
            cfg.validate()?;
            let res = run_experiment_with_threads(&cfg, threads)?;
            let path = write_results(&res, &out)?;
            for series in &res.series {
                if let Some(last) = series.points.last() {
                    println!(
                        "{:<10} T={:<8} regret={:.6} pseudo_regret={:.6} (±{:.6})",
                        series.algorithm, last.t, last.regret_mean, last.pseudo_regret_mean, last.pseudo_regret_stderr
                    );
                }
            }
            println!("wrote {}", path.display());
        }
        Command::Ggi { weights, vector } => {
            let x = parse_list(&vector)?;
            let w = weights.build(x.len())?;
            println!("{}", ggi_value(&w, &x)?);
        }
        Command::SolveOptimal { means, weights } => {
            let mu = read_means_csv(&means).with_context(|| format!("reading {}", means.display()))?;
            let w = weights.build(mu.dim())?;
            let res = optimal_mixed_policy(&w, &mu)?;
            let alpha: Vec<String> = res.alpha_star.as_slice().iter().map(|a| a.to_string()).collect();
            println!("alpha_star = [{}]", alpha.join(", "));
            println!("ggi_star = {}", res.ggi_star);
        }
    }
    Ok(())
}
