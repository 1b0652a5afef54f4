//! Euclidean projection onto the probability simplex and its truncated
//! version with a per-arm probability floor.

use ggi_bandit::projection::{project_simplex, project_truncated_simplex};

fn main() -> ggi_bandit::Result<()> {
    let x = [0.8, 0.6, -0.3, 0.1];
    println!("x = {x:?}");
    println!("onto simplex        {:?}", project_simplex(&x)?.as_slice());
    for beta in [0.0, 0.2, 0.6, 1.0] {
        let p = project_truncated_simplex(&x, beta)?;
        println!(
            "beta = {beta:<4} floor {:.3}  {:?}",
            beta / x.len() as f64,
            p.as_slice()
        );
    }
    let p = project_truncated_simplex(&[1.0, 0.0], 0.2)?;
    println!("(1, 0) onto two-arm simplex with beta 0.2: {:?}", p.as_slice());
    Ok(())
}
