//! Evaluating the Generalized Gini Index three ways: sort form, Lorenz form
//! and the linear program, plus the Pigou-Dalton transfer property.

use ggi_bandit::ggi::{ggi_value, ggi_via_lorenz, lorenz_vector};
use ggi_bandit::programs::ggi_lp_value;
use ggi_bandit::GgiWeights;

fn main() -> ggi_bandit::Result<()> {
    let w = GgiWeights::gini(4)?;
    println!("gini weights      {:?}", w.weights());

    let x = [0.9, 0.1, 0.4, 0.6];
    println!("cost vector       {x:?}");
    println!("lorenz vector     {:?}", lorenz_vector(&x)?.as_slice());
    println!("sort form         {:.12}", ggi_value(&w, &x)?);
    println!("lorenz form       {:.12}", ggi_via_lorenz(&w, &x)?);
    println!("linear program    {:.12}", ggi_lp_value(&w, &x)?);

    // Moving 0.2 of cost from the worst-off objective to the best-off one
    // makes the vector more equal, so the index must not increase.
    let fairer = [0.7, 0.3, 0.4, 0.6];
    println!("after transfer    {:.12}", ggi_value(&w, &fairer)?);

    let geometric = GgiWeights::geometric(4)?;
    println!("geometric weights {:?} -> {:.6}", geometric.weights(), ggi_value(&geometric, &x)?);
    Ok(())
}
