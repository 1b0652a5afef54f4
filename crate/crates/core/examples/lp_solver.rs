//! The dense two-phase simplex solver on a small production-planning LP,
//! an infeasible system and an unbounded one.

use ggi_bandit::{LpProblem, LpSolution, Relation};

fn main() -> ggi_bandit::Result<()> {
    // min -3x - 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18, x, y >= 0
    let mut p = LpProblem::new(vec![-3.0, -5.0])?;
    p.add_constraint(vec![1.0, 0.0], Relation::Le, 4.0)?;
    p.add_constraint(vec![0.0, 2.0], Relation::Le, 12.0)?;
    p.add_constraint(vec![3.0, 2.0], Relation::Le, 18.0)?;
    match p.solve()? {
        LpSolution::Optimal { z, objective_value } => {
            println!("optimal x = {z:?}, objective = {objective_value}");
            println!("max constraint violation {:.1e}", p.max_violation(&z));
        }
        other => println!("unexpected: {:?}", other.status()),
    }

    // x is free; the first constraint keeps it bounded below.
    let mut q = LpProblem::new(vec![1.0, 0.0])?;
    q.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY)?;
    q.add_constraint(vec![1.0, 1.0], Relation::Ge, -2.0)?;
    q.add_constraint(vec![0.0, 1.0], Relation::Le, 1.0)?;
    println!("free variable: {:?}", q.solve()?);

    let mut infeasible = LpProblem::new(vec![1.0])?;
    infeasible.add_constraint(vec![1.0], Relation::Ge, 2.0)?;
    infeasible.add_constraint(vec![1.0], Relation::Le, 1.0)?;
    println!("infeasible: {:?}", infeasible.solve()?.status());

    let mut unbounded = LpProblem::new(vec![-1.0, 0.0])?;
    unbounded.add_constraint(vec![1.0, -1.0], Relation::Le, 1.0)?;
    println!("unbounded: {:?}", unbounded.solve()?.status());
    Ok(())
}
