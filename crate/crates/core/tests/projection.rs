mod common;

use common::*;
use ggi_bandit::projection::{project_simplex, project_truncated_simplex};
use proptest::prelude::*;

fn feasible(p: &[f64], beta: f64, tol: f64) -> bool {
    let floor = beta / p.len() as f64;
    (p.iter().sum::<f64>() - 1.0).abs() <= tol && p.iter().all(|v| *v >= floor - tol)
}

#[test]
fn grid_oracle_examples() {
    let two = project_simplex(&[2.0, 0.0]).unwrap();
    assert!(euclid(two.as_slice(), &grid_projection(&[2.0, 0.0], 0.0, 1e-4)) <= 1e-4);
    assert!(euclid(two.as_slice(), &[1.0, 0.0]) <= 1e-15);
    let trunc = project_truncated_simplex(&[1.0, 0.0], 0.2).unwrap();
    let oracle = grid_projection(&[1.0, 0.0], 0.2, 1e-4);
    assert!(euclid(trunc.as_slice(), &oracle) <= 1e-4);
    assert!(euclid(&oracle, &[0.9, 0.1]) <= 1e-4);
}

#[test]
fn matches_grid_search_small_k() {
    let mut r = rng(31);
    for i in 0..60 {
        let k = 1 + i % 3;
        let x = uniform_vec(&mut r, k, -1.5, 1.5);
        let beta = if i % 5 == 0 { 0.0 } else { rand::Rng::gen_range(&mut r, 0.0..1.0) };
        let got = project_truncated_simplex(&x, beta).unwrap();
        let want = grid_projection(&x, beta, 1e-4);
        assert!(euclid(got.as_slice(), &want) <= 2e-4, "x={x:?} beta={beta}");
    }
}

proptest! {
    #[test]
    fn output_is_feasible(x in prop::collection::vec(-10.0..10.0f64, 1..12), beta in 0.0..=1.0f64) {
        let p = project_truncated_simplex(&x, beta).unwrap();
        prop_assert!(feasible(p.as_slice(), beta, 1e-10));
    }

    #[test]
    fn idempotent(x in prop::collection::vec(-3.0..3.0f64, 1..12), beta in 0.0..=1.0f64) {
        let p = project_truncated_simplex(&x, beta).unwrap();
        let q = project_truncated_simplex(p.as_slice(), beta).unwrap();
        prop_assert!(euclid(p.as_slice(), q.as_slice()) <= 1e-12);
    }

    #[test]
    fn non_expansive(
        pair in (1usize..10).prop_flat_map(|k| (prop::collection::vec(-3.0..3.0f64, k), prop::collection::vec(-3.0..3.0f64, k))),
        beta in 0.0..=1.0f64,
    ) {
        let (x, y) = pair;
        let px = project_truncated_simplex(&x, beta).unwrap();
        let py = project_truncated_simplex(&y, beta).unwrap();
        prop_assert!(euclid(px.as_slice(), py.as_slice()) <= euclid(&x, &y) + 1e-10);
    }

    #[test]
    fn order_preserving(x in prop::collection::vec(-3.0..3.0f64, 2..10), beta in 0.0..=1.0f64) {
        let p = project_truncated_simplex(&x, beta).unwrap();
        for i in 0..x.len() {
            for j in 0..x.len() {
                if x[i] >= x[j] {
                    prop_assert!(p.as_slice()[i] >= p.as_slice()[j]);
                }
            }
        }
    }

    #[test]
    fn zero_truncation_is_plain_projection(x in prop::collection::vec(-3.0..3.0f64, 1..10)) {
        prop_assert_eq!(
            project_truncated_simplex(&x, 0.0).unwrap().into_vec(),
            project_simplex(&x).unwrap().into_vec()
        );
    }
}
