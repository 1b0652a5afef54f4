mod common;

use common::*;
use ggi_bandit::env::{make_random_instance, stream_rng, true_means, ArmDistribution, Atom, EmpiricalState};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn running_means_match_log_replay() {
    let mut r = rng(5);
    let (k, d) = (4, 3);
    let mut state = EmpiricalState::new(k, d);
    let mut log: Vec<(usize, Vec<f64>)> = Vec::new();
    for _ in 0..1000 {
        let arm = r.gen_range(0..k);
        let x = uniform_vec(&mut r, d, 0.0, 1.0);
        state.update(arm, &x).unwrap();
        log.push((arm, x));
    }
    for arm in 0..k {
        let pulls: Vec<&Vec<f64>> = log.iter().filter(|(a, _)| *a == arm).map(|(_, x)| x).collect();
        assert_eq!(state.pull_counts()[arm] as usize, pulls.len());
        for j in 0..d {
            let mean = pulls.iter().map(|x| x[j]).sum::<f64>() / pulls.len() as f64;
            assert!((state.mu_hat().get(j, arm) - mean).abs() <= 1e-12);
        }
    }
    for j in 0..d {
        let total: f64 = log.iter().map(|(_, x)| x[j]).sum();
        assert!((state.cumulative_cost()[j] - total).abs() <= 1e-9);
    }
}

#[test]
fn unpulled_arms_keep_zero_estimate() {
    let mut state = EmpiricalState::new(3, 2);
    state.update(1, &[0.5, 1.0]).unwrap();
    assert_eq!(state.mu_hat().column(0), &[0.0, 0.0]);
    assert_eq!(state.mu_hat().column(1), &[0.5, 1.0]);
    assert!(state.update(3, &[0.0, 0.0]).is_err());
    assert!(state.update(0, &[0.0]).is_err());
}

#[test]
fn sample_stream_is_reproducible() {
    let arms = make_random_instance(3, 4, 99).unwrap();
    let draw = |seed, stream| {
        let mut g = stream_rng(seed, stream);
        (0..200).map(|i| arms[i % 3].sample(&mut g)).collect::<Vec<_>>()
    };
    assert_eq!(draw(1, 7), draw(1, 7));
    assert_ne!(draw(1, 7), draw(1, 8));
    assert_ne!(draw(1, 7), draw(2, 7));
}

#[test]
fn finite_support_mean_and_samples() {
    let arm = ArmDistribution::finite_support(vec![
        Atom { cost: vec![1.0, 0.0], prob: 0.25 },
        Atom { cost: vec![0.0, 1.0], prob: 0.75 },
    ])
    .unwrap();
    assert_eq!(arm.mean(), vec![0.25, 0.75]);
    let mut g = rng(4);
    for _ in 0..100 {
        let x = arm.sample(&mut g);
        assert!(x == vec![1.0, 0.0] || x == vec![0.0, 1.0]);
    }
    assert!(true_means(&[arm]).is_ok());
}

proptest! {
    #[test]
    fn pull_counts_sum_to_rounds(pulls in prop::collection::vec((0usize..5, 0.0..=1.0f64), 0..300)) {
        let mut state = EmpiricalState::new(5, 1);
        for (k, x) in &pulls {
            state.update(*k, &[*x]).unwrap();
        }
        prop_assert_eq!(state.pull_counts().iter().sum::<u64>(), pulls.len() as u64);
        prop_assert_eq!(state.rounds(), pulls.len() as u64);
        for v in state.mu_hat().column(0).iter().chain(state.mu_hat().column(4)) {
            prop_assert!((0.0..=1.0).contains(v));
        }
    }

    #[test]
    fn samples_lie_in_unit_cube(seed in any::<u64>(), k in 2usize..6, d in 1usize..6) {
        let arms = make_random_instance(k, d, seed).unwrap();
        let mut g = stream_rng(seed, 1);
        for arm in &arms {
            let x = arm.sample(&mut g);
            prop_assert_eq!(x.len(), d);
            prop_assert!(x.iter().all(|v| *v == 0.0 || *v == 1.0));
        }
    }
}
