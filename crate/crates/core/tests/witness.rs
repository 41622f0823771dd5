mod common;

use lme_core::sweep::dim_vectors;
use lme_core::witness::{lme_residual_from_purity, random_state, reduced_density, PureState};
use lme_core::{
    lme_residual, residual_gradient, search_witness, verify_witness, DimVec, EnumerationBounds,
    WitnessConfig,
};

fn dv(xs: &[u64]) -> DimVec {
    DimVec::new(xs).unwrap()
}

#[test]
fn library_marginals_match_bruteforce() {
    for (k, xs) in [
        &[2u64, 2][..],
        &[2, 3],
        &[2, 3, 4],
        &[1, 2, 2, 3],
        &[3, 2, 2],
    ]
    .iter()
    .enumerate()
    {
        let d = dv(xs);
        let dims = common::usize_dims(&d);
        let psi = random_state(&d, 1000 + k as u64).unwrap();
        for i in 0..d.len() {
            let fast = reduced_density(&psi, i).unwrap();
            let slow = common::partial_trace_bruteforce(psi.amplitudes(), &dims, i);
            for r in 0..dims[i] {
                for c in 0..dims[i] {
                    assert!((fast.matrix[(r, c)] - slow[r][c]).norm() < 1e-14);
                }
            }
        }
        let f = lme_residual(&psi);
        assert!((f - common::residual_bruteforce(psi.amplitudes(), &dims)).abs() < 1e-13);
        assert!((f - lme_residual_from_purity(&psi)).abs() < 1e-10);
    }
}

#[test]
fn gradient_vanishes_at_bell_states() {
    for d in 2..=5u64 {
        let psi = PureState::ghz(dv(&[d, d])).unwrap();
        assert!(residual_gradient(&psi).iter().all(|g| g.norm() < 1e-10));
    }
}

#[test]
fn gradient_matches_finite_differences_on_other_shapes() {
    for xs in [&[1u64, 2, 3][..], &[2, 2, 2, 2], &[3, 3, 3]] {
        let d = dv(xs);
        for seed in 0..3 {
            let psi = random_state(&d, seed).unwrap();
            let g = residual_gradient(&psi);
            let fd = common::gradient_fd(&psi, 1e-5);
            assert!(common::relative_error(&g, &fd) < 1e-6, "{d} seed {seed}");
        }
    }
}

#[test]
fn spec_search_examples() {
    let cfg = WitnessConfig::default();
    let rep = search_witness(&dv(&[2, 2, 3]), &cfg).unwrap();
    assert!(rep.succeeded);
    assert!(verify_witness(&rep.best_state, 1e-4).0);

    let rep = search_witness(&dv(&[2, 2, 5]), &cfg).unwrap();
    assert!(!rep.succeeded);
    assert!(rep.best_residual > 1e-3);
    assert_eq!(rep.restarts_used, 100);
    let sum: f64 = rep.per_subsystem_deviation.iter().map(|x| x * x).sum();
    assert!((sum - rep.best_residual).abs() < 1e-12);
}

#[test]
fn full_restart_budget_is_reproducible() {
    let cfg = WitnessConfig {
        restarts: 8,
        early_exit: false,
        seed: 7,
        ..WitnessConfig::default()
    };
    let a = search_witness(&dv(&[2, 3, 4]), &cfg).unwrap();
    let b = search_witness(&dv(&[2, 3, 4]), &cfg).unwrap();
    assert_eq!(a.restarts_used, 8);
    assert_eq!(a.iterations_total, b.iterations_total);
    assert_eq!(a.best_restart, b.best_restart);
    assert_eq!(a.best_state, b.best_state);
}

/// Empirical: the descent finds a witness exactly when the closed form says
/// one exists. A failure on an empty case is expected, not a proof.
#[test]
fn desk_scale_existence_agrees_with_classifier() {
    let cfg = WitnessConfig::default();
    let mut checked = 0;
    for (raw, _) in dim_vectors(EnumerationBounds::new(2, 6, 64)) {
        let d = DimVec::new(&raw).unwrap();
        let rep = search_witness(&d, &cfg).unwrap();
        let exists = !rep.predicted.status.is_empty();
        assert_eq!(
            rep.succeeded, exists,
            "{d}: residual {:e}",
            rep.best_residual
        );
        if rep.succeeded {
            assert!(verify_witness(&rep.best_state, 1e-4).0);
        }
        checked += 1;
    }
    assert_eq!(checked, 595);
}
