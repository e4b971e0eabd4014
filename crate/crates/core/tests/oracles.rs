//! Closed-form results checked against independent numerical routes:
//! RK4 integration of the generator and brute-force grid search.

use coldecay_core::entanglement::{
    asymptotic_concurrence, concurrence, entropy_of_entanglement, is_ppt_separable,
    mes_asymptotic_concurrence, product_asymptotic_concurrence,
};
use coldecay_core::model::{evolve_series, integrate, IntegratorConfig, ModelParams};
use coldecay_core::propagator::{
    asymptotic_params, asymptotic_state, c_max, evolve_bell_general, evolve_excited_ground_general,
    evolve_g1, excited_ground_concurrence, grid_search_peak, t_gamma, Symmetry,
};
use coldecay_core::qmat::{partial_trace, validate_state, Subsystem};
use coldecay_core::random::{random_density_matrix, random_pure_state, seeded_rng};
use coldecay_core::states::{
    basis_state, bell, bell_diagonal, mems, mes, product_state, werner, BellState, MemsDelta,
};
use coldecay_core::{QubitVector, C64};

fn unit(g: f64) -> ModelParams {
    ModelParams::new(1.0, g).unwrap()
}

#[test]
fn closed_form_g1_matches_rk4() {
    let mut rng = seeded_rng(100);
    let cfg = IntegratorConfig::default();
    let grid = [0.0, 0.3, 1.0, 3.0];
    for _ in 0..50 {
        let rho = random_density_matrix(&mut rng);
        let states = coldecay_core::model::evolve_states(&rho, &unit(1.0), &grid, &cfg).unwrap();
        for (rk4, &t) in states.iter().zip(&grid) {
            let closed = evolve_g1(&rho, 1.0, t).unwrap();
            assert!(closed.max_abs_diff(rk4) < 1e-6, "t = {t}");
        }
    }
}

#[test]
fn closed_form_converges_to_asymptotic_state() {
    let mut rng = seeded_rng(8);
    for _ in 0..50 {
        let rho = random_density_matrix(&mut rng);
        let late = evolve_g1(&rho, 1.0, 50.0).unwrap();
        assert!(late.max_abs_diff(&asymptotic_state(&rho)) < 1e-8);
    }
}

#[test]
fn closed_form_plus_branch_reduces_to_g1() {
    let psi_plus = bell(BellState::PsiPlus);
    for t in [0.0, 0.2, 1.0, 4.0] {
        let general = evolve_bell_general(Symmetry::Plus, 1.0, 1.0, t).unwrap();
        let g1 = evolve_g1(&psi_plus, 1.0, t).unwrap();
        assert!(general.max_abs_diff(&g1) < 1e-10, "t = {t}");
    }
}

#[test]
fn excited_ground_general_matches_rk4() {
    let start = basis_state(true, false);
    let cfg = IntegratorConfig::default();
    for g in [0.0, 0.3, 0.5, 0.99] {
        for t in [0.5, 1.0, 4.0] {
            let rk4 = integrate(&start, &unit(g), t, &cfg).unwrap();
            let closed = evolve_excited_ground_general(1.0, g, t).unwrap();
            assert!(closed.max_abs_diff(&rk4) < 1e-6, "g = {g}, t = {t}");
            validate_state(closed.matrix()).unwrap();
        }
    }
}

#[test]
fn bell_general_matches_rk4() {
    let cfg = IntegratorConfig::default();
    for (sign, which) in [
        (Symmetry::Plus, BellState::PsiPlus),
        (Symmetry::Minus, BellState::PsiMinus),
    ] {
        for g in [0.5, 0.99] {
            for t in [1.0, 5.0] {
                let rk4 = integrate(&bell(which), &unit(g), t, &cfg).unwrap();
                let closed = evolve_bell_general(sign, 1.0, g, t).unwrap();
                assert!(
                    closed.max_abs_diff(&rk4) < 1e-6,
                    "{sign:?}, g = {g}, t = {t}"
                );
            }
        }
    }
}

#[test]
fn series_column_for_doubly_excited() {
    let s = evolve_series(
        &basis_state(true, true),
        &unit(1.0),
        &[0.0, 1.0, 2.0],
        &IntegratorConfig::default(),
    )
    .unwrap();
    let pops: Vec<f64> = s
        .records()
        .iter()
        .map(|r| r.state.unwrap()[(0, 0)].re)
        .collect();
    for (p, want) in pops.iter().zip([1.0, (-2.0f64).exp(), (-4.0f64).exp()]) {
        assert!((p - want).abs() < 1e-11);
    }
}

#[test]
fn peak_matches_grid_search() {
    let ln3 = 3.0f64.ln();
    assert!((t_gamma(1.0, 0.5).unwrap() - 1.098_612_288_668_11).abs() < 1e-12);
    assert!((c_max(1.0, 0.5).unwrap() - 0.192_450_089_729_875_25).abs() < 1e-12);
    // e^{-ln 3} sinh(ln 3 / 2) = 1 / (3√3)
    let independent = (-ln3).exp() * (0.5 * ln3).sinh();
    assert!((c_max(1.0, 0.5).unwrap() - independent).abs() < 1e-15);

    for g in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let (t_best, c_best) = grid_search_peak(1.0, g, 20.0, 1e-4).unwrap();
        assert!((t_best - t_gamma(1.0, g).unwrap()).abs() < 1e-4, "g = {g}");
        assert!((c_best - c_max(1.0, g).unwrap()).abs() < 1e-4, "g = {g}");
    }
}

#[test]
fn excited_ground_concurrence_formula_matches_wootters() {
    for g in [0.2, 0.6] {
        for t in [0.1, 1.0, 3.0] {
            let rho = evolve_excited_ground_general(1.0, g, t).unwrap();
            let c = concurrence(&rho).unwrap().value();
            assert!((c - excited_ground_concurrence(1.0, g, t)).abs() < 1e-12);
        }
    }
}

#[test]
fn mes_asymptotics_agree() {
    let a = 0.5f64.sqrt();
    let q = mes(a, std::f64::consts::PI, 0.0).unwrap();
    let via_state = asymptotic_concurrence(&q).value();
    let closed = mes_asymptotic_concurrence(a, std::f64::consts::PI, 0.0)
        .unwrap()
        .value();
    assert!((via_state - 0.5).abs() < 1e-15);
    assert!((closed - 0.5).abs() < 1e-15);

    let mut rng = seeded_rng(31);
    use rand::Rng;
    for _ in 0..20 {
        let (a, t1, t2) = (
            rng.random_range(0.0..1.0),
            rng.random_range(0.0..std::f64::consts::TAU),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        let q = mes(a, t1, t2).unwrap();
        let p = asymptotic_params(&q);
        assert!(
            (2.0 * p.alpha - mes_asymptotic_concurrence(a, t1, t2).unwrap().value()).abs() < 1e-14
        );
        assert!((entropy_of_entanglement(&q).unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn product_asymptotics_agree() {
    let e = QubitVector::excited();
    let plus = QubitVector::normalized(C64::new(1.0, 0.0), C64::new(1.0, 0.0)).unwrap();
    let rho = product_state(&e, &plus);
    assert!((asymptotic_concurrence(&rho).value() - 0.25).abs() < 1e-15);
    assert!((product_asymptotic_concurrence(&e, &plus).value() - 0.25).abs() < 1e-15);
}

#[test]
fn werner_asymptotic_params() {
    for p in [0.0, 0.2, 0.5, 0.9] {
        let ap = asymptotic_params(&werner(p).unwrap());
        assert!((ap.alpha - (1.0 - p) / 8.0).abs() < 1e-15);
        assert!(ap.beta.norm() < 1e-15);
    }
}

#[test]
fn bell_diagonal_asymptotic_state() {
    let rho = bell_diagonal([0.1, 0.2, 0.3, 0.4]).unwrap();
    let a = asymptotic_state(&rho);
    assert!((a[(1, 1)].re - 0.2).abs() < 1e-15);
    assert!((a[(1, 2)].re + 0.2).abs() < 1e-15);
    assert!((a[(3, 3)].re - 0.6).abs() < 1e-15);
    assert!((asymptotic_concurrence(&rho).value() - 0.4).abs() < 1e-15);
}

#[test]
fn mems_asymptotic_examples() {
    let c = asymptotic_concurrence(&mems(MemsDelta::new(0.8).unwrap())).value();
    assert!((c - 0.1).abs() < 1e-15);
    let c = asymptotic_concurrence(&mems(MemsDelta::new(0.0).unwrap())).value();
    assert!((c - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn werner_separability_examples() {
    assert!(!is_ppt_separable(&werner(0.5).unwrap()));
    assert!(is_ppt_separable(&werner(0.3).unwrap()));
    assert!((concurrence(&werner(0.5).unwrap()).unwrap().value() - 0.25).abs() < 1e-10);
    assert!((asymptotic_concurrence(&werner(0.0).unwrap()).value() - 0.25).abs() < 1e-15);
}

#[test]
fn pure_state_separability_consistency() {
    let mut rng = seeded_rng(55);
    for _ in 0..200 {
        let rho = random_pure_state(&mut rng);
        let c = concurrence(&rho).unwrap().value();
        let e = entropy_of_entanglement(&rho).unwrap();
        let ra = partial_trace(&rho, Subsystem::A);
        let reduced_is_projector = ((ra * ra).trace().re - 1.0).abs() < 1e-7;
        assert_eq!(c < 1e-7, reduced_is_projector);
        assert_eq!(c < 1e-7, e < 1e-7);
    }
    let e = QubitVector::excited();
    let g = QubitVector::ground();
    let rho = product_state(&e, &g);
    assert_eq!(concurrence(&rho).unwrap().value(), 0.0);
    assert_eq!(entropy_of_entanglement(&rho).unwrap(), 0.0);
}
