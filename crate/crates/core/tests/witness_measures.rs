mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use common::{bell_weights, psd, random_bell, random_spin1, rng, spin1_weights, unitary};
use proptest::prelude::*;
use relent_core::matcore::{hermitian_eigenvalues, kron, BipartiteDims, ComplexMatrix, C64};
use relent_core::measures::{
    concurrence, expand_multiset, nearest_separable, ppt_report, spin1_positivity_eigs,
    spin1_ppt_eigs_boosted_quarter, spin1_ppt_eigs_rest, SeparableFamily,
};
use relent_core::states::{
    boost_spin_one, rho_bd, rho_spin1, BellWeights, DensityMatrix, SpinHalfAxes, SpinOneWeights,
};
use relent_core::witness::{
    bases_for, bd_coefficients, bd_witness, build_witness, coefficients_from_moment,
    coefficients_of, expectation, min_over_separable, moment_matrix, spin1_coeffs, spin1_witness,
    trace_bd_boosted, trace_bd_boosted_oracle, trace_bd_boosted_reconciled, trace_bd_rest,
    trace_pure_theta, trace_spin1_boosted_oracle, trace_spin1_rest, BasisConvention,
    SeparableSearch, WitnessFrame,
};

fn normalised_state(m: ComplexMatrix, dims: BipartiteDims) -> DensityMatrix {
    let tr = m.trace().re;
    let m = ComplexMatrix::from_fn(m.dim(), |i, j| {
        0.5 * (m.get(i, j) + m.get(j, i).conj()) / tr
    });
    DensityMatrix::new(m, dims).unwrap()
}

/// Exact minimum of `<a⊗b|W|a⊗b>` for a qubit first factor: scan the Bloch
/// sphere for `a` and take the lowest eigenvalue of the contracted operator.
fn product_minimum_oracle(w: &ComplexMatrix, dims: BipartiteDims) -> f64 {
    let db = dims.db;
    let mut best = f64::INFINITY;
    let (n_chi, n_phi) = (120, 240);
    for i in 0..=n_chi {
        let chi = PI * i as f64 / n_chi as f64;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let a = [
                C64::new((chi / 2.0).cos(), 0.0),
                C64::from_polar((chi / 2.0).sin(), phi),
            ];
            let reduced = ComplexMatrix::from_fn(db, |k, l| {
                let mut s = C64::new(0.0, 0.0);
                for x in 0..2 {
                    for y in 0..2 {
                        s += a[x].conj() * w.get(x * db + k, y * db + l) * a[y];
                    }
                }
                s
            });
            let reduced = ComplexMatrix::from_fn(db, |k, l| {
                0.5 * (reduced.get(k, l) + reduced.get(l, k).conj())
            });
            best = best.min(hermitian_eigenvalues(&reduced).unwrap()[0]);
        }
    }
    best
}

#[test]
fn concurrence_identity_on_random_bell_mixtures() {
    let mut r = rng(7);
    for _ in 0..300 {
        let w = random_bell(&mut r);
        let c = concurrence(&rho_bd(&w)).unwrap();
        let t = trace_bd_rest(&w);
        if w.max() > 0.5 {
            assert!((c + t).abs() < 1e-9, "{w:?}: C = {c}, Tr = {t}");
        } else {
            assert_eq!(c, 0.0);
            assert!(t >= 0.0);
        }
    }
}

#[test]
fn pipeline_matches_closed_bell_coefficients() {
    let mut r = rng(11);
    let q = relent_core::witness::OperatorBasis::qubit(BasisConvention::Hermitian);
    for _ in 0..200 {
        let w = random_bell(&mut r);
        let closed = bd_coefficients(&w);
        let set = coefficients_from_moment(&moment_matrix(&rho_bd(&w), &q, &q).unwrap()).unwrap();
        assert!(!closed.degenerate);
        assert!(set.coeffs.max_abs_diff(&closed.coeffs) < 1e-9, "{w:?}");
        let witness = bd_witness(&w, BasisConvention::Hermitian).unwrap();
        assert!((expectation(&witness, &rho_bd(&w)).unwrap() - trace_bd_rest(&w)).abs() < 1e-12);
    }
}

#[test]
fn degenerate_bell_weights_fall_back_to_pseudo_inverse() {
    let w = BellWeights::new(0.3, 0.2, 0.4, 0.1).unwrap();
    assert!(bd_coefficients(&w).degenerate);
    let witness = build_witness(&rho_bd(&w), BasisConvention::Hermitian).unwrap();
    assert!((expectation(&witness, &rho_bd(&w)).unwrap() - trace_bd_rest(&w)).abs() < 1e-12);
}

#[test]
fn reconciled_boosted_form_matches_oracle_up_to_quarter_turn() {
    let mut r = rng(13);
    let mut worst: f64 = 0.0;
    for _ in 0..60 {
        let w = random_bell(&mut r);
        for k in 0..=30 {
            let omega = FRAC_PI_2 * k as f64 / 30.0;
            let oracle = trace_bd_boosted_oracle(&w, omega, SpinHalfAxes::Opposite).unwrap();
            worst = worst.max((trace_bd_boosted_reconciled(&w, omega).unwrap() - oracle).abs());
            assert!(oracle >= trace_bd_rest(&w) - 1e-12);
        }
    }
    assert!(worst < 1e-9, "worst {worst}");
}

#[test]
fn printed_basis_does_not_reproduce_the_rest_trace() {
    let rho = DensityMatrix::maximally_mixed(BipartiteDims::QUBIT_QUBIT);
    match build_witness(&rho, BasisConvention::Printed) {
        Err(_) => {}
        Ok(w) => assert!((expectation(&w, &rho).unwrap() - 0.5).abs() > 0.1),
    }
}

#[test]
fn spin1_pipeline_reproduces_rest_trace() {
    let mut r = rng(17);
    for _ in 0..200 {
        let w = random_spin1(&mut r);
        let rho = rho_spin1(&w).unwrap();
        let witness = build_witness(&rho, BasisConvention::Hermitian).unwrap();
        assert!(
            (expectation(&witness, &rho).unwrap() - trace_spin1_rest(&w)).abs() < 1e-10,
            "{w:?}"
        );
    }
}

#[test]
fn spin1_off_diagonal_sign_follows_dominant_projector() {
    let (a, b) = bases_for(BipartiteDims::QUBIT_QUTRIT, BasisConvention::Hermitian).unwrap();
    let coeffs = |x: f64, y: f64| {
        let rho = rho_spin1(&SpinOneWeights::new(x, y).unwrap()).unwrap();
        coefficients_from_moment(&moment_matrix(&rho, &a, &b).unwrap())
            .unwrap()
            .coeffs
    };
    let c = coeffs(1.0, 0.0);
    assert!((c.get(2, 4).re + 1.0).abs() < 1e-12);
    assert!((c.get(3, 7).re + 1.0).abs() < 1e-12);
    let c = coeffs(0.0, 1.0);
    assert!((c.get(2, 4).re - 1.0).abs() < 1e-12);
    assert!((c.get(3, 7).re - 1.0).abs() < 1e-12);
    assert!((c.get(0, 2).re + 1.0).abs() < 1e-12);
    assert!((c.get(1, 0).re + 1.0).abs() < 1e-12);
    let mut r = rng(19);
    for _ in 0..100 {
        let w = random_spin1(&mut r);
        if w.x > w.y + 1e-3 && w.x + w.y > 1e-3 {
            assert!(
                coeffs(w.x, w.y).max_abs_diff(&spin1_coeffs(&w)) < 1e-9,
                "{w:?}"
            );
        }
    }
}

#[test]
fn closed_spin1_witness_at_pure_corner() {
    let w = SpinOneWeights::new(0.0, 1.0).unwrap();
    let rho = rho_spin1(&w).unwrap();
    let closed = spin1_witness(&w, BasisConvention::Hermitian).unwrap();
    assert!((expectation(&closed, &rho).unwrap() - 1.0).abs() < 1e-12);
    let rebuilt = build_witness(&rho, BasisConvention::Hermitian).unwrap();
    assert!((expectation(&rebuilt, &rho).unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn boosted_pure_corner_follows_theta_formula() {
    let w = SpinOneWeights::new(0.0, 1.0).unwrap();
    for k in 0..=24 {
        let theta = FRAC_PI_2 * k as f64 / 24.0;
        let oracle = trace_spin1_boosted_oracle(&w, theta, WitnessFrame::Boosted).unwrap();
        assert!(
            (oracle - trace_pure_theta(theta)).abs() < 1e-10,
            "theta {theta}"
        );
        let rho = boost_spin_one(&rho_spin1(&w).unwrap(), theta).unwrap();
        assert!(
            (2.0 * ppt_report(&rho).unwrap().min_eigenvalue - trace_pure_theta(theta)).abs()
                < 1e-10
        );
    }
}

#[test]
fn sampled_separable_minimum_brackets_exact_minimum() {
    let mut r = rng(23);
    let search = SeparableSearch {
        samples: 4000,
        refine_steps: 60,
        ..Default::default()
    };
    for k in 0..6 {
        let rho = if k % 2 == 0 {
            rho_bd(&random_bell(&mut r))
        } else {
            rho_spin1(&random_spin1(&mut r)).unwrap()
        };
        let w = build_witness(&rho, BasisConvention::Hermitian).unwrap();
        let found = min_over_separable(w.mat(), w.dims(), &search)
            .unwrap()
            .value;
        let exact = product_minimum_oracle(w.mat(), w.dims());
        assert!(found >= exact - 1e-9, "sampler {found} below exact {exact}");
        assert!(
            found <= exact + 1e-3,
            "sampler {found} far above exact {exact}"
        );
        assert!(found >= -1e-7);
    }
    let bell = relent_core::states::bell_states()[0];
    let w = &ComplexMatrix::identity(4) - &ComplexMatrix::outer(&bell).scale_real(2.0);
    let exact = product_minimum_oracle(&w, BipartiteDims::QUBIT_QUBIT);
    assert!(exact.abs() < 1e-12);
}

#[test]
fn spin1_spectra_match_closed_families_over_triangle() {
    let mut r = rng(29);
    for _ in 0..200 {
        let w = random_spin1(&mut r);
        let rho = rho_spin1(&w).unwrap();
        let gap = |a: &[f64], b: &[f64]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
        };
        assert!(
            gap(
                &ppt_report(&rho).unwrap().eigenvalues,
                &expand_multiset(&spin1_ppt_eigs_rest(&w))
            ) < 1e-12
        );
        assert!(
            gap(
                &rho.eigenvalues().unwrap(),
                &expand_multiset(&spin1_positivity_eigs(&w))
            ) < 1e-12
        );
        let boosted = boost_spin_one(&rho, FRAC_PI_2).unwrap();
        assert!(ppt_report(&boosted).unwrap().is_ppt);
        assert!(spin1_ppt_eigs_boosted_quarter(&w).unwrap().max_residual < 1e-12);
    }
}

#[test]
fn quarter_turn_pure_corner_pairs_all_printed_values() {
    let c = spin1_ppt_eigs_boosted_quarter(&SpinOneWeights::new(0.0, 1.0).unwrap()).unwrap();
    let s3 = 3f64.sqrt();
    let expected = [0.0, 0.75, 0.25, s3 / 4.0, -s3 / 4.0];
    for (p, e) in c.printed.iter().zip(expected) {
        assert!((p - e).abs() < 1e-15);
    }
    assert!(c.max_residual < 1e-12);
}

#[test]
fn nearest_separable_is_monotone_in_budget() {
    let rho = rho_spin1(&SpinOneWeights::new(0.0, 1.0).unwrap()).unwrap();
    for family in [
        SeparableFamily::XyTriangle { theta: 0.0 },
        SeparableFamily::ProductMixtures { seed: 3 },
    ] {
        let budgets: &[usize] = match family {
            SeparableFamily::XyTriangle { .. } => &[1, 10, 100, 1000, 10_000, 30_000],
            SeparableFamily::ProductMixtures { .. } => &[1, 2, 5, 10, 20, 40],
        };
        let mut previous = f64::INFINITY;
        for &budget in budgets {
            let d = nearest_separable(&rho, family, budget).unwrap().distance_sq;
            assert!(
                d <= previous + 1e-15,
                "{family:?} budget {budget}: {d} > {previous}"
            );
            previous = d;
        }
    }
}

#[test]
fn product_mixtures_reach_below_triangle_optimum() {
    let rho = rho_spin1(&SpinOneWeights::new(0.0, 1.0).unwrap()).unwrap();
    let triangle = nearest_separable(&rho, SeparableFamily::default(), 30_000).unwrap();
    let mixtures =
        nearest_separable(&rho, SeparableFamily::ProductMixtures { seed: 5 }, 60).unwrap();
    assert!(mixtures.distance_sq <= triangle.distance_sq + 1e-9);
    assert!(ppt_report(&mixtures.state).unwrap().is_ppt);
}

#[test]
fn separable_boosted_corner_has_zero_distance() {
    let rho = boost_spin_one(
        &rho_spin1(&SpinOneWeights::new(0.0, 1.0).unwrap()).unwrap(),
        FRAC_PI_2,
    )
    .unwrap();
    let mixtures =
        nearest_separable(&rho, SeparableFamily::ProductMixtures { seed: 0 }, 20).unwrap();
    assert!(mixtures.distance_sq < 1e-4);
    let triangle = nearest_separable(
        &rho,
        SeparableFamily::XyTriangle { theta: FRAC_PI_2 },
        20_000,
    )
    .unwrap();
    assert!(triangle.distance_sq < 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn concurrence_is_local_unitary_invariant(m in psd(4), ua in unitary(2), ub in unitary(2)) {
        let rho = normalised_state(m, BipartiteDims::QUBIT_QUBIT);
        let rotated = rho.conjugate_by(&kron(&ua, &ub)).unwrap();
        prop_assert!((concurrence(&rho).unwrap() - concurrence(&rotated).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn zero_angle_reduces_boosted_forms(w in bell_weights()) {
        let rest = trace_bd_rest(&w);
        prop_assert!((trace_bd_boosted(&w, 0.0).unwrap() - rest).abs() < 1e-10);
        prop_assert!((trace_bd_boosted_reconciled(&w, 0.0).unwrap() - rest).abs() < 1e-10);
    }

    #[test]
    fn rebuilt_trace_is_one_minus_trace_norm(m in psd(6)) {
        let rho = normalised_state(m, BipartiteDims::QUBIT_QUTRIT);
        let (a, b) = bases_for(rho.dims(), BasisConvention::Hermitian).unwrap();
        let rt = moment_matrix(&rho, &a, &b).unwrap();
        prop_assert!(rt.max_imag() < 1e-14);
        let w = build_witness(&rho, BasisConvention::Hermitian).unwrap();
        let expected = 1.0 - rt.trace_norm().unwrap();
        prop_assert!((expectation(&w, &rho).unwrap() - expected).abs() < 1e-9);
        let set = coefficients_from_moment(&rt).unwrap();
        prop_assert!(set.coeffs.operator_norm_sq().unwrap() <= 1.0 + 1e-8);
    }

    #[test]
    fn witness_round_trips_through_reexpansion(m in psd(4), v in psd(6)) {
        for rho in [normalised_state(m, BipartiteDims::QUBIT_QUBIT), normalised_state(v, BipartiteDims::QUBIT_QUTRIT)] {
            let w = build_witness(&rho, BasisConvention::Hermitian).unwrap();
            let (a, b) = w.bases();
            prop_assert!(coefficients_of(w.mat(), a, b).unwrap().max_abs_diff(w.coeffs()) < 1e-12);
        }
    }

    #[test]
    fn boosted_spin1_witnesses_stay_valid(w in spin1_weights(), theta in 0.0..FRAC_PI_2) {
        for frame in [WitnessFrame::Rest, WitnessFrame::Boosted] {
            let value = trace_spin1_boosted_oracle(&w, theta, frame).unwrap();
            prop_assert!(value.is_finite());
        }
        let boosted = boost_spin_one(&rho_spin1(&w).unwrap(), theta).unwrap();
        let witness = build_witness(&boosted, BasisConvention::Hermitian).unwrap();
        let search = SeparableSearch { samples: 500, refine_steps: 30, ..Default::default() };
        prop_assert!(min_over_separable(witness.mat(), witness.dims(), &search).unwrap().value >= -1e-7);
    }
}

#[test]
fn quoted_boost_angle_values() {
    let w = SpinOneWeights::new(0.0, 1.0).unwrap();
    let v = trace_spin1_boosted_oracle(&w, FRAC_PI_4, WitnessFrame::Boosted).unwrap();
    assert!((v + 3f64.sqrt() / 2.0).abs() < 1e-10);
}
