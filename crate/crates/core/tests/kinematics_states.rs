mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use common::{bell_weights, spin1_weights};
use proptest::prelude::*;
use relent_core::kinematics::lorentz::composition_wigner_rotation;
use relent_core::kinematics::{
    d_half, d_half_about, d_one, wigner_angle, BoostContext, Vec3, WignerRotation,
};
use relent_core::matcore::ComplexMatrix;
use relent_core::states::{
    boost_spin_half, boost_spin_one, rho_bd, rho_spin1, spin_half_boost_unitary,
    spin_one_boost_unitary, SpinHalfAxes,
};

const X: Vec3 = [1.0, 0.0, 0.0];
const Z: Vec3 = [0.0, 0.0, 1.0];

fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    (u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(u.dim()))
}

/// Momentum populations survive any boost; coherences between the two
/// momenta survive only when both branches rotate alike.
fn same_populations(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    (0..a.dim()).all(|i| (a.get(i, i) - b.get(i, i)).norm() < 1e-12)
}

fn geometries() -> Vec<(Vec3, Vec3)> {
    let s = FRAC_1_SQRT_2;
    vec![
        (X, Z),
        (X, [s, 0.0, s]),
        ([0.0, 1.0, 0.0], [0.6, 0.0, 0.8]),
        (Z, [0.0, -0.6, -0.8]),
    ]
}

/// `Ω` and `Ω·n̂` agree; the axis sign is irrelevant when `Ω = 0`.
fn rotation_gap(a: &WignerRotation, b: &WignerRotation) -> f64 {
    let va = a.n_hat.map(|c| c * a.omega);
    let vb = b.n_hat.map(|c| c * b.omega);
    let vec_gap = va
        .iter()
        .zip(&vb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    vec_gap.max((a.omega - b.omega).abs())
}

#[test]
fn wigner_angle_matches_lorentz_composition_on_grid() {
    let mut worst: f64 = 0.0;
    for &beta in &[0.0, 0.1, 0.3, 0.6, 0.9, 0.99] {
        for &ratio in &[1.0, 1.1, 1.5, 2.0, 5.0, 10.0] {
            for (e, p) in geometries() {
                let ctx = BoostContext::from_energy_ratio(beta, 1.0, ratio, e, p).unwrap();
                let closed = wigner_angle(&ctx).unwrap();
                let oracle = composition_wigner_rotation(&ctx);
                worst = worst.max(rotation_gap(&closed, &oracle));
                assert!((d_half(&closed).max_abs_diff(&d_half(&oracle))) < 1e-9);
            }
        }
    }
    assert!(worst < 1e-9, "worst gap {worst}");
}

#[test]
fn wigner_angle_grows_with_beta_in_perpendicular_geometry() {
    let mut previous = 0.0;
    for k in 0..=200 {
        let beta = 0.995 * k as f64 / 200.0;
        let ctx = BoostContext::from_energy_ratio(beta, 1.0, 2.0, X, Z).unwrap();
        let omega = wigner_angle(&ctx).unwrap().omega;
        assert!(omega >= previous - 1e-15);
        assert!(omega - previous < 0.05, "jump at beta = {beta}");
        previous = omega;
    }
}

#[test]
fn spin_one_rotation_at_quarter_turn() {
    let d = d_one(FRAC_PI_2);
    let h = 0.5;
    let o = FRAC_1_SQRT_2;
    assert!((d.get(0, 0).re - h).abs() < 1e-15);
    assert!((d.get(0, 1).im - o).abs() < 1e-15);
    assert!((d.get(0, 2).re + h).abs() < 1e-15);
    assert!(d.get(1, 1).norm() < 1e-15);
}

proptest! {
    #[test]
    fn rotation_matrices_are_unitary(omega in -PI..PI, theta in -2.0 * PI..2.0 * PI, axis in prop::array::uniform3(-1.0f64..1.0)) {
        prop_assume!(axis.iter().map(|c| c * c).sum::<f64>() > 1e-3);
        let n = (axis.iter().map(|c| c * c).sum::<f64>()).sqrt();
        let axis = axis.map(|c| c / n);
        prop_assert!(unitarity_defect(&d_half_about(omega, axis)) < 1e-12);
        prop_assert!(unitarity_defect(&d_one(theta)) < 1e-12);
        prop_assert!(unitarity_defect(&spin_half_boost_unitary(omega, SpinHalfAxes::Opposite)) < 1e-12);
        prop_assert!(unitarity_defect(&spin_one_boost_unitary(theta)) < 1e-12);
    }

    #[test]
    fn spin_one_rotations_compose(a in -PI..PI, b in -PI..PI) {
        prop_assert!((&d_one(a) * &d_one(b)).approx_eq(&d_one(a + b), 1e-10));
    }

    #[test]
    fn spin_half_boosts_compose(w in bell_weights(), a in -PI..PI, b in -PI..PI, shared in any::<bool>()) {
        let axes = if shared { SpinHalfAxes::Shared } else { SpinHalfAxes::Opposite };
        let rho = rho_bd(&w);
        let twice = boost_spin_half(&boost_spin_half(&rho, a, axes).unwrap(), b, axes).unwrap();
        let once = boost_spin_half(&rho, a + b, axes).unwrap();
        prop_assert!(twice.mat().approx_eq(once.mat(), 1e-10));
    }

    #[test]
    fn spin_one_boosts_compose_and_preserve_marginal(w in spin1_weights(), a in -PI..PI, b in -PI..PI) {
        let rho = rho_spin1(&w).unwrap();
        let first = boost_spin_one(&rho, a).unwrap();
        let twice = boost_spin_one(&first, b).unwrap();
        prop_assert!(twice.mat().approx_eq(boost_spin_one(&rho, a + b).unwrap().mat(), 1e-10));
        prop_assert!(same_populations(&first.momentum_marginal(), &rho.momentum_marginal()));
    }

    #[test]
    fn boosts_preserve_spectrum_and_trace(w in bell_weights(), v in spin1_weights(), omega in -PI..PI) {
        let rho = rho_bd(&w);
        let boosted = boost_spin_half(&rho, omega, SpinHalfAxes::Opposite).unwrap();
        let gap = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        prop_assert!(gap(&boosted.eigenvalues().unwrap(), &rho.eigenvalues().unwrap()) < 1e-10);
        prop_assert!((boosted.mat().trace().re - 1.0).abs() < 1e-10);
        prop_assert!(same_populations(&boosted.momentum_marginal(), &rho.momentum_marginal()));
        let shared = boost_spin_half(&rho, omega, SpinHalfAxes::Shared).unwrap();
        prop_assert!(shared.momentum_marginal().approx_eq(&rho.momentum_marginal(), 1e-12));
        let rho = rho_spin1(&v).unwrap();
        let boosted = boost_spin_one(&rho, omega).unwrap();
        prop_assert!(gap(&boosted.eigenvalues().unwrap(), &rho.eigenvalues().unwrap()) < 1e-10);
    }
}
