//! Spin-momentum state families and their Lorentz-boosted images.
//!
//! Momentum is always the first tensor factor. Basis orders:
//!
//! - spin-1/2: `{|p1,0>, |p1,1>, |p2,0>, |p2,1>}`
//! - spin-1:   `{|p1,1>, |p1,0>, |p1,-1>, |p2,1>, |p2,0>, |p2,-1>}`

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::kinematics::{d_half_about, d_one};
use crate::matcore::{
    hermitian_eigenvalues, kron, partial_trace_b, BipartiteDims, ComplexMatrix, C64, ZERO,
};

pub const STATE_HERMITIAN_TOL: f64 = 1e-12;
pub const STATE_TRACE_TOL: f64 = 1e-12;
pub const STATE_PSD_TOL: f64 = 1e-10;
pub const WEIGHT_TOL: f64 = 1e-12;

/// Hermitian, unit-trace, PSD matrix on a bipartite space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: BipartiteDims,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: BipartiteDims) -> Result<Self> {
        if mat.dim() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                found: mat.dim(),
            });
        }
        let deviation = mat.hermitian_deviation();
        if deviation > STATE_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TRACE_TOL || tr.im.abs() > STATE_TRACE_TOL {
            return Err(Error::InvalidInput(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let lowest = hermitian_eigenvalues(&mat)?[0];
        if lowest < -STATE_PSD_TOL {
            return Err(Error::NegativeEigenvalue { value: lowest });
        }
        Ok(Self { mat, dims })
    }

    /// `|ψ><ψ|` for a ket normalised within tolerance.
    pub fn pure(ket: &[C64], dims: BipartiteDims) -> Result<Self> {
        Self::new(ComplexMatrix::outer(ket), dims)
    }

    pub fn maximally_mixed(dims: BipartiteDims) -> Self {
        let n = dims.total();
        Self {
            mat: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            dims,
        }
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.mat)
    }

    /// `U ρ U†`, revalidated.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.mat.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.mat.dim(),
                found: u.dim(),
            });
        }
        Self::new(self.mat.conjugate_by(u), self.dims)
    }

    /// Reduced state of the momentum factor.
    pub fn momentum_marginal(&self) -> ComplexMatrix {
        partial_trace_b(&self.mat, self.dims).expect("dims validated at construction")
    }

    fn expect_dims(&self, dims: BipartiteDims) -> Result<()> {
        if self.dims != dims {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                found: self.dims.total(),
            });
        }
        Ok(())
    }
}

/// Mixing weights `P1..P4` of the four Bell projectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellWeights {
    p: [f64; 4],
}

impl BellWeights {
    pub fn new(p1: f64, p2: f64, p3: f64, p4: f64) -> Result<Self> {
        let p = [p1, p2, p3, p4];
        if let Some(bad) = p
            .iter()
            .find(|v| !(-WEIGHT_TOL..=1.0 + WEIGHT_TOL).contains(*v))
        {
            return Err(Error::InvalidWeights(format!(
                "Bell weight {bad} outside [0, 1]"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidWeights(format!(
                "Bell weights sum to {sum}, expected 1"
            )));
        }
        Ok(Self { p })
    }

    pub fn from_array(p: [f64; 4]) -> Result<Self> {
        Self::new(p[0], p[1], p[2], p[3])
    }

    pub fn uniform() -> Self {
        Self { p: [0.25; 4] }
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.p
    }

    pub fn max(&self) -> f64 {
        self.p.iter().copied().fold(f64::MIN, f64::max)
    }

    /// `(P1+P2-P3-P4, P1-P2+P3-P4, P1-P2-P3+P4)`.
    pub fn signed_sums(&self) -> (f64, f64, f64) {
        let [p1, p2, p3, p4] = self.p;
        (p1 + p2 - p3 - p4, p1 - p2 + p3 - p4, p1 - p2 - p3 + p4)
    }
}

/// Mixing parameters of the spin-1 family
/// `x|ψ5><ψ5| + y|ψ6><ψ6| + (1-x-y)/6 · I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinOneWeights {
    pub x: f64,
    pub y: f64,
}

impl SpinOneWeights {
    /// Validates physicality: `1-x-y`, `1+5x-y` and `1-x+5y` all nonnegative.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let w = Self { x, y };
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidWeights(
                "spin-1 weights must be finite".into(),
            ));
        }
        if !w.is_physical() {
            return Err(Error::InvalidWeights(format!(
                "(x, y) = ({x}, {y}) is outside the physical triangle"
            )));
        }
        Ok(w)
    }

    /// No validation; for evaluating closed forms outside the triangle.
    pub fn raw(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_physical(&self) -> bool {
        let (x, y) = (self.x, self.y);
        1.0 - x - y >= -WEIGHT_TOL
            && 1.0 + 5.0 * x - y >= -WEIGHT_TOL
            && 1.0 - x + 5.0 * y >= -WEIGHT_TOL
    }
}

fn r(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// The four Bell states in `{|p1,0>, |p1,1>, |p2,0>, |p2,1>}`.
pub fn bell_states() -> [[C64; 4]; 4] {
    let s = r(FRAC_1_SQRT_2);
    [
        [s, ZERO, ZERO, s],
        [s, ZERO, ZERO, -s],
        [ZERO, s, s, ZERO],
        [ZERO, -s, s, ZERO],
    ]
}

/// `Σ P_i |ψ_i><ψ_i|`.
pub fn rho_bd(w: &BellWeights) -> DensityMatrix {
    let mut mat = ComplexMatrix::zeros(4);
    for (p, psi) in w.as_array().iter().zip(bell_states().iter()) {
        mat = &mat + &ComplexMatrix::outer(psi).scale_real(*p);
    }
    DensityMatrix {
        mat,
        dims: BipartiteDims::QUBIT_QUBIT,
    }
}

/// `|ψ5> = (|p1,-1> + |p2,1>)/√2`.
pub fn psi5() -> [C64; 6] {
    let s = r(FRAC_1_SQRT_2);
    [ZERO, ZERO, s, s, ZERO, ZERO]
}

/// `|ψ6> = (|p1,-1> - |p2,1>)/√2`.
pub fn psi6() -> [C64; 6] {
    let s = r(FRAC_1_SQRT_2);
    [ZERO, ZERO, s, -s, ZERO, ZERO]
}

pub fn rho_spin1(w: &SpinOneWeights) -> Result<DensityMatrix> {
    if !w.is_physical() {
        return Err(Error::InvalidWeights(format!(
            "(x, y) = ({}, {}) is outside the physical triangle",
            w.x, w.y
        )));
    }
    Ok(DensityMatrix {
        mat: rho_spin1_matrix(w.x, w.y),
        dims: BipartiteDims::QUBIT_QUTRIT,
    })
}

/// The spin-1 family as a bare matrix, for any `(x, y)`. Affine in both.
pub fn rho_spin1_matrix(x: f64, y: f64) -> ComplexMatrix {
    let p5 = ComplexMatrix::outer(&psi5()).scale_real(x);
    let p6 = ComplexMatrix::outer(&psi6()).scale_real(y);
    let mixed = ComplexMatrix::identity(6).scale_real((1.0 - x - y) / 6.0);
    &(&p5 + &p6) + &mixed
}

/// Orientation of the spin-1/2 Wigner rotation axes on the two momentum
/// branches. Both branches share the angle `Ω`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SpinHalfAxes {
    /// `n̂ = ê × p̂` with `p̂₂ = -p̂₁`: `+ŷ` on `p1`, `-ŷ` on `p2`.
    #[default]
    Opposite,
    /// `+ŷ` on both branches; the boost is then a local unitary on spin.
    Shared,
}

const Y_AXIS: [f64; 3] = [0.0, 1.0, 0.0];
const NEG_Y_AXIS: [f64; 3] = [0.0, -1.0, 0.0];

fn momentum_projector(branch: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(branch, branch)] = r(1.0);
    m
}

/// `Σ_i |p_i><p_i| ⊗ D^{1/2}(Ω, n̂_i)`.
pub fn spin_half_boost_unitary(omega: f64, axes: SpinHalfAxes) -> ComplexMatrix {
    let second = match axes {
        SpinHalfAxes::Opposite => NEG_Y_AXIS,
        SpinHalfAxes::Shared => Y_AXIS,
    };
    &kron(&momentum_projector(0), &d_half_about(omega, Y_AXIS))
        + &kron(&momentum_projector(1), &d_half_about(omega, second))
}

pub fn boost_spin_half(
    rho: &DensityMatrix,
    omega: f64,
    axes: SpinHalfAxes,
) -> Result<DensityMatrix> {
    rho.expect_dims(BipartiteDims::QUBIT_QUBIT)?;
    rho.conjugate_by(&spin_half_boost_unitary(omega, axes))
}

/// `|p1><p1| ⊗ d1(θ) + |p2><p2| ⊗ d1(-θ)`.
pub fn spin_one_boost_unitary(theta: f64) -> ComplexMatrix {
    &kron(&momentum_projector(0), &d_one(theta)) + &kron(&momentum_projector(1), &d_one(-theta))
}

pub fn boost_spin_one(rho: &DensityMatrix, theta: f64) -> Result<DensityMatrix> {
    rho.expect_dims(BipartiteDims::QUBIT_QUTRIT)?;
    rho.conjugate_by(&spin_one_boost_unitary(theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inner(a: &[C64], b: &[C64]) -> C64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    #[test]
    fn bell_states_orthonormal() {
        let b = bell_states();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((inner(&b[i], &b[j]) - r(expected)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn uniform_bell_mixture_is_maximally_mixed() {
        let rho = rho_bd(&BellWeights::uniform());
        assert!(rho
            .mat()
            .approx_eq(&ComplexMatrix::identity(4).scale_real(0.25), 1e-15));
    }

    #[test]
    fn pure_bell_weight_gives_projector() {
        let rho = rho_bd(&BellWeights::new(1.0, 0.0, 0.0, 0.0).unwrap());
        assert!(rho
            .mat()
            .approx_eq(&ComplexMatrix::outer(&bell_states()[0]), 1e-15));
    }

    #[test]
    fn bell_mixture_spectrum_is_the_weights() {
        let w = BellWeights::new(2.0 / 3.0, 0.0, 1.0 / 8.0, 5.0 / 24.0).unwrap();
        let ev = rho_bd(&w).eigenvalues().unwrap();
        let expected = [0.0, 1.0 / 8.0, 5.0 / 24.0, 2.0 / 3.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn weight_validation() {
        assert!(BellWeights::new(0.5, 0.5, 0.5, -0.5).is_err());
        assert!(BellWeights::new(0.5, 0.2, 0.2, 0.2).is_err());
        assert!(SpinOneWeights::new(0.7, 0.7).is_err());
        assert!(SpinOneWeights::new(-0.3, 0.0).is_err());
        assert!(SpinOneWeights::new(-0.25, -0.25).is_ok());
        assert!(rho_spin1(&SpinOneWeights::raw(1.0, 1.0)).is_err());
    }

    #[test]
    fn spin1_endpoints() {
        let rho = rho_spin1(&SpinOneWeights::new(0.0, 0.0).unwrap()).unwrap();
        assert!(rho
            .mat()
            .approx_eq(&ComplexMatrix::identity(6).scale_real(1.0 / 6.0), 1e-15));
        let rho = rho_spin1(&SpinOneWeights::new(0.0, 1.0).unwrap()).unwrap();
        assert!(rho.mat().approx_eq(&ComplexMatrix::outer(&psi6()), 1e-15));
        let ev = rho_spin1(&SpinOneWeights::new(0.5, 0.5).unwrap())
            .unwrap()
            .eigenvalues()
            .unwrap();
        let expected = [0.0, 0.0, 0.0, 0.0, 0.5, 0.5];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_angle_boosts_are_identity() {
        let rho = rho_bd(&BellWeights::new(0.4, 0.3, 0.2, 0.1).unwrap());
        for axes in [SpinHalfAxes::Opposite, SpinHalfAxes::Shared] {
            assert!(boost_spin_half(&rho, 0.0, axes)
                .unwrap()
                .mat()
                .approx_eq(rho.mat(), 1e-15));
        }
        let rho = rho_spin1(&SpinOneWeights::new(0.2, 0.3).unwrap()).unwrap();
        assert!(boost_spin_one(&rho, 0.0)
            .unwrap()
            .mat()
            .approx_eq(rho.mat(), 1e-15));
    }

    #[test]
    fn boosts_check_dims() {
        let rho = rho_bd(&BellWeights::uniform());
        assert!(boost_spin_one(&rho, 0.3).is_err());
        let rho = rho_spin1(&SpinOneWeights::new(0.2, 0.3).unwrap()).unwrap();
        assert!(boost_spin_half(&rho, 0.3, SpinHalfAxes::Opposite).is_err());
    }

    #[test]
    fn density_validation() {
        let d = BipartiteDims::QUBIT_QUBIT;
        assert!(DensityMatrix::new(ComplexMatrix::identity(4), d).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag_real(&[1.5, -0.5, 0.0, 0.0]), d).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::identity(6).scale_real(1.0 / 6.0), d).is_err());
    }
}
