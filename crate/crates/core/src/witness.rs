//! Nonlinear entanglement witness construction.
//!
//! The pipeline runs `ρ → ρ̃ → Z → 𝒜 → W`:
//!
//! - `ρ̃ᵢⱼ = Tr(ρ · Oᵢ⊗Qⱼ)` is the moment matrix,
//! - `Z = ½(ρ̃†ρ̃)^{1/2}` and `𝒜 = -½ ρ̃ Z⁺`,
//! - `W = I⊗I + Σ 𝒜ᵢⱼ Oᵢ⊗Qⱼ`.
//!
//! With an orthonormal Hermitian basis `𝒜` is minus the polar factor of
//! `ρ̃`, so `Tr(Wρ) = 1 - ‖ρ̃‖₁` and `Tr(Wσ) ≥ 0` on every product state.
//! The closed-form traces for the Bell-diagonal and spin-1 families live
//! next to numeric oracles that evaluate the same quantity by full matrix
//! algebra.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matcore::{
    hermitian_eigen, kron, psd_sqrt, BipartiteDims, ComplexMatrix, RectMatrix, C64, I, ONE, ZERO,
};
use crate::states::{
    boost_spin_half, boost_spin_one, rho_bd, rho_spin1, BellWeights, DensityMatrix, SpinHalfAxes,
    SpinOneWeights,
};

pub const WITNESS_HERMITIAN_TOL: f64 = 1e-10;
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;
/// Singular values of `ρ̃` at or below this are treated as zero when
/// forming `Z⁺`.
pub const SINGULAR_CUTOFF: f64 = 1e-10;
/// Slightly negative radicands in closed forms are rounding noise down to
/// this level and are clamped to zero.
pub const RADICAND_CLAMP: f64 = 1e-12;

/// How the off-diagonal operators of the local bases are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BasisConvention {
    /// Off-diagonal Hermitian pairs: `(|a><b| + |b><a|)/√2` and
    /// `(-i|a><b| + i|b><a|)/√2`. Orthonormal in the Hilbert-Schmidt
    /// inner product.
    #[default]
    Hermitian,
    /// Literal combinations of the diagonal projectors, e.g.
    /// `O₃ = (O₁+O₂)/√2`, `O₄ = -i(O₁-O₂)/√2`, `Q₇ = i(Q₁-Q₂)/√2`.
    /// Diagonal, linearly dependent, and partly anti-Hermitian.
    Printed,
}

/// Local operator basis for one party: four operators on a qubit, nine on a
/// qutrit. The qutrit ordering is `{|1>, |0>, |-1>}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorBasis {
    party_dim: usize,
    ops: Vec<ComplexMatrix>,
    convention: BasisConvention,
}

fn unit(n: usize, a: usize, b: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    m[(a, b)] = ONE;
    m
}

fn sym(n: usize, a: usize, b: usize) -> ComplexMatrix {
    (&unit(n, a, b) + &unit(n, b, a)).scale_real(FRAC_1_SQRT_2)
}

fn asym(n: usize, a: usize, b: usize) -> ComplexMatrix {
    (&unit(n, a, b).scale(-I) + &unit(n, b, a).scale(I)).scale_real(FRAC_1_SQRT_2)
}

fn combo(a: &ComplexMatrix, b: &ComplexMatrix, sign: f64, phase: C64) -> ComplexMatrix {
    (a + &b.scale_real(sign)).scale(phase * FRAC_1_SQRT_2)
}

impl OperatorBasis {
    pub fn qubit(convention: BasisConvention) -> Self {
        let o1 = unit(2, 0, 0);
        let o2 = unit(2, 1, 1);
        let (o3, o4) = match convention {
            BasisConvention::Hermitian => (sym(2, 0, 1), asym(2, 0, 1)),
            BasisConvention::Printed => (combo(&o1, &o2, 1.0, ONE), combo(&o1, &o2, -1.0, -I)),
        };
        Self {
            party_dim: 2,
            ops: vec![o1, o2, o3, o4],
            convention,
        }
    }

    pub fn qutrit(convention: BasisConvention) -> Self {
        let q: Vec<ComplexMatrix> = (0..3).map(|k| unit(3, k, k)).collect();
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut ops = q.clone();
        match convention {
            BasisConvention::Hermitian => {
                ops.extend(pairs.iter().map(|&(a, b)| sym(3, a, b)));
                ops.extend(pairs.iter().map(|&(a, b)| asym(3, a, b)));
            }
            BasisConvention::Printed => {
                ops.extend(pairs.iter().map(|&(a, b)| combo(&q[a], &q[b], 1.0, ONE)));
                ops.extend(pairs.iter().map(|&(a, b)| combo(&q[a], &q[b], -1.0, I)));
            }
        }
        Self {
            party_dim: 3,
            ops,
            convention,
        }
    }

    pub fn for_dim(party_dim: usize, convention: BasisConvention) -> Result<Self> {
        match party_dim {
            2 => Ok(Self::qubit(convention)),
            3 => Ok(Self::qutrit(convention)),
            d => Err(Error::InvalidInput(format!(
                "no operator basis for local dimension {d}"
            ))),
        }
    }

    pub fn party_dim(&self) -> usize {
        self.party_dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn convention(&self) -> BasisConvention {
        self.convention
    }

    /// `Tr(Oᵢ† Oⱼ) = δᵢⱼ` within `tol`.
    pub fn is_orthonormal(&self, tol: f64) -> bool {
        self.ops.iter().enumerate().all(|(i, a)| {
            self.ops.iter().enumerate().all(|(j, b)| {
                let expected = if i == j { ONE } else { ZERO };
                (a.hs_inner(b) - expected).norm() <= tol
            })
        })
    }
}

/// The pair of local bases used for a state of the given dimensions.
pub fn bases_for(
    dims: BipartiteDims,
    convention: BasisConvention,
) -> Result<(OperatorBasis, OperatorBasis)> {
    Ok((
        OperatorBasis::for_dim(dims.da, convention)?,
        OperatorBasis::for_dim(dims.db, convention)?,
    ))
}

/// `ρ̃ᵢⱼ = Tr(ρ · Oᵢ⊗Qⱼ)`.
pub fn moment_matrix(
    rho: &DensityMatrix,
    a: &OperatorBasis,
    b: &OperatorBasis,
) -> Result<RectMatrix> {
    let dims = rho.dims();
    if dims.da != a.party_dim() || dims.db != b.party_dim() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            found: a.party_dim() * b.party_dim(),
        });
    }
    Ok(RectMatrix::from_fn(a.len(), b.len(), |i, j| {
        rho.mat().trace_product(&kron(&a.ops()[i], &b.ops()[j]))
    }))
}

/// Output of the `ρ̃ → Z → 𝒜` step.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSet {
    pub coeffs: RectMatrix,
    pub z: ComplexMatrix,
    /// Singular values of `ρ̃`, descending.
    pub singular_values: Vec<f64>,
    /// Number of singular values above [`SINGULAR_CUTOFF`].
    pub rank: usize,
    /// `rank < min(rows, cols)`; `Z⁺` was a genuine pseudo-inverse.
    pub rank_deficient: bool,
}

/// `Z = ½·(ρ̃†ρ̃)^{1/2}` and `𝒜 = -½ ρ̃ Z⁺`.
///
/// `ρ̃ Z⁺` is evaluated through the Hermitian embedding
/// `[[0, ρ̃], [ρ̃†, 0]]`, whose eigenpairs `(±σ, (u, ±v)/√2)` give the
/// singular triplets of `ρ̃` with absolute rather than squared accuracy.
/// On the retained spectrum `-½ ρ̃ Z⁺ = -Σ u v†`.
pub fn coefficients_from_moment(rho_tilde: &RectMatrix) -> Result<CoefficientSet> {
    let (m, n) = (rho_tilde.rows(), rho_tilde.cols());
    let eig = hermitian_eigen(&rho_tilde.hermitian_embedding())?;
    let mut coeffs = RectMatrix::zeros(m, n);
    let mut singular_values = Vec::new();
    for k in (0..m + n).rev() {
        let sigma = eig.values[k];
        if sigma <= SINGULAR_CUTOFF {
            break;
        }
        singular_values.push(sigma);
        let vec = eig.vector(k);
        for i in 0..m {
            for j in 0..n {
                let prev = coeffs.get(i, j);
                coeffs.set(i, j, prev - 2.0 * vec[i] * vec[m + j].conj());
            }
        }
    }
    let rank = singular_values.len();
    singular_values.resize(m.min(n), 0.0);
    let z = psd_sqrt(&rho_tilde.gram())?.scale_real(0.5);
    Ok(CoefficientSet {
        coeffs,
        z,
        singular_values,
        rank,
        rank_deficient: rank < m.min(n),
    })
}

/// `W = I⊗I + Σ 𝒜ᵢⱼ Oᵢ⊗Qⱼ` together with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessOperator {
    mat: ComplexMatrix,
    coeffs: RectMatrix,
    bases: (OperatorBasis, OperatorBasis),
}

impl WitnessOperator {
    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn coeffs(&self) -> &RectMatrix {
        &self.coeffs
    }

    pub fn bases(&self) -> (&OperatorBasis, &OperatorBasis) {
        (&self.bases.0, &self.bases.1)
    }

    pub fn dims(&self) -> BipartiteDims {
        BipartiteDims {
            da: self.bases.0.party_dim(),
            db: self.bases.1.party_dim(),
        }
    }
}

pub fn assemble_witness(
    coeffs: &RectMatrix,
    a: &OperatorBasis,
    b: &OperatorBasis,
) -> Result<WitnessOperator> {
    if coeffs.rows() != a.len() || coeffs.cols() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len() * b.len(),
            found: coeffs.rows() * coeffs.cols(),
        });
    }
    let n = a.party_dim() * b.party_dim();
    let mut mat = ComplexMatrix::identity(n);
    for i in 0..a.len() {
        for j in 0..b.len() {
            let c = coeffs.get(i, j);
            if c != ZERO {
                mat = &mat + &kron(&a.ops()[i], &b.ops()[j]).scale(c);
            }
        }
    }
    let deviation = mat.hermitian_deviation();
    if deviation > WITNESS_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(WitnessOperator {
        mat,
        coeffs: coeffs.clone(),
        bases: (a.clone(), b.clone()),
    })
}

/// Full pipeline: moment matrix, coefficients, assembly.
pub fn build_witness(rho: &DensityMatrix, convention: BasisConvention) -> Result<WitnessOperator> {
    let (a, b) = bases_for(rho.dims(), convention)?;
    let rho_tilde = moment_matrix(rho, &a, &b)?;
    let set = coefficients_from_moment(&rho_tilde)?;
    assemble_witness(&set.coeffs, &a, &b)
}

/// Re-expand a matrix in an orthonormal product basis:
/// `𝒜ᵢⱼ = Tr((W - I) · Oᵢ⊗Qⱼ)`.
pub fn coefficients_of(
    w: &ComplexMatrix,
    a: &OperatorBasis,
    b: &OperatorBasis,
) -> Result<RectMatrix> {
    let n = a.party_dim() * b.party_dim();
    if w.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.dim(),
        });
    }
    if !a.is_orthonormal(1e-12) || !b.is_orthonormal(1e-12) {
        return Err(Error::InvalidInput(
            "re-expansion needs orthonormal bases".into(),
        ));
    }
    let shifted = w - &ComplexMatrix::identity(n);
    Ok(RectMatrix::from_fn(a.len(), b.len(), |i, j| {
        kron(&a.ops()[i], &b.ops()[j])
            .adjoint()
            .trace_product(&shifted)
    }))
}

/// `Tr(W·ρ)`, rejecting a material imaginary part.
pub fn expectation(w: &WitnessOperator, rho: &DensityMatrix) -> Result<f64> {
    expectation_of(w.mat(), rho)
}

pub fn expectation_of(w: &ComplexMatrix, rho: &DensityMatrix) -> Result<f64> {
    if w.dim() != rho.mat().dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.mat().dim(),
            found: w.dim(),
        });
    }
    let t = w.trace_product(rho.mat());
    if t.im.abs() > EXPECTATION_IMAG_TOL {
        return Err(Error::ImaginaryResidue(t.im));
    }
    Ok(t.re)
}

/// `sgn` with `sgn(0) = +1`.
fn sgn(v: f64) -> f64 {
    if v >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn checked_sqrt(value: f64, context: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value.sqrt())
    } else if value >= -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand { context, value })
    }
}

/// Closed-form Bell-diagonal coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BellCoefficients {
    pub coeffs: RectMatrix,
    /// Some signed sum vanished and `sgn(0) = +1` was used.
    pub degenerate: bool,
}

/// Bell-diagonal coefficients in closed form:
/// `𝒜₁₁=𝒜₂₂=½(-s(a)-1)`, `𝒜₁₂=𝒜₂₁=½(s(a)-1)`, `𝒜₃₃=-s(b)`, `𝒜₄₄=s(c)`.
pub fn bd_coefficients(w: &BellWeights) -> BellCoefficients {
    let (a, b, c) = w.signed_sums();
    let degenerate = [a, b, c].iter().any(|v| v.abs() < 1e-15);
    let mut m = RectMatrix::zeros(4, 4);
    let diag = 0.5 * (-sgn(a) - 1.0);
    let off = 0.5 * (sgn(a) - 1.0);
    m.set(0, 0, C64::new(diag, 0.0));
    m.set(1, 1, C64::new(diag, 0.0));
    m.set(0, 1, C64::new(off, 0.0));
    m.set(1, 0, C64::new(off, 0.0));
    m.set(2, 2, C64::new(-sgn(b), 0.0));
    m.set(3, 3, C64::new(sgn(c), 0.0));
    BellCoefficients {
        coeffs: m,
        degenerate,
    }
}

/// The Bell-diagonal witness assembled from [`bd_coefficients`].
pub fn bd_witness(w: &BellWeights, convention: BasisConvention) -> Result<WitnessOperator> {
    let q = OperatorBasis::qubit(convention);
    assemble_witness(&bd_coefficients(w).coeffs, &q, &q)
}

/// `½{1 - |P₁+P₂-P₃-P₄| - |P₁-P₂+P₃-P₄| - |P₁-P₂-P₃+P₄|}`.
pub fn trace_bd_rest(w: &BellWeights) -> f64 {
    let (a, b, c) = w.signed_sums();
    0.5 * (1.0 - a.abs() - b.abs() - c.abs())
}

fn boosted_bd_closed_form(w: &BellWeights, omega: f64, reconciled: bool) -> Result<f64> {
    let [p1, p2, p3, p4] = w.as_array();
    let (a, _, c) = w.signed_sums();
    let (co, so) = (omega.cos(), omega.sin());
    let big_a = 1.0 - 0.5 * (a.abs() + c.abs()) * co;
    let big_b = 8.0 * (p1 * p3 + p2 * p4) * co * co
        - 2.0 * (p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4) * (-3.0 + (2.0 * omega).cos());
    let (second, quartic) = if reconciled {
        ((p2 * p2 - p4 * p4).powi(2), so.powi(4))
    } else {
        ((p2 * p2 + p4 * p4).powi(2), (2.0 * omega).sin().powi(4))
    };
    let big_c = 4.0 * (p1 + p3).powi(2) * (p2 + p4).powi(2)
        + 4.0 * ((p1 * p1 - p3 * p3).powi(2) + second) * so * so
        + 4.0 * (p1 - p3).powi(2) * (p2 - p4).powi(2) * quartic;
    let root_c = checked_sqrt(big_c, "C")?;
    let minus = checked_sqrt(big_b - 4.0 * root_c, "B - 4√C")?;
    let plus = checked_sqrt(big_b + 4.0 * root_c, "B + 4√C")?;
    Ok(big_a - 0.25 * (minus + plus))
}

/// Boosted Bell-diagonal trace `A - ¼(√(B-4√C) + √(B+4√C))` exactly as
/// printed, with `(P₂²+P₄²)²` and `sin⁴2Ω` in `C`.
pub fn trace_bd_boosted(w: &BellWeights, omega: f64) -> Result<f64> {
    boosted_bd_closed_form(w, omega, false)
}

/// The same expression with `(P₂²-P₄²)²` and `sin⁴Ω` in `C`. Agrees with
/// [`trace_bd_boosted_oracle`] for `Ω ∈ [0, π/2]`.
pub fn trace_bd_boosted_reconciled(w: &BellWeights, omega: f64) -> Result<f64> {
    boosted_bd_closed_form(w, omega, true)
}

/// `Tr(W^Λ ρ^Λ)` with `W^Λ` rebuilt from the boosted state.
pub fn trace_bd_boosted_oracle(w: &BellWeights, omega: f64, axes: SpinHalfAxes) -> Result<f64> {
    let boosted = boost_spin_half(&rho_bd(w), omega, axes)?;
    expectation(
        &build_witness(&boosted, BasisConvention::Hermitian)?,
        &boosted,
    )
}

/// Spin-1 coefficients in closed form, `4 x 9`, zero-based storage of the
/// one-based labels `𝒜₁₁=𝒜₂₃`, `𝒜₁₂=𝒜₂₂`, `𝒜₁₃=𝒜₂₁`, `𝒜₃₅=𝒜₄₈=-1`.
pub fn spin1_coeffs(w: &SpinOneWeights) -> RectMatrix {
    let s = w.x + w.y;
    let root = (2.0 + s * s).sqrt();
    let sqrt3 = 3f64.sqrt();
    let a11 = (-2.0 * sqrt3 - ((3.0 * s * s).sqrt() - 3.0 * root)) / (6.0 * root);
    let a12 = (-1.0 + s) / (6.0 + 3.0 * s * s).sqrt();
    let a13 = (-2.0 * sqrt3 - ((3.0 * s * s).sqrt() + 3.0 * root)) / (6.0 * root);
    let mut m = RectMatrix::zeros(4, 9);
    let mut put = |i: usize, j: usize, v: f64| m.set(i, j, C64::new(v, 0.0));
    put(0, 0, a11);
    put(1, 2, a11);
    put(0, 1, a12);
    put(1, 1, a12);
    put(0, 2, a13);
    put(1, 0, a13);
    put(2, 4, -1.0);
    put(3, 7, -1.0);
    m
}

/// The spin-1 witness assembled from [`spin1_coeffs`].
pub fn spin1_witness(w: &SpinOneWeights, convention: BasisConvention) -> Result<WitnessOperator> {
    assemble_witness(
        &spin1_coeffs(w),
        &OperatorBasis::qubit(convention),
        &OperatorBasis::qutrit(convention),
    )
}

/// `⅙{6 - 6|x-y| - 3|x+y| - √(6+3(x+y)²)}`.
pub fn trace_spin1_rest(w: &SpinOneWeights) -> f64 {
    let (x, y) = (w.x, w.y);
    (6.0 - 6.0 * (x - y).abs() - 3.0 * (x + y).abs() - (6.0 + 3.0 * (x + y).powi(2)).sqrt()) / 6.0
}

/// `1 - (√3/4){|x-y| + |x+y| + √(B-2√A) + √(B+2√A)}` with the printed
/// polynomials `A` and `B`.
pub fn trace_spin1_boosted_printed(w: &SpinOneWeights) -> Result<f64> {
    let (x, y) = (w.x, w.y);
    let big_b = 4.0 + 11.0 * x * x - 8.0 * x * y + 11.0 * y * y;
    let big_a = 4.0 + 4.0 * x * x * (1.0 + x) * (5.0 * x - 1.0)
        - 4.0 * x * y * (4.0 * x + 11.0 * x * x - 9.0)
        + y * y * (97.0 * x * x - 16.0 * x - 4.0)
        + 4.0 * (4.0 - 11.0 * x) * y.powi(3)
        + 20.0 * y.powi(4);
    let root_a = checked_sqrt(big_a, "A")?;
    let minus = checked_sqrt(big_b - 2.0 * root_a, "B - 2√A")?;
    let plus = checked_sqrt(big_b + 2.0 * root_a, "B + 2√A")?;
    Ok(1.0 - 3f64.sqrt() / 4.0 * ((x - y).abs() + (x + y).abs() + minus + plus))
}

/// Which state the boosted spin-1 witness is built from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WitnessFrame {
    /// Keep the witness of the unboosted state.
    Rest,
    /// Rebuild the witness from `ρ^Λ`.
    #[default]
    Boosted,
}

/// `Tr(W·ρ₁^Λ)` by full matrix algebra at boost angle `θ`.
pub fn trace_spin1_boosted_oracle(
    w: &SpinOneWeights,
    theta: f64,
    frame: WitnessFrame,
) -> Result<f64> {
    let rest = rho_spin1(w)?;
    let boosted = boost_spin_one(&rest, theta)?;
    let source = match frame {
        WitnessFrame::Rest => &rest,
        WitnessFrame::Boosted => &boosted,
    };
    expectation(
        &build_witness(source, BasisConvention::Hermitian)?,
        &boosted,
    )
}

/// Printed closed form next to the numeric value at `θ = π/4`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoostedSpinOneTrace {
    pub printed: Result<f64>,
    pub oracle: f64,
}

pub fn trace_spin1_boosted(w: &SpinOneWeights, frame: WitnessFrame) -> Result<BoostedSpinOneTrace> {
    Ok(BoostedSpinOneTrace {
        printed: trace_spin1_boosted_printed(w),
        oracle: trace_spin1_boosted_oracle(w, PI / 4.0, frame)?,
    })
}

/// `-½ cos θ √(6 - 2 cos 2θ)`, the boosted trace of the pure state
/// `x=0, y=1`.
pub fn trace_pure_theta(theta: f64) -> f64 {
    -0.5 * theta.cos() * (6.0 - 2.0 * (2.0 * theta).cos()).sqrt()
}

/// Settings for [`min_over_separable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparableSearch {
    pub samples: usize,
    pub refine_steps: usize,
    /// Number of best samples handed to the refinement stage.
    pub refine_candidates: usize,
    pub seed: u64,
}

impl Default for SeparableSearch {
    fn default() -> Self {
        Self {
            samples: 10_000,
            refine_steps: 60,
            refine_candidates: 16,
            seed: 0,
        }
    }
}

/// Best product state found.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductMinimum {
    pub value: f64,
    pub ket_a: Vec<C64>,
    pub ket_b: Vec<C64>,
    pub evaluations: usize,
}

/// Point in the unit cube mapped to a product of pure states. Even
/// coordinates are polar angles (clamped), odd ones phases (wrapped).
struct ProductChart {
    da: usize,
    db: usize,
}

impl ProductChart {
    fn coords_for(d: usize) -> usize {
        2 * (d - 1)
    }

    fn dim(&self) -> usize {
        Self::coords_for(self.da) + Self::coords_for(self.db)
    }

    fn is_phase(&self, k: usize) -> bool {
        let local = if k < Self::coords_for(self.da) {
            k
        } else {
            k - Self::coords_for(self.da)
        };
        local % 2 == 1
    }

    fn ket(d: usize, u: &[f64]) -> Vec<C64> {
        match d {
            2 => {
                let chi = PI * u[0];
                let phi = 2.0 * PI * u[1];
                vec![
                    C64::new((chi / 2.0).cos(), 0.0),
                    C64::from_polar((chi / 2.0).sin(), phi),
                ]
            }
            3 => {
                let (c1, c2) = (0.5 * PI * u[0], 0.5 * PI * u[2]);
                let (p1, p2) = (2.0 * PI * u[1], 2.0 * PI * u[3]);
                vec![
                    C64::new(c1.cos(), 0.0),
                    C64::from_polar(c1.sin() * c2.cos(), p1),
                    C64::from_polar(c1.sin() * c2.sin(), p2),
                ]
            }
            _ => unreachable!("dims validated before charting"),
        }
    }

    fn kets(&self, u: &[f64]) -> (Vec<C64>, Vec<C64>) {
        let split = Self::coords_for(self.da);
        (
            Self::ket(self.da, &u[..split]),
            Self::ket(self.db, &u[split..]),
        )
    }

    fn normalise(&self, u: &mut [f64]) {
        for (k, c) in u.iter_mut().enumerate() {
            *c = if self.is_phase(k) {
                c.rem_euclid(1.0)
            } else {
                c.clamp(0.0, 1.0)
            };
        }
    }
}

fn product_value(w: &ComplexMatrix, a: &[C64], b: &[C64]) -> f64 {
    let da = a.len();
    let db = b.len();
    let mut v = vec![ZERO; da * db];
    for i in 0..da {
        for k in 0..db {
            v[i * db + k] = a[i] * b[k];
        }
    }
    w.quadratic_form(&v).re
}

/// Generalised golden-ratio increments for a `d`-dimensional additive
/// recurrence sequence.
fn r_sequence_alphas(d: usize) -> Vec<f64> {
    let mut phi = 2.0f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d).map(|k| phi.powi(-(k as i32)).fract()).collect()
}

/// Minimum of `<a⊗b|W|a⊗b>` over pure product states.
///
/// A randomly shifted low-discrepancy sample of the chart is evaluated,
/// then the best `refine_candidates` points are polished by coordinate
/// descent with steps halving from `0.25`. Deterministic for a fixed seed.
pub fn min_over_separable(
    w: &ComplexMatrix,
    dims: BipartiteDims,
    search: &SeparableSearch,
) -> Result<ProductMinimum> {
    if w.dim() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            found: w.dim(),
        });
    }
    if !(2..=3).contains(&dims.da) || !(2..=3).contains(&dims.db) {
        return Err(Error::InvalidInput(
            "product search supports local dimensions 2 and 3".into(),
        ));
    }
    if search.samples == 0 {
        return Err(Error::InvalidInput(
            "at least one sample is required".into(),
        ));
    }
    let deviation = w.hermitian_deviation();
    if deviation > WITNESS_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let chart = ProductChart {
        da: dims.da,
        db: dims.db,
    };
    let d = chart.dim();
    let alphas = r_sequence_alphas(d);
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let shift: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();

    let eval = |u: &[f64]| {
        let (a, b) = chart.kets(u);
        product_value(w, &a, &b)
    };
    let mut evaluations = 0usize;
    let mut scored: Vec<(f64, usize, Vec<f64>)> = (0..search.samples)
        .map(|n| {
            let u: Vec<f64> = (0..d)
                .map(|k| (shift[k] + (n as f64 + 1.0) * alphas[k]).fract())
                .collect();
            (eval(&u), n, u)
        })
        .collect();
    evaluations += scored.len();
    scored.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    scored.truncate(search.refine_candidates.max(1));

    let mut best: Option<(f64, Vec<f64>)> = None;
    for (mut value, _, mut u) in scored {
        let mut step = 0.25;
        for _ in 0..search.refine_steps {
            let mut improved = false;
            for k in 0..d {
                for dir in [1.0, -1.0] {
                    let mut trial = u.clone();
                    trial[k] += dir * step;
                    chart.normalise(&mut trial);
                    let v = eval(&trial);
                    evaluations += 1;
                    if v < value {
                        value = v;
                        u = trial;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, u));
        }
    }
    let (value, u) = best.expect("at least one candidate");
    let (ket_a, ket_b) = chart.kets(&u);
    Ok(ProductMinimum {
        value,
        ket_a,
        ket_b,
        evaluations,
    })
}
