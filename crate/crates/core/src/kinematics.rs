//! Relativistic kinematics: Wigner angles and the finite-dimensional
//! Wigner rotation matrices for spin-1/2 and spin-1.
//!
//! Natural units (`c = 1`) throughout; `beta` carries the observer velocity.

use crate::error::{Error, Result};
use crate::matcore::{sigma_x, sigma_y, sigma_z, ComplexMatrix, C64, I};

pub type Vec3 = [f64; 3];

/// Contravariant four-vector `(t, x, y, z)`.
pub type FourVector = [f64; 4];

const UNIT_TOL: f64 = 1e-12;

pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

/// Minkowski product with signature `(+,-,-,-)`.
pub fn minkowski_dot(a: FourVector, b: FourVector) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

fn check_unit(v: Vec3, name: &str) -> Result<()> {
    if !v.iter().all(|c| c.is_finite()) || (norm3(v) - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidInput(format!(
            "{name} must be a unit vector, got {v:?}"
        )));
    }
    Ok(())
}

/// Observer boost plus particle kinematics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostContext {
    pub beta: f64,
    pub mass: f64,
    pub momentum_mag: f64,
    /// Boost direction.
    pub e_hat: Vec3,
    /// Particle momentum direction.
    pub p_hat: Vec3,
}

impl BoostContext {
    pub fn new(beta: f64, mass: f64, momentum_mag: f64, e_hat: Vec3, p_hat: Vec3) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidInput(format!(
                "beta must lie in [0, 1), got {beta}"
            )));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "mass must be positive, got {mass}"
            )));
        }
        if !(momentum_mag >= 0.0 && momentum_mag.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "momentum magnitude must be nonnegative, got {momentum_mag}"
            )));
        }
        check_unit(e_hat, "e_hat")?;
        check_unit(p_hat, "p_hat")?;
        Ok(Self {
            beta,
            mass,
            momentum_mag,
            e_hat,
            p_hat,
        })
    }

    /// Parametrise the particle by `E/m` instead of `|p|`.
    pub fn from_energy_ratio(
        beta: f64,
        mass: f64,
        energy_over_mass: f64,
        e_hat: Vec3,
        p_hat: Vec3,
    ) -> Result<Self> {
        if energy_over_mass.is_nan() || energy_over_mass < 1.0 {
            return Err(Error::InvalidInput(format!(
                "E/m must be >= 1, got {energy_over_mass}"
            )));
        }
        let p = mass * (energy_over_mass * energy_over_mass - 1.0).sqrt();
        Self::new(beta, mass, p, e_hat, p_hat)
    }

    /// `cosh(alpha) = 1/sqrt(1-beta^2)`.
    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.beta * self.beta).sqrt()
    }

    pub fn energy(&self) -> f64 {
        (self.momentum_mag * self.momentum_mag + self.mass * self.mass).sqrt()
    }

    /// `cosh(delta) = E/m`.
    pub fn energy_ratio(&self) -> f64 {
        self.energy() / self.mass
    }

    pub fn boost_rapidity(&self) -> f64 {
        self.beta.atanh()
    }

    pub fn particle_rapidity(&self) -> f64 {
        (self.momentum_mag / self.mass).asinh()
    }

    pub fn four_momentum(&self) -> FourVector {
        let p = self.momentum_mag;
        [
            self.energy(),
            p * self.p_hat[0],
            p * self.p_hat[1],
            p * self.p_hat[2],
        ]
    }
}

/// Rotation by `omega` about `n_hat`. When the rotation is trivial the
/// axis is undefined and stored as the zero vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerRotation {
    pub omega: f64,
    pub n_hat: Vec3,
    pub axis_defined: bool,
}

impl WignerRotation {
    pub fn identity() -> Self {
        Self {
            omega: 0.0,
            n_hat: [0.0; 3],
            axis_defined: false,
        }
    }

    pub fn about(omega: f64, axis: Vec3) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::InvalidInput("rotation angle must be finite".into()));
        }
        check_unit(axis, "rotation axis")?;
        Ok(Self {
            omega,
            n_hat: axis,
            axis_defined: true,
        })
    }

    pub fn cos_half(&self) -> f64 {
        (0.5 * self.omega).cos()
    }

    pub fn sin_half(&self) -> f64 {
        (0.5 * self.omega).sin()
    }
}

/// Wigner angle and axis from the closed-form half-angle quotients.
///
/// With `alpha` the observer rapidity and `delta` the particle rapidity:
///
/// ```text
/// cos(Ω/2)   = [ch(α/2)ch(δ/2) + sh(α/2)sh(δ/2)(ê·p̂)] / N
/// sin(Ω/2)n̂ = sh(α/2)sh(δ/2)(ê×p̂) / N
/// N = sqrt(½ + ½ch(α)ch(δ) + ½sh(α)sh(δ)(ê·p̂))
/// ```
pub fn wigner_angle(ctx: &BoostContext) -> Result<WignerRotation> {
    let (cos_half, sin_vec) = half_angle_quotients(ctx)?;
    let sin_half = norm3(sin_vec);

    let omega = 2.0 * sin_half.atan2(cos_half);
    if sin_half > 0.0 {
        Ok(WignerRotation {
            omega,
            n_hat: sin_vec.map(|c| c / sin_half),
            axis_defined: true,
        })
    } else {
        Ok(WignerRotation {
            omega,
            n_hat: [0.0; 3],
            axis_defined: false,
        })
    }
}

/// The raw quotients `(cos(Ω/2), sin(Ω/2)·n̂)`.
pub fn half_angle_quotients(ctx: &BoostContext) -> Result<(f64, Vec3)> {
    let alpha = ctx.boost_rapidity();
    let delta = ctx.particle_rapidity();
    let ep = dot3(ctx.e_hat, ctx.p_hat);

    let denom_sq = 0.5 + 0.5 * alpha.cosh() * delta.cosh() + 0.5 * alpha.sinh() * delta.sinh() * ep;
    if !(denom_sq > 0.0 && denom_sq.is_finite()) {
        return Err(Error::DegenerateDenominator("Wigner half-angle quotient"));
    }
    let denom = denom_sq.sqrt();

    let (ch_a, sh_a) = ((0.5 * alpha).cosh(), (0.5 * alpha).sinh());
    let (ch_d, sh_d) = ((0.5 * delta).cosh(), (0.5 * delta).sinh());
    let cos_half = (ch_a * ch_d + sh_a * sh_d * ep) / denom;
    let e_x_p = cross3(ctx.e_hat, ctx.p_hat);
    Ok((cos_half, e_x_p.map(|c| sh_a * sh_d * c / denom)))
}

/// Spin-1/2 representation `cos(Ω/2) + i sin(Ω/2) (σ·n̂)`.
pub fn d_half(rot: &WignerRotation) -> ComplexMatrix {
    let (c, s) = (rot.cos_half(), rot.sin_half());
    let [nx, ny, nz] = rot.n_hat;
    let sigma_n =
        &(&sigma_x().scale_real(nx) + &sigma_y().scale_real(ny)) + &sigma_z().scale_real(nz);
    &ComplexMatrix::identity(2).scale_real(c) + &sigma_n.scale(I * s)
}

/// Shorthand for `d_half` about a fixed axis.
pub fn d_half_about(omega: f64, axis: Vec3) -> ComplexMatrix {
    d_half(&WignerRotation {
        omega,
        n_hat: axis,
        axis_defined: true,
    })
}

/// Spin-1 Wigner matrix for a rotation by `theta` about the x-axis, basis
/// order `{|1>, |0>, |-1>}`.
pub fn d_one(theta: f64) -> ComplexMatrix {
    let (c, s) = (theta.cos(), theta.sin());
    let diag = C64::new((c + 1.0) / 2.0, 0.0);
    let corner = C64::new((c - 1.0) / 2.0, 0.0);
    let off = I * (s / std::f64::consts::SQRT_2);
    ComplexMatrix::from_rows(&[
        [diag, off, corner],
        [off, C64::new(c, 0.0), off],
        [corner, off, diag],
    ])
}

/// How `p·b` and `b²` are contracted when projecting the Pauli-Lubanski
/// vector onto a direction `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// `b = (0, b⃗)`: `p·b` is the 3-dot `p⃗·b⃗` and `b² = |b⃗|²`.
    Spatial,
    /// `b` null: `λ± = ±½ (p·b)` with the Minkowski product.
    Null,
    /// Both contractions Minkowski, signature `(+,-,-,-)`; spacelike `b`
    /// can make the radicand negative.
    Minkowski,
}

impl Projection {
    /// `Null` for null `b`, `Spatial` for `b⁰ = 0`, otherwise `Minkowski`.
    pub fn infer(b: FourVector) -> Self {
        let scale = b.iter().map(|c| c * c).sum::<f64>().max(1.0);
        if minkowski_dot(b, b).abs() <= 1e-12 * scale {
            Projection::Null
        } else if b[0] == 0.0 {
            Projection::Spatial
        } else {
            Projection::Minkowski
        }
    }
}

/// Eigenvalues `(λ₊, λ₋) = ±½ sqrt((p·b)² + m² b²)` of the Pauli-Lubanski
/// projection, or `±½ (p·b)` for a null direction.
pub fn pauli_lubanski_eigenvalues(
    p: FourVector,
    b: FourVector,
    mass: f64,
    projection: Projection,
) -> Result<(f64, f64)> {
    if mass.is_nan() || mass < 0.0 {
        return Err(Error::InvalidInput(format!(
            "mass must be nonnegative, got {mass}"
        )));
    }
    match projection {
        Projection::Spatial => {
            if b[0] != 0.0 {
                return Err(Error::InvalidInput(
                    "spatial projection needs b⁰ = 0".into(),
                ));
            }
            let pb = p[1] * b[1] + p[2] * b[2] + p[3] * b[3];
            let b_sq = b[1] * b[1] + b[2] * b[2] + b[3] * b[3];
            let r = radicand(pb * pb + mass * mass * b_sq)?;
            Ok((0.5 * r, -0.5 * r))
        }
        Projection::Null => {
            let scale = b.iter().map(|c| c * c).sum::<f64>().max(1.0);
            if minkowski_dot(b, b).abs() > 1e-12 * scale {
                return Err(Error::InvalidInput("null projection needs b·b = 0".into()));
            }
            let pb = minkowski_dot(p, b);
            Ok((0.5 * pb, -0.5 * pb))
        }
        Projection::Minkowski => {
            let pb = minkowski_dot(p, b);
            let r = radicand(pb * pb + mass * mass * minkowski_dot(b, b))?;
            Ok((0.5 * r, -0.5 * r))
        }
    }
}

fn radicand(value: f64) -> Result<f64> {
    if value < 0.0 {
        return Err(Error::NegativeRadicand {
            context: "Pauli-Lubanski eigenvalue",
            value,
        });
    }
    Ok(value.sqrt())
}

/// Explicit 4x4 Lorentz matrices, used as an independent route to the
/// Wigner rotation `L⁻¹(Λp) Λ L(p)`.
pub mod lorentz {
    use super::*;

    pub type Matrix4 = [[f64; 4]; 4];

    pub fn identity() -> Matrix4 {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        m
    }

    pub fn mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    pub fn apply(m: &Matrix4, v: FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| m[i][k] * v[k]).sum();
        }
        out
    }

    /// Pure boost with the given rapidity along `dir` (need not be unit).
    pub fn pure_boost(rapidity: f64, dir: Vec3) -> Matrix4 {
        let len = norm3(dir);
        if len == 0.0 || rapidity == 0.0 {
            return identity();
        }
        let n = dir.map(|c| c / len);
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut m = identity();
        m[0][0] = ch;
        for i in 0..3 {
            m[0][i + 1] = sh * n[i];
            m[i + 1][0] = sh * n[i];
            for j in 0..3 {
                m[i + 1][j + 1] += (ch - 1.0) * n[i] * n[j];
            }
        }
        m
    }

    /// Standard boost `L(p)` taking `(m, 0⃗)` to `(E, p⃗)`.
    pub fn standard_boost(p: Vec3, mass: f64) -> Matrix4 {
        pure_boost((norm3(p) / mass).asinh(), p)
    }

    pub fn inverse_standard_boost(p: Vec3, mass: f64) -> Matrix4 {
        pure_boost(-(norm3(p) / mass).asinh(), p)
    }

    /// `W(Λ, p) = L⁻¹(Λp) Λ L(p)`.
    pub fn wigner_rotation_matrix(ctx: &BoostContext) -> Matrix4 {
        let lambda = pure_boost(ctx.boost_rapidity(), ctx.e_hat);
        let p = ctx.four_momentum();
        let lp = apply(&lambda, p);
        let back = inverse_standard_boost([lp[1], lp[2], lp[3]], ctx.mass);
        let forward = standard_boost([p[1], p[2], p[3]], ctx.mass);
        mul(&back, &mul(&lambda, &forward))
    }

    /// Largest deviation of `m` from a pure spatial rotation in its
    /// time row and column.
    pub fn rotation_residual(m: &Matrix4) -> f64 {
        (1..4).fold((m[0][0] - 1.0).abs(), |r, i| {
            r.max(m[0][i].abs()).max(m[i][0].abs())
        })
    }

    /// Angle in `[0, π]` and unit axis `u` such that the spatial block is
    /// the active rotation by that angle about `u`.
    pub fn rotation_angle_axis(m: &Matrix4) -> (f64, Vec3) {
        let tr = m[1][1] + m[2][2] + m[3][3];
        let v = [m[3][2] - m[2][3], m[1][3] - m[3][1], m[2][1] - m[1][2]];
        let s = norm3(v);
        let angle = (0.5 * s).atan2(0.5 * (tr - 1.0));
        let axis = if s > 0.0 { v.map(|c| c / s) } else { [0.0; 3] };
        (angle, axis)
    }

    /// Wigner rotation read off the 4x4 composition, expressed in the
    /// convention of [`d_half`]: `cos(Ω/2) + i sin(Ω/2) σ·n̂` rotates by
    /// `-Ω` about `n̂`, so `n̂` is the negated active-rotation axis.
    pub fn composition_wigner_rotation(ctx: &BoostContext) -> WignerRotation {
        let m = wigner_rotation_matrix(ctx);
        let (angle, axis) = rotation_angle_axis(&m);
        if norm3(axis) == 0.0 {
            WignerRotation {
                omega: angle,
                n_hat: [0.0; 3],
                axis_defined: false,
            }
        } else {
            WignerRotation {
                omega: angle,
                n_hat: axis.map(|c| -c),
                axis_defined: true,
            }
        }
    }
}
