//! Entanglement measures that do not depend on the witness pipeline:
//! concurrence, partial-transpose spectra, the spin-1 eigenvalue families,
//! and a nearest-separable-state search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matcore::{
    hermitian_eigen, hermitian_eigenvalues, hs_distance_sq, kron, min_eigenvalue,
    partial_transpose, psd_sqrt, sigma_y, BipartiteDims, ComplexMatrix, Party, C64, ZERO,
};
use crate::states::{
    boost_spin_one, rho_spin1_matrix, spin_one_boost_unitary, DensityMatrix, SpinOneWeights,
};

/// Smallest partial-transpose eigenvalue still counted as PPT.
pub const PPT_TOL: f64 = 1e-10;

fn symmetrised(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.dim(), |i, j| 0.5 * (m.get(i, j) + m.get(j, i).conj()))
}

/// Wootters concurrence of a two-qubit state.
///
/// The spectrum of `ρ ρ̃` with `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` is read off the
/// similar Hermitian matrix `√ρ ρ̃ √ρ`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != BipartiteDims::QUBIT_QUBIT {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dims().total(),
        });
    }
    let yy = kron(&sigma_y(), &sigma_y());
    let flipped = &(&yy * &rho.mat().conj()) * &yy;
    let root = psd_sqrt(rho.mat())?;
    let r = symmetrised(&(&(&root * &flipped) * &root));
    let mut nu: Vec<f64> = hermitian_eigenvalues(&r)?
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    nu.sort_by(|a, b| b.total_cmp(a));
    Ok((nu[0] - nu[1] - nu[2] - nu[3]).max(0.0))
}

/// Spectrum of the partial transpose on the momentum factor.
#[derive(Clone, Debug, PartialEq)]
pub struct PptReport {
    pub min_eigenvalue: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub is_ppt: bool,
}

pub fn ppt_report(rho: &DensityMatrix) -> Result<PptReport> {
    let pt = partial_transpose(rho.mat(), rho.dims(), Party::A)?;
    let eigenvalues = hermitian_eigenvalues(&pt)?;
    let min_eigenvalue = eigenvalues[0];
    Ok(PptReport {
        min_eigenvalue,
        eigenvalues,
        is_ppt: min_eigenvalue >= -PPT_TOL,
    })
}

/// Expand `(value, multiplicity)` pairs into an ascending list.
pub fn expand_multiset(pairs: &[(f64, usize)]) -> Vec<f64> {
    let mut out: Vec<f64> = pairs
        .iter()
        .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Rest-frame partial-transpose eigenvalues of the spin-1 family:
/// `(1+2x-4y)/6`, `(1-x-y)/6` twice, `(1-4x+2y)/6`, `(1+2x+2y)/6` twice.
pub fn spin1_ppt_eigs_rest(w: &SpinOneWeights) -> [(f64, usize); 4] {
    let (x, y) = (w.x, w.y);
    [
        ((1.0 + 2.0 * x - 4.0 * y) / 6.0, 1),
        ((1.0 - x - y) / 6.0, 2),
        ((1.0 - 4.0 * x + 2.0 * y) / 6.0, 1),
        ((1.0 + 2.0 * x + 2.0 * y) / 6.0, 2),
    ]
}

/// Eigenvalues of the spin-1 state itself: `(1-x-y)/6` four times,
/// `(1+5x-y)/6`, `(1-x+5y)/6`.
pub fn spin1_positivity_eigs(w: &SpinOneWeights) -> [(f64, usize); 3] {
    let (x, y) = (w.x, w.y);
    [
        ((1.0 - x - y) / 6.0, 4),
        ((1.0 + 5.0 * x - y) / 6.0, 1),
        ((1.0 - x + 5.0 * y) / 6.0, 1),
    ]
}

/// The printed `θ = π/4` partial-transpose eigenvalues against the
/// numeric spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarterTurnComparison {
    /// `τ₁, τ₂₊, τ₂₋, τ₃₊, τ₃₋` in that order.
    pub printed: [f64; 5],
    /// Ascending, six values.
    pub numeric: Vec<f64>,
    /// `pairing[k]` is the printed index matched to `numeric[k]`; every
    /// printed value is used at least once.
    pub pairing: Vec<usize>,
    pub max_residual: f64,
}

fn printed_quarter_eigs(w: &SpinOneWeights) -> [f64; 5] {
    let (x, y) = (w.x, w.y);
    let r1 = 3.0 * (3.0 * x * x + y * y).sqrt();
    let r2 = 3.0 * (x * x + 3.0 * y * y).sqrt();
    [
        (1.0 - x - y) / 6.0,
        (2.0 - 2.0 * x + 4.0 * y + r1) / 12.0,
        (2.0 - 2.0 * x + 4.0 * y - r1) / 12.0,
        (2.0 + 4.0 * x - 2.0 * y + r2) / 12.0,
        (2.0 + 4.0 * x - 2.0 * y - r2) / 12.0,
    ]
}

/// Assign each of the six numeric eigenvalues a printed expression so the
/// largest residual is minimal, with every printed expression used.
fn best_pairing(printed: &[f64; 5], numeric: &[f64]) -> (Vec<usize>, f64) {
    let n = numeric.len();
    let mut best: (Vec<usize>, f64, f64) = (Vec::new(), f64::INFINITY, f64::INFINITY);
    let total = 5usize.pow(n as u32);
    for code in 0..total {
        let mut assign = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            assign.push(c % 5);
            c /= 5;
        }
        if (0..5).any(|p| !assign.contains(&p)) {
            continue;
        }
        let residuals = assign
            .iter()
            .zip(numeric)
            .map(|(&p, v)| (printed[p] - v).abs());
        let (max, sum) = residuals.fold((0.0f64, 0.0), |(m, s), r| (m.max(r), s + r));
        if max < best.1 || (max == best.1 && sum < best.2) {
            best = (assign, max, sum);
        }
    }
    (best.0, best.1)
}

pub fn spin1_ppt_eigs_boosted_quarter(w: &SpinOneWeights) -> Result<QuarterTurnComparison> {
    let rho = boost_spin_one(&crate::states::rho_spin1(w)?, std::f64::consts::FRAC_PI_4)?;
    let numeric = ppt_report(&rho)?.eigenvalues;
    let printed = printed_quarter_eigs(w);
    let (pairing, max_residual) = best_pairing(&printed, &numeric);
    Ok(QuarterTurnComparison {
        printed,
        numeric,
        pairing,
        max_residual,
    })
}

/// Candidate family for [`nearest_separable`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeparableFamily {
    /// `U_θ ρ₁(x,y) U_θ†` over all `(x, y)` where it is physical and PPT.
    XyTriangle { theta: f64 },
    /// Convex mixtures of at most [`MAX_ATOMS`] pure product states.
    ProductMixtures { seed: u64 },
}

impl Default for SeparableFamily {
    fn default() -> Self {
        Self::XyTriangle { theta: 0.0 }
    }
}

pub const MAX_ATOMS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct NearestSeparable {
    pub state: DensityMatrix,
    pub distance_sq: f64,
    /// Location in the `(x, y)` plane for the triangle family.
    pub xy: Option<(f64, f64)>,
    /// Work units spent: candidate evaluations for the triangle family,
    /// outer rounds for product mixtures.
    pub spent: usize,
}

/// Closest separable state in Hilbert-Schmidt distance over the chosen
/// family. The search follows a fixed sequence and stops once `budget`
/// work units are used, so a larger budget never returns a worse result.
pub fn nearest_separable(
    rho: &DensityMatrix,
    family: SeparableFamily,
    budget: usize,
) -> Result<NearestSeparable> {
    if rho.dims() != BipartiteDims::QUBIT_QUTRIT {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: rho.dims().total(),
        });
    }
    if budget == 0 {
        return Err(Error::InvalidInput("budget must be positive".into()));
    }
    match family {
        SeparableFamily::XyTriangle { theta } => xy_triangle_search(rho, theta, budget),
        SeparableFamily::ProductMixtures { seed } => product_mixture_search(rho, seed, budget),
    }
}

struct TriangleSearch<'a> {
    target: &'a ComplexMatrix,
    u: ComplexMatrix,
    budget: usize,
    spent: usize,
    best: Option<(f64, f64, f64)>,
}

impl TriangleSearch<'_> {
    fn candidate(&self, x: f64, y: f64) -> ComplexMatrix {
        rho_spin1_matrix(x, y).conjugate_by(&self.u)
    }

    fn exhausted(&self) -> bool {
        self.spent >= self.budget
    }

    /// Physical and PPT at `(x, y)`; counts one unit.
    fn feasible(&mut self, x: f64, y: f64) -> bool {
        self.spent += 1;
        if !SpinOneWeights::raw(x, y).is_physical() {
            return false;
        }
        let pt = partial_transpose(&self.candidate(x, y), BipartiteDims::QUBIT_QUTRIT, Party::A)
            .expect("six-dimensional candidate");
        min_eigenvalue(&pt).map(|l| l >= -PPT_TOL).unwrap_or(false)
    }

    /// Objective at a point already known feasible; counts one unit.
    fn score(&mut self, x: f64, y: f64) -> f64 {
        self.spent += 1;
        let d = hs_distance_sq(self.target, &self.candidate(x, y)).expect("matching dims");
        if self.best.is_none_or(|(b, _, _)| d < b) {
            self.best = Some((d, x, y));
        }
        d
    }

    /// Largest feasible radius from the origin along direction `phi`.
    fn boundary(&mut self, phi: f64) -> (f64, f64) {
        let (c, s) = (phi.cos(), phi.sin());
        let (mut lo, mut hi) = (0.0, 2.0);
        for _ in 0..48 {
            if self.exhausted() {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.feasible(mid * c, mid * s) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo * c, lo * s)
    }

    fn boundary_score(&mut self, phi: f64) -> f64 {
        let (x, y) = self.boundary(phi);
        if self.exhausted() {
            return f64::INFINITY;
        }
        self.score(x, y)
    }
}

/// Unconstrained minimiser of `‖ρ - U ρ₁(x,y) U†‖²`, which is quadratic
/// in `(x, y)`.
fn xy_unconstrained(target: &ComplexMatrix, u: &ComplexMatrix) -> Option<(f64, f64)> {
    let c0 = rho_spin1_matrix(0.0, 0.0).conjugate_by(u);
    let a = &rho_spin1_matrix(1.0, 0.0).conjugate_by(u) - &c0;
    let b = &rho_spin1_matrix(0.0, 1.0).conjugate_by(u) - &c0;
    let r = target - &c0;
    let (aa, ab, bb) = (a.hs_inner(&a).re, a.hs_inner(&b).re, b.hs_inner(&b).re);
    let (ar, br) = (a.hs_inner(&r).re, b.hs_inner(&r).re);
    let det = aa * bb - ab * ab;
    if det.abs() < 1e-14 {
        return None;
    }
    Some(((ar * bb - br * ab) / det, (aa * br - ab * ar) / det))
}

fn xy_triangle_search(rho: &DensityMatrix, theta: f64, budget: usize) -> Result<NearestSeparable> {
    let u = spin_one_boost_unitary(theta);
    let mut s = TriangleSearch {
        target: rho.mat(),
        u: u.clone(),
        budget,
        spent: 0,
        best: None,
    };
    // The maximally mixed point is always feasible.
    s.score(0.0, 0.0);
    if let Some((x, y)) = xy_unconstrained(rho.mat(), &u) {
        if !s.exhausted() && s.feasible(x, y) && !s.exhausted() {
            s.score(x, y);
        }
    }
    let converged_inside = s.best.is_some_and(|(d, _, _)| d < 1e-15);
    if !converged_inside {
        const DIRECTIONS: usize = 360;
        let step = std::f64::consts::TAU / DIRECTIONS as f64;
        let mut best_dir = (f64::INFINITY, 0.0);
        for k in 0..DIRECTIONS {
            if s.exhausted() {
                break;
            }
            let phi = k as f64 * step;
            let d = s.boundary_score(phi);
            if d < best_dir.0 {
                best_dir = (d, phi);
            }
        }
        // Golden-section search around the best direction.
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut lo, mut hi) = (best_dir.1 - step, best_dir.1 + step);
        let mut m1 = hi - g * (hi - lo);
        let mut m2 = lo + g * (hi - lo);
        let mut f1 = s.boundary_score(m1);
        let mut f2 = s.boundary_score(m2);
        for _ in 0..60 {
            if s.exhausted() {
                break;
            }
            if f1 < f2 {
                hi = m2;
                m2 = m1;
                f2 = f1;
                m1 = hi - g * (hi - lo);
                f1 = s.boundary_score(m1);
            } else {
                lo = m1;
                m1 = m2;
                f1 = f2;
                m2 = lo + g * (hi - lo);
                f2 = s.boundary_score(m2);
            }
        }
    }
    let (distance_sq, x, y) = s.best.expect("origin was scored");
    Ok(NearestSeparable {
        state: DensityMatrix::new(s.candidate(x, y), BipartiteDims::QUBIT_QUTRIT)?,
        distance_sq,
        xy: Some((x, y)),
        spent: s.spent.min(budget),
    })
}

fn normalised(v: Vec<C64>) -> Vec<C64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// `<v| M |v>` contracted on one factor: returns the operator on the other.
fn contract(m: &ComplexMatrix, v: &[C64], dims: BipartiteDims, on_a: bool) -> ComplexMatrix {
    let (da, db) = (dims.da, dims.db);
    if on_a {
        ComplexMatrix::from_fn(db, |k, l| {
            let mut s = ZERO;
            for i in 0..da {
                for j in 0..da {
                    s += v[i].conj() * m.get(i * db + k, j * db + l) * v[j];
                }
            }
            s
        })
    } else {
        ComplexMatrix::from_fn(da, |i, j| {
            let mut s = ZERO;
            for k in 0..db {
                for l in 0..db {
                    s += v[k].conj() * m.get(i * db + k, j * db + l) * v[l];
                }
            }
            s
        })
    }
}

fn lowest_vector(m: &ComplexMatrix) -> Vec<C64> {
    hermitian_eigen(&symmetrised(m))
        .expect("Hermitian by construction")
        .vector(0)
}

/// Product state minimising `<ab|M|ab>` by alternating local eigenproblems
/// from several starting points.
fn product_oracle(m: &ComplexMatrix, dims: BipartiteDims, rng: &mut ChaCha8Rng) -> Vec<C64> {
    let mut starts: Vec<Vec<C64>> = (0..dims.da)
        .map(|i| {
            (0..dims.da)
                .map(|j| if i == j { C64::new(1.0, 0.0) } else { ZERO })
                .collect()
        })
        .collect();
    for _ in 0..4 {
        starts.push(normalised(
            (0..dims.da)
                .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect(),
        ));
    }
    let mut best: Option<(f64, Vec<C64>)> = None;
    for mut a in starts {
        let mut b = lowest_vector(&contract(m, &a, dims, true));
        for _ in 0..30 {
            a = lowest_vector(&contract(m, &b, dims, false));
            b = lowest_vector(&contract(m, &a, dims, true));
        }
        let ket = crate::matcore::kron_vec(&a, &b);
        let value = m.quadratic_form(&ket).re;
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, ket));
        }
    }
    best.expect("at least one start").1
}

fn mixture(atoms: &[Vec<C64>], weights: &[f64], n: usize) -> ComplexMatrix {
    atoms
        .iter()
        .zip(weights)
        .fold(ComplexMatrix::zeros(n), |acc, (a, &w)| {
            &acc + &ComplexMatrix::outer(a).scale_real(w)
        })
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut tau = 0.0;
    for (k, &s) in sorted.iter().enumerate() {
        cumulative += s;
        let t = (cumulative - 1.0) / (k as f64 + 1.0);
        if s - t > 0.0 {
            tau = t;
        }
    }
    v.iter().map(|&x| (x - tau).max(0.0)).collect()
}

/// Minimise `‖ρ - Σ wᵢ|aᵢ><aᵢ|‖²` over the simplex for fixed atoms.
fn corrective_weights(target: &ComplexMatrix, atoms: &[Vec<C64>], start: &[f64]) -> Vec<f64> {
    let k = atoms.len();
    let gram: Vec<Vec<f64>> = atoms
        .iter()
        .map(|a| {
            atoms
                .iter()
                .map(|b| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| x.conj() * y)
                        .sum::<C64>()
                        .norm_sqr()
                })
                .collect()
        })
        .collect();
    let lin: Vec<f64> = atoms.iter().map(|a| target.quadratic_form(a).re).collect();
    let lipschitz = gram
        .iter()
        .map(|row| row.iter().sum::<f64>())
        .fold(0.0, f64::max)
        .max(1e-12);
    let mut w = start.to_vec();
    for _ in 0..300 {
        let grad: Vec<f64> = (0..k)
            .map(|i| (0..k).map(|j| gram[i][j] * w[j]).sum::<f64>() - lin[i])
            .collect();
        let step: Vec<f64> = (0..k).map(|i| w[i] - grad[i] / lipschitz).collect();
        w = project_simplex(&step);
    }
    w
}

fn product_mixture_search(
    rho: &DensityMatrix,
    seed: u64,
    budget: usize,
) -> Result<NearestSeparable> {
    let dims = rho.dims();
    let n = dims.total();
    let target = rho.mat();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut atoms: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { C64::new(1.0, 0.0) } else { ZERO })
                .collect()
        })
        .collect();
    let mut weights = corrective_weights(target, &atoms, &vec![1.0 / n as f64; n]);
    let mut best = (
        hs_distance_sq(target, &mixture(&atoms, &weights, n))?,
        mixture(&atoms, &weights, n),
    );
    let mut spent = 0;
    while spent < budget {
        spent += 1;
        let sigma = mixture(&atoms, &weights, n);
        let atom = product_oracle(&(&sigma - target), dims, &mut rng);
        atoms.push(atom);
        weights.push(0.0);
        weights = corrective_weights(target, &atoms, &weights);
        let keep: Vec<usize> = (0..atoms.len()).filter(|&i| weights[i] > 1e-14).collect();
        atoms = keep.iter().map(|&i| atoms[i].clone()).collect();
        weights = keep.iter().map(|&i| weights[i]).collect();
        while atoms.len() > MAX_ATOMS {
            let smallest = (0..weights.len())
                .min_by(|&a, &b| weights[a].total_cmp(&weights[b]).then(a.cmp(&b)))
                .expect("non-empty");
            atoms.remove(smallest);
            weights.remove(smallest);
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            weights = corrective_weights(target, &atoms, &weights);
        }
        let sigma = mixture(&atoms, &weights, n);
        let d = hs_distance_sq(target, &sigma)?;
        if d < best.0 {
            best = (d, sigma);
        }
    }
    let mat = symmetrised(&best.1);
    let tr = mat.trace().re;
    Ok(NearestSeparable {
        state: DensityMatrix::new(mat.scale_real(1.0 / tr), dims)?,
        distance_sq: best.0,
        xy: None,
        spent,
    })
}
