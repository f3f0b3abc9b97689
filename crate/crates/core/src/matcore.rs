//! Dense complex matrix kernel.
//!
//! Everything in this crate lives in dimension six or below, so matrices are
//! stored as flat row-major `Vec`s and the Hermitian eigensolver is a plain
//! cyclic Jacobi iteration. Determinism matters more than speed here: the
//! sweep order is fixed, so identical inputs always give bit-identical
//! spectra.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Per-entry tolerance for matrix equality and Hermiticity.
pub const ENTRY_TOL: f64 = 1e-12;

/// Hermiticity tolerance accepted by the eigensolver.
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;

/// Jacobi stops once every off-diagonal magnitude is below this.
pub const JACOBI_OFF_DIAG_TOL: f64 = 1e-13;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues in `[-PSD_ERROR_TOL, 0)` are treated as numerical zeros.
pub const PSD_ERROR_TOL: f64 = 1e-8;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput(
                "matrix dimension must be positive".into(),
            ));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Build from nested rows. Panics on ragged input; meant for literals.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "from_rows expects a square literal");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let complex: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| C64::new(v, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn diag_real(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// Projector `|v><v|` (not normalised).
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on unequal dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// `<v|self|v>`.
    pub fn quadratic_form(&self, v: &[C64]) -> C64 {
        let mv = self.apply(v);
        v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Hilbert-Schmidt inner product `Tr(self† · other)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        acc
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix add on unequal dimensions");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sub on unequal dimensions");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product on unequal dimensions");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Dense rectangular complex matrix; used for moment and coefficient
/// matrices, which are `4 x 4` for qubit-qubit and `4 x 9` for
/// qubit-qutrit operator bases.
#[derive(Clone, Debug, PartialEq)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(rows, cols, |i, j| C64::new(f(i, j), 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `self† · self`, a `cols x cols` Hermitian PSD matrix.
    pub fn gram(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, |a, b| {
            (0..self.rows)
                .map(|k| self.get(k, a).conj() * self.get(k, b))
                .sum()
        })
    }

    /// `self · m` for a square `m` with `m.dim() == self.cols()`.
    pub fn mul_square(&self, m: &ComplexMatrix) -> Result<Self> {
        if m.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: m.dim(),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * m.get(k, j)).sum()
        }))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Hermitian embedding `[[0, A], [A†, 0]]`, whose spectrum is `±σᵢ`
    /// padded with zeros.
    pub fn hermitian_embedding(&self) -> ComplexMatrix {
        let m = self.rows;
        ComplexMatrix::from_fn(m + self.cols, |i, j| match (i < m, j < m) {
            (true, false) => self.get(i, j - m),
            (false, true) => self.get(j, i - m).conj(),
            _ => ZERO,
        })
    }

    /// Singular values, descending. Read from [`Self::hermitian_embedding`]
    /// so small values keep absolute accuracy instead of the square-root
    /// loss of going through `A†A`.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let eig = hermitian_eigenvalues(&self.hermitian_embedding())?;
        let k = self.rows.min(self.cols);
        Ok(eig.iter().rev().take(k).map(|&s| s.max(0.0)).collect())
    }

    /// Largest singular value squared.
    pub fn operator_norm_sq(&self) -> Result<f64> {
        Ok(self.singular_values()?.first().map_or(0.0, |s| s * s))
    }

    /// Sum of singular values.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.iter().sum())
    }
}

/// Factorisation `d = dA * dB` of a bipartite Hilbert space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    pub da: usize,
    pub db: usize,
}

impl BipartiteDims {
    pub const QUBIT_QUBIT: Self = Self { da: 2, db: 2 };
    pub const QUBIT_QUTRIT: Self = Self { da: 2, db: 3 };

    pub fn new(da: usize, db: usize) -> Result<Self> {
        if da == 0 || db == 0 {
            return Err(Error::InvalidInput(
                "party dimensions must be positive".into(),
            ));
        }
        Ok(Self { da, db })
    }

    pub fn total(&self) -> usize {
        self.da * self.db
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
}

/// Kronecker product: entry `(i*dimB + k, j*dimB + l) = A[i,j] * B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let nb = b.dim();
    ComplexMatrix::from_fn(a.dim() * nb, |r, c| {
        a.get(r / nb, c / nb) * b.get(r % nb, c % nb)
    })
}

/// Kronecker product of two kets.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

/// Partial transpose with respect to one party.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dims: BipartiteDims,
    party: Party,
) -> Result<ComplexMatrix> {
    if m.dim() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            found: m.dim(),
        });
    }
    let db = dims.db;
    Ok(ComplexMatrix::from_fn(m.dim(), |r, c| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (c / db, c % db);
        match party {
            Party::A => m.get(j * db + k, i * db + l),
            Party::B => m.get(i * db + l, j * db + k),
        }
    }))
}

/// Trace over party B, returning a `dA x dA` matrix.
pub fn partial_trace_b(m: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
    if m.dim() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            found: m.dim(),
        });
    }
    let db = dims.db;
    Ok(ComplexMatrix::from_fn(dims.da, |i, j| {
        (0..db).map(|k| m.get(i * db + k, j * db + k)).sum()
    }))
}

/// Spectrum and eigenvectors of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors.get(i, k)).collect()
    }

    /// Rebuild `V f(Λ) V†`.
    pub fn map_spectrum(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors.get(i, k) * mapped[k] * self.vectors.get(j, k).conj())
                .sum()
        })
    }
}

/// Cyclic complex Jacobi eigensolver.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let deviation = m.hermitian_deviation();
    if deviation > EIGEN_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    // Symmetrise so the iteration starts exactly Hermitian.
    let mut a = ComplexMatrix::from_fn(n, |i, j| 0.5 * (m.get(i, j) + m.get(j, i).conj()));
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_DIAG_TOL * m.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a.get(p, q).norm())
            .fold(0.0, f64::max);
        if off < threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NotConverged {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a.get(x, x).re.total_cmp(&a.get(y, y).re).then(x.cmp(&y)));
    let values = order.iter().map(|&k| a.get(k, k).re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| v.get(i, order[k]));
    Ok(HermitianEigen { values, vectors })
}

fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = diag(1, conj(phase)) on (p,q) composed with the real rotation.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -s * phase.conj();
    let jqq = c * phase.conj();

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Ascending real spectrum of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?[0])
}

/// Principal square root of a Hermitian PSD matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -PSD_ERROR_TOL {
            return Err(Error::NegativeEigenvalue { value: lowest });
        }
    }
    Ok(eig.map_spectrum(|l| l.max(0.0).sqrt()))
}

/// Moore-Penrose inverse of a Hermitian matrix, inverting only eigenvalues
/// above `cutoff` in magnitude. Returns the inverse and the retained rank.
pub fn hermitian_pseudo_inverse(m: &ComplexMatrix, cutoff: f64) -> Result<(ComplexMatrix, usize)> {
    let eig = hermitian_eigen(m)?;
    let rank = eig.values.iter().filter(|l| l.abs() > cutoff).count();
    let inv = eig.map_spectrum(|l| if l.abs() > cutoff { 1.0 / l } else { 0.0 });
    Ok((inv, rank))
}

/// `Tr[(A-B)†(A-B)]`.
pub fn hs_distance_sq(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum())
}

/// Pauli matrices.
pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]])
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, -1.0])
}

pub fn basis_ket(dim: usize, index: usize) -> Vec<C64> {
    (0..dim)
        .map(|i| if i == index { ONE } else { ZERO })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert!(k.approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn kron_index_formula() {
        let k = kron(
            &ComplexMatrix::diag_real(&[1.0, 0.0]),
            &ComplexMatrix::diag_real(&[0.0, 1.0]),
        );
        assert!(k.approx_eq(&ComplexMatrix::diag_real(&[0.0, 1.0, 0.0, 0.0]), 0.0));
    }

    #[test]
    fn kron_sigma_z_spectrum() {
        let ev = hermitian_eigenvalues(&kron(&sigma_z(), &sigma_z())).unwrap();
        assert_eq!(ev, vec![-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn eigenvalues_of_small_literals() {
        assert_eq!(
            hermitian_eigenvalues(&ComplexMatrix::diag_real(&[3.0, 1.0, 2.0])).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
        let ev = hermitian_eigenvalues(&sigma_x()).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
        let ev = hermitian_eigenvalues(&sigma_y()).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[[ONE, ONE], [ZERO, ONE]]);
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigenvectors_diagonalise() {
        let m = ComplexMatrix::from_rows(&[
            [c(2.0, 0.0), c(0.5, -0.3), c(0.0, 1.0)],
            [c(0.5, 0.3), c(-1.0, 0.0), c(0.2, 0.0)],
            [c(0.0, -1.0), c(0.2, 0.0), c(0.5, 0.0)],
        ]);
        let eig = hermitian_eigen(&m).unwrap();
        let rebuilt = eig.map_spectrum(|l| l);
        assert!(rebuilt.approx_eq(&m, 1e-12));
        let vv = &eig.vectors.adjoint() * &eig.vectors;
        assert!(vv.approx_eq(&ComplexMatrix::identity(3), 1e-12));
    }

    #[test]
    fn partial_transpose_leaves_diagonal_alone() {
        let d = ComplexMatrix::diag_real(&[0.1, 0.2, 0.3, 0.15, 0.05, 0.2]);
        let pt = partial_transpose(&d, BipartiteDims::QUBIT_QUTRIT, Party::A).unwrap();
        assert!(pt.approx_eq(&d, 0.0));
        let pt = partial_transpose(&d, BipartiteDims::QUBIT_QUTRIT, Party::B).unwrap();
        assert!(pt.approx_eq(&d, 0.0));
    }

    #[test]
    fn partial_transpose_checks_dims() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_transpose(&m, BipartiteDims::QUBIT_QUTRIT, Party::A),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bell_projector_partial_transpose_has_negative_half() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(s, 0.0), ZERO, ZERO, c(s, 0.0)];
        let rho = ComplexMatrix::outer(&psi);
        let ev = hermitian_eigenvalues(
            &partial_transpose(&rho, BipartiteDims::QUBIT_QUBIT, Party::A).unwrap(),
        )
        .unwrap();
        assert!((ev[0] + 0.5).abs() < 1e-14);
        assert!(ev[1..].iter().all(|&l| (l - 0.5).abs() < 1e-14));
    }

    #[test]
    fn psd_sqrt_literals() {
        assert!(psd_sqrt(&ComplexMatrix::identity(3))
            .unwrap()
            .approx_eq(&ComplexMatrix::identity(3), 1e-14));
        let r = psd_sqrt(&ComplexMatrix::diag_real(&[4.0, 9.0])).unwrap();
        assert!(r.approx_eq(&ComplexMatrix::diag_real(&[2.0, 3.0]), 1e-14));
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        let m = ComplexMatrix::diag_real(&[1.0, -1e-6]);
        assert!(matches!(
            psd_sqrt(&m),
            Err(Error::NegativeEigenvalue { .. })
        ));
        // tiny negatives are clamped
        let m = ComplexMatrix::diag_real(&[1.0, -1e-11]);
        let r = psd_sqrt(&m).unwrap();
        assert!(r.approx_eq(&ComplexMatrix::diag_real(&[1.0, 0.0]), 1e-14));
    }

    #[test]
    fn hs_distance_literals() {
        let a = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let b = ComplexMatrix::diag_real(&[0.0, 1.0]);
        assert_eq!(hs_distance_sq(&a, &a).unwrap(), 0.0);
        assert_eq!(hs_distance_sq(&a, &b).unwrap(), 2.0);
        assert!(hs_distance_sq(&a, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn pseudo_inverse_drops_null_space() {
        let m = ComplexMatrix::diag_real(&[2.0, 0.0, 4.0]);
        let (inv, rank) = hermitian_pseudo_inverse(&m, 1e-12).unwrap();
        assert_eq!(rank, 2);
        assert!(inv.approx_eq(&ComplexMatrix::diag_real(&[0.5, 0.0, 0.25]), 1e-14));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = ComplexMatrix::diag_real(&[0.3, 0.7]);
        let b = ComplexMatrix::diag_real(&[0.2, 0.5, 0.3]);
        let tr = partial_trace_b(&kron(&a, &b), BipartiteDims::QUBIT_QUTRIT).unwrap();
        assert!(tr.approx_eq(&a, 1e-15));
    }
}
