#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relent_core::matcore::{hermitian_eigen, ComplexMatrix, C64};
use relent_core::states::{BellWeights, SpinOneWeights};

pub fn hermitian_from(entries: &[f64], n: usize) -> ComplexMatrix {
    let mut k = 0;
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = C64::new(entries[k], 0.0);
        k += 1;
        for j in i + 1..n {
            let z = C64::new(entries[k], entries[k + 1]);
            k += 2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| hermitian_from(&v, n))
}

/// `exp(iH)` for Hermitian `H`.
pub fn unitary_from(h: &ComplexMatrix) -> ComplexMatrix {
    let eig = hermitian_eigen(h).unwrap();
    let n = h.dim();
    let phases: Vec<C64> = eig
        .values
        .iter()
        .map(|&l| C64::from_polar(1.0, l))
        .collect();
    ComplexMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| eig.vectors.get(i, k) * phases[k] * eig.vectors.get(j, k).conj())
            .sum()
    })
}

pub fn unitary(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    hermitian(n).prop_map(|h| unitary_from(&h.scale_real(3.0)))
}

/// Random PSD matrix `A†A`.
pub fn psd(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * n * n).prop_map(move |v| {
        let a = ComplexMatrix::from_fn(n, |i, j| {
            C64::new(v[2 * (i * n + j)], v[2 * (i * n + j) + 1])
        });
        &a.adjoint() * &a
    })
}

pub fn bell_weights() -> impl Strategy<Value = BellWeights> {
    prop::array::uniform4(0.0f64..1.0)
        .prop_filter("nonzero", |p| p.iter().sum::<f64>() > 1e-3)
        .prop_map(|p| {
            let s: f64 = p.iter().sum();
            BellWeights::new(p[0] / s, p[1] / s, p[2] / s, 1.0 - (p[0] + p[1] + p[2]) / s).unwrap()
        })
}

/// Uniform point in the physical triangle with corners `(0,1)`, `(1,0)`,
/// `(-1/4,-1/4)`.
pub fn spin1_point(u: f64, v: f64) -> SpinOneWeights {
    let (u, v) = if u + v > 1.0 {
        (1.0 - u, 1.0 - v)
    } else {
        (u, v)
    };
    let x = -0.25 + u * 1.25 + v * 0.25;
    let y = -0.25 + u * 0.25 + v * 1.25;
    SpinOneWeights::raw(x, y)
}

pub fn spin1_weights() -> impl Strategy<Value = SpinOneWeights> {
    (0.0f64..1.0, 0.0f64..1.0).prop_map(|(u, v)| {
        let w = spin1_point(u, v);
        SpinOneWeights::new(w.x, w.y).unwrap()
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bell(rng: &mut ChaCha8Rng) -> BellWeights {
    let p: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
    let s: f64 = p.iter().sum();
    BellWeights::new(p[0] / s, p[1] / s, p[2] / s, 1.0 - (p[0] + p[1] + p[2]) / s).unwrap()
}

pub fn random_spin1(rng: &mut ChaCha8Rng) -> SpinOneWeights {
    let w = spin1_point(rng.random(), rng.random());
    SpinOneWeights::new(w.x, w.y).unwrap()
}
