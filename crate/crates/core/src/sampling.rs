//! Random states for property checks and the closed-form report.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::states::{density_from_bloch, BlochSpec, DensityMatrix};

fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let data = (0..n * n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::from_vec(n, n, data).expect("square")
}

/// Random full-rank state `G G† / Tr(G G†)` of dimension `dim`.
pub fn random_density_matrix_of_dim<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim);
    let w = &g * &g.dagger();
    let tr = w.trace().re;
    let mut m = w.scale_real(1.0 / tr);
    // Exact Hermiticity after rounding.
    m = (&m + &m.dagger()).scale_real(0.5);
    DensityMatrix::new(m).expect("Wishart sample is a valid state")
}

/// Random two-qubit state.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    random_density_matrix_of_dim(rng, 4)
}

/// Random physical state with diagonal correlation matrix and general local
/// Bloch vectors, by rejection.
pub fn random_diagonal_bloch<R: Rng + ?Sized>(rng: &mut R) -> BlochSpec {
    loop {
        let mut s = BlochSpec::zero();
        for i in 0..3 {
            s.a[i] = rng.gen_range(-0.5..0.5);
            s.b[i] = rng.gen_range(-0.5..0.5);
            s.t[i][i] = rng.gen_range(-0.8..0.8);
        }
        if density_from_bloch(&s).is_ok() {
            return s;
        }
    }
}

/// Random unitary from the QR (Gram-Schmidt) factor of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| g[(i, j)]).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(ui, vi)| ui.conj() * vi).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}
