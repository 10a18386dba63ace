//! Entropies and both sides of the memory-assisted uncertainty relation
//!
//! `S(R|B) + S(Q|B) >= log2(1/c) + S(A|B)`
//!
//! where R and Q are measured on qubit A and qubit B is the quantum memory.
//! All entropies are in bits.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{bad_dim, Error, Result};
use crate::linalg::{hermitian_eigen, pauli, ComplexMatrix, Subsystem, I, ONE, ZERO};
use crate::states::{DensityMatrix, STATE_TOL};

/// Slack allowed when checking that the relation holds numerically.
pub const BOUND_TOL: f64 = 1e-7;

/// A nondegenerate single-qubit observable with its eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    mat: ComplexMatrix,
    basis: [[Complex64; 2]; 2],
}

impl Observable {
    /// Eigenvectors are taken in order of descending eigenvalue.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.rows() != 2 || mat.cols() != 2 {
            return Err(bad_dim("2x2", mat.rows(), mat.cols()));
        }
        let eig = hermitian_eigen(&mat)?;
        if (eig.values[0] - eig.values[1]).abs() < 1e-12 {
            return Err(Error::UnsupportedInput(
                "observable must have two distinct eigenvalues".into(),
            ));
        }
        let v0 = eig.vector(0);
        let v1 = eig.vector(1);
        Ok(Self {
            mat,
            basis: [[v0[0], v0[1]], [v1[0], v1[1]]],
        })
    }

    fn pauli_with_basis(index: usize, basis: [[Complex64; 2]; 2]) -> Self {
        Self {
            mat: pauli(index),
            basis,
        }
    }

    /// Eigenbasis `|+>, |->`.
    pub fn sigma_x() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::pauli_with_basis(1, [[h, h], [h, -h]])
    }

    /// Eigenbasis `(|0> + i|1>)/√2, (|0> - i|1>)/√2`.
    pub fn sigma_y() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::pauli_with_basis(2, [[h, I * h], [h, -I * h]])
    }

    /// Eigenbasis `|0>, |1>`.
    pub fn sigma_z() -> Self {
        Self::pauli_with_basis(3, [[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn eigenvector(&self, k: usize) -> &[Complex64; 2] {
        &self.basis[k]
    }

    pub fn projector(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::outer(&self.basis[k], &self.basis[k])
    }

    /// Outcome probabilities `<φ_k|rho|φ_k>` on a single-qubit state.
    pub fn outcome_probabilities(&self, rho: &DensityMatrix) -> [f64; 2] {
        let m = rho.matrix();
        [0, 1].map(|k| {
            let v = &self.basis[k];
            let mut acc = ZERO;
            for i in 0..2 {
                for j in 0..2 {
                    acc += v[i].conj() * m[(i, j)] * v[j];
                }
            }
            acc.re
        })
    }
}

/// `Σ_k (|φ_k><φ_k| ⊗ I) rho (|φ_k><φ_k| ⊗ I)`: the state after measuring
/// `x` on qubit A.
pub fn post_measurement_state(rho: &DensityMatrix, x: &Observable) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(bad_dim("4x4", rho.dim(), rho.dim()));
    }
    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in 0..2 {
        let p = x.projector(k).kron(&id);
        out = &out + &(&(&p * rho.matrix()) * &p);
    }
    DensityMatrix::new(out)
}

/// Shannon entropy in bits; zero-probability terms contribute nothing.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .map(|&p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// `-Σ λ log2 λ` over the clipped spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(&rho.spectrum())
}

/// `S(AB) - S(B)`.
pub fn conditional_entropy(rho_joint: &DensityMatrix) -> Result<f64> {
    if rho_joint.dim() != 4 {
        return Err(bad_dim("4x4", rho_joint.dim(), rho_joint.dim()));
    }
    let rho_b = rho_joint.reduced(Subsystem::B)?;
    Ok(von_neumann_entropy(rho_joint) - von_neumann_entropy(&rho_b))
}

/// `max_ij |<φ_i|ψ_j>|²`.
pub fn complementarity(r: &Observable, q: &Observable) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let u = r.eigenvector(i);
            let v = q.eigenvector(j);
            let overlap = u[0].conj() * v[0] + u[1].conj() * v[1];
            best = best.max(overlap.norm_sqr());
        }
    }
    best
}

/// `S(R|B) + S(Q|B)` together with the two terms.
pub fn conditional_measurement_entropies(
    rho: &DensityMatrix,
    r: &Observable,
    q: &Observable,
) -> Result<(f64, f64)> {
    let s_r = conditional_entropy(&post_measurement_state(rho, r)?)?;
    let s_q = conditional_entropy(&post_measurement_state(rho, q)?)?;
    Ok((s_r, s_q))
}

/// Left side of the memory-assisted relation.
pub fn uncertainty_lhs(rho: &DensityMatrix, r: &Observable, q: &Observable) -> Result<f64> {
    conditional_measurement_entropies(rho, r, q).map(|(a, b)| a + b)
}

/// Right side of the memory-assisted relation, `log2(1/c) + S(A|B)`.
pub fn uncertainty_rhs(rho: &DensityMatrix, r: &Observable, q: &Observable) -> Result<f64> {
    Ok(-complementarity(r, q).log2() + conditional_entropy(rho)?)
}

/// Memoryless relation `H(R) + H(Q) >= log2(1/c)` on a single-qubit state.
/// Returns `(lhs, rhs)`.
pub fn mu_bound(rho_a: &DensityMatrix, r: &Observable, q: &Observable) -> Result<(f64, f64)> {
    if rho_a.dim() != 2 {
        return Err(bad_dim("2x2", rho_a.dim(), rho_a.dim()));
    }
    let lhs = shannon_entropy(&r.outcome_probabilities(rho_a))
        + shannon_entropy(&q.outcome_probabilities(rho_a));
    Ok((lhs, -complementarity(r, q).log2()))
}

/// Everything evaluated at one point of a decoherence sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyRecord {
    pub decoherence: f64,
    pub memory: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `S(R|B)`; `S(σx|B)` for the default pair.
    pub s_r_b: f64,
    /// `S(Q|B)`; `S(σz|B)` for the default pair.
    pub s_q_b: f64,
    pub purity: f64,
    pub mu_lhs: f64,
    pub mu_rhs: f64,
}

impl UncertaintyRecord {
    pub fn evaluate(
        rho: &DensityMatrix,
        r: &Observable,
        q: &Observable,
        decoherence: f64,
        memory: f64,
    ) -> Result<Self> {
        let (s_r_b, s_q_b) = conditional_measurement_entropies(rho, r, q)?;
        let rhs = uncertainty_rhs(rho, r, q)?;
        let (mu_lhs, mu_rhs) = mu_bound(&rho.reduced(Subsystem::A)?, r, q)?;
        Ok(Self {
            decoherence,
            memory,
            lhs: s_r_b + s_q_b,
            rhs,
            s_r_b,
            s_q_b,
            purity: rho.purity(),
            mu_lhs,
            mu_rhs,
        })
    }

    /// Both relations hold within [`BOUND_TOL`] and purity is in `[1/4, 1]`.
    pub fn is_consistent(&self) -> bool {
        self.lhs >= self.rhs - BOUND_TOL
            && self.mu_lhs >= self.mu_rhs - BOUND_TOL
            && self.purity >= 0.25 - STATE_TOL
            && self.purity <= 1.0 + STATE_TOL
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::bell_diagonal;

    const S_FIG: f64 = 1.548_794_940_695_398_5;

    fn bell() -> DensityMatrix {
        bell_diagonal(1.0, -1.0, 1.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    /// Independent oracle: entropy from a known spectrum.
    fn h(spectrum: &[f64]) -> f64 {
        spectrum
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|p| -p * p.log2())
            .sum()
    }

    #[test]
    fn frozen_reference_entropies() {
        close(h(&[0.625, 0.125, 0.125, 0.125]), S_FIG, 1e-12);
        close(
            h(&[0.375, 0.375, 0.125, 0.125]) - 1.0,
            0.811_278_124_459_1,
            1e-12,
        );
    }

    #[test]
    fn post_measurement_cases() {
        let mixed = DensityMatrix::maximally_mixed(4);
        for x in [
            Observable::sigma_x(),
            Observable::sigma_y(),
            Observable::sigma_z(),
        ] {
            let out = post_measurement_state(&mixed, &x).unwrap();
            assert!(out.matrix().approx_eq(mixed.matrix(), 1e-15));
        }

        let rho = bell_diagonal(0.5, -0.5, 0.5).unwrap();
        let out = post_measurement_state(&rho, &Observable::sigma_z()).unwrap();
        let want = ComplexMatrix::from_real_diagonal(&[0.375, 0.125, 0.125, 0.375]);
        assert!(out.matrix().approx_eq(&want, 1e-15));

        let x = Observable::sigma_x();
        let once = post_measurement_state(&rho, &x).unwrap();
        let twice = post_measurement_state(&once, &x).unwrap();
        assert!(once.matrix().approx_eq(twice.matrix(), 1e-15));
        close(once.matrix().trace().re, 1.0, 1e-12);

        assert!(post_measurement_state(&DensityMatrix::maximally_mixed(2), &x).is_err());
    }

    #[test]
    fn entropy_cases() {
        close(
            von_neumann_entropy(&DensityMatrix::basis_state(4, 3)),
            0.0,
            1e-12,
        );
        close(
            von_neumann_entropy(&DensityMatrix::maximally_mixed(2)),
            1.0,
            1e-12,
        );
        close(
            von_neumann_entropy(&bell_diagonal(0.5, -0.5, 0.5).unwrap()),
            S_FIG,
            1e-10,
        );
    }

    #[test]
    fn conditional_entropy_cases() {
        let a =
            DensityMatrix::new(ComplexMatrix::from_real_rows(&[[0.8, 0.1], [0.1, 0.2]])).unwrap();
        let b = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.3, 0.7])).unwrap();
        let prod = DensityMatrix::product(&a, &b).unwrap();
        close(
            conditional_entropy(&prod).unwrap(),
            von_neumann_entropy(&a),
            1e-10,
        );
        close(conditional_entropy(&bell()).unwrap(), -1.0, 1e-10);
        close(
            conditional_entropy(&bell_diagonal(0.5, -0.5, 0.5).unwrap()).unwrap(),
            S_FIG - 1.0,
            1e-10,
        );
    }

    #[test]
    fn complementarity_cases() {
        let x = Observable::sigma_x();
        let z = Observable::sigma_z();
        close(complementarity(&x, &z), 0.5, 1e-15);
        close(-complementarity(&x, &z).log2(), 1.0, 1e-15);
        close(complementarity(&z, &z), 1.0, 1e-15);

        let rotated = Observable::new((&pauli(1) + &pauli(3)).scale_real(FRAC_1_SQRT_2)).unwrap();
        let want = (std::f64::consts::PI / 8.0).cos().powi(2);
        close(complementarity(&z, &rotated), want, 1e-12);
        close(want, 0.853_553_390_593_273_7, 1e-15);
    }

    #[test]
    fn degenerate_observable_is_rejected() {
        assert!(Observable::new(ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn generic_constructor_matches_pauli_bases() {
        for (built, generic) in [
            (Observable::sigma_x(), Observable::new(pauli(1)).unwrap()),
            (Observable::sigma_y(), Observable::new(pauli(2)).unwrap()),
            (Observable::sigma_z(), Observable::new(pauli(3)).unwrap()),
        ] {
            for k in 0..2 {
                assert!(built.projector(k).approx_eq(&generic.projector(k), 1e-12));
            }
        }
    }

    #[test]
    fn lhs_cases() {
        let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
        let p11 = DensityMatrix::basis_state(4, 3);
        let (sx, sz) = conditional_measurement_entropies(&p11, &x, &z).unwrap();
        close(sx, 1.0, 1e-10);
        close(sz, 0.0, 1e-10);
        close(
            uncertainty_lhs(&bell_diagonal(0.5, -0.5, 0.5).unwrap(), &x, &z).unwrap(),
            1.622_556_248_918_2,
            1e-9,
        );
        close(uncertainty_lhs(&bell(), &x, &z).unwrap(), 0.0, 1e-10);
    }

    #[test]
    fn rhs_cases() {
        let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
        close(
            uncertainty_rhs(&bell_diagonal(0.5, -0.5, 0.5).unwrap(), &x, &z).unwrap(),
            S_FIG,
            1e-10,
        );
        close(
            uncertainty_rhs(&DensityMatrix::basis_state(4, 3), &x, &z).unwrap(),
            1.0,
            1e-10,
        );
        close(uncertainty_rhs(&bell(), &x, &z).unwrap(), 0.0, 1e-10);
    }

    #[test]
    fn memoryless_bound_cases() {
        let (x, z) = (Observable::sigma_x(), Observable::sigma_z());
        let (l, r) = mu_bound(&DensityMatrix::maximally_mixed(2), &x, &z).unwrap();
        close(l, 2.0, 1e-12);
        close(r, 1.0, 1e-12);
        let (l, r) = mu_bound(&DensityMatrix::basis_state(2, 1), &x, &z).unwrap();
        close(l, 1.0, 1e-12);
        close(r, 1.0, 1e-12);
        let plus = DensityMatrix::pure(&[ONE, ONE]).unwrap();
        let (l, r) = mu_bound(&plus, &x, &z).unwrap();
        close(l, 1.0, 1e-12);
        close(r, 1.0, 1e-12);
        assert!(mu_bound(&DensityMatrix::maximally_mixed(4), &x, &z).is_err());
    }

    #[test]
    fn block_decomposition_cross_check() {
        // S(ρ_XB) = H(p) + Σ p_k S(ρ_B|k) for the classical-quantum state.
        let rho = bell_diagonal(0.3, -0.2, 0.6).unwrap();
        for x in [Observable::sigma_x(), Observable::sigma_z()] {
            let post = post_measurement_state(&rho, &x).unwrap();
            let mut probs = Vec::new();
            let mut weighted = 0.0;
            for k in 0..2 {
                let p = x.projector(k).kron(&ComplexMatrix::identity(2));
                let block =
                    crate::linalg::partial_trace(&(&(&p * rho.matrix()) * &p), Subsystem::B)
                        .unwrap();
                let pk = block.trace().re;
                probs.push(pk);
                let cond = DensityMatrix::new(block.scale_real(1.0 / pk)).unwrap();
                weighted += pk * von_neumann_entropy(&cond);
            }
            close(
                von_neumann_entropy(&post),
                shannon_entropy(&probs) + weighted,
                1e-9,
            );
        }
    }

    #[test]
    fn record_evaluation() {
        let rho = bell_diagonal(0.5, -0.5, 0.5).unwrap();
        let rec = UncertaintyRecord::evaluate(
            &rho,
            &Observable::sigma_x(),
            &Observable::sigma_z(),
            0.0,
            0.5,
        )
        .unwrap();
        close(rec.lhs, rec.s_r_b + rec.s_q_b, 0.0);
        close(rec.purity, 0.4375, 1e-12);
        close(rec.mu_lhs, 2.0, 1e-12);
        close(rec.mu_rhs, 1.0, 1e-12);
        assert!(rec.is_consistent());
    }
}
