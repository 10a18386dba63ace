//! Two-qubit states in density-matrix and Bloch (Hilbert-Schmidt) form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{bad_dim, Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_trace, pauli, ComplexMatrix, Subsystem};

/// Hermiticity and trace tolerance for a valid density matrix.
pub const STATE_TOL: f64 = 1e-10;

/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-8;

/// Local Bloch vectors and correlation matrix of a two-qubit state:
///
/// `rho = 1/4 (I⊗I + Σ a_i σ_i⊗I + Σ b_i I⊗σ_i + Σ t_ij σ_i⊗σ_j)`.
///
/// A `BlochSpec` is not necessarily physical; positivity is checked when it
/// is turned into a [`DensityMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochSpec {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl BlochSpec {
    pub fn zero() -> Self {
        Self {
            a: [0.0; 3],
            b: [0.0; 3],
            t: [[0.0; 3]; 3],
        }
    }

    /// Zero local vectors and `T = diag(c1, c2, c3)`.
    pub fn bell_diagonal(c1: f64, c2: f64, c3: f64) -> Self {
        let mut s = Self::zero();
        s.t[0][0] = c1;
        s.t[1][1] = c2;
        s.t[2][2] = c3;
        s
    }

    pub fn has_diagonal_correlations(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.t[i][j] == 0.0))
    }

    /// All fifteen parameters in the order `a1..a3, b1..b3, t11, t12, .., t33`.
    pub fn components(&self) -> [f64; 15] {
        let mut out = [0.0; 15];
        out[..3].copy_from_slice(&self.a);
        out[3..6].copy_from_slice(&self.b);
        for i in 0..3 {
            out[6 + 3 * i..9 + 3 * i].copy_from_slice(&self.t[i]);
        }
        out
    }

    /// Largest absolute difference over all fifteen parameters.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn check_well_formed(&self) -> Result<()> {
        for v in self.components() {
            if !v.is_finite() || v.abs() > 1.0 + PSD_TOL {
                return Err(Error::BadParameter {
                    name: "bloch component",
                    value: v,
                    domain: "[-1, 1]",
                });
            }
        }
        Ok(())
    }
}

/// Labels for the fifteen entries of a [`BlochSpec`], matching
/// [`BlochSpec::components`].
pub const BLOCH_LABELS: [&str; 15] = [
    "x1", "x2", "x3", "y1", "y2", "y3", "t11", "t12", "t13", "t21", "t22", "t23", "t31", "t32",
    "t33",
];

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
///
/// Both 4x4 (two-qubit) and 2x2 (reduced) states are supported.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() || !(mat.rows() == 2 || mat.rows() == 4) {
            return Err(bad_dim("2x2 or 4x4", mat.rows(), mat.cols()));
        }
        let residual = mat.hermiticity_residual();
        if residual > STATE_TOL {
            return Err(Error::NonHermitianInput { residual });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let spectrum = hermitian_eigenvalues(&mat)?;
        let smallest = *spectrum.last().expect("non-empty spectrum");
        if smallest < -PSD_TOL {
            return Err(Error::UnphysicalState {
                eigenvalue: smallest,
            });
        }
        Ok(Self { mat })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
            .expect("maximally mixed state is valid")
    }

    /// Projector onto the pure state `psi` (normalized internally).
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&unit, &unit))
    }

    /// Computational basis projector `|k><k|`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut diag = vec![0.0; dim];
        diag[k] = 1.0;
        Self::new(ComplexMatrix::from_real_diagonal(&diag)).expect("basis projector is valid")
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Self::new(a.mat.kron(&b.mat))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Eigenvalues, descending.
    pub fn spectrum(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat).expect("validated state has a spectrum")
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }

    /// Reduced state of the `keep` qubit.
    pub fn reduced(&self, keep: Subsystem) -> Result<DensityMatrix> {
        DensityMatrix::new(partial_trace(&self.mat, keep)?)
    }
}

fn sigma_pair(i: usize, j: usize) -> ComplexMatrix {
    pauli(i).kron(&pauli(j))
}

/// `1/4 (I⊗I + Σ a_i σ_i⊗I + Σ b_i I⊗σ_i + Σ t_ij σ_i⊗σ_j)`, validated.
pub fn density_from_bloch(s: &BlochSpec) -> Result<DensityMatrix> {
    s.check_well_formed()?;
    DensityMatrix::new(operator_from_bloch(s))
}

/// The unvalidated operator behind [`density_from_bloch`].
pub fn operator_from_bloch(s: &BlochSpec) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4);
    for i in 0..3 {
        m = &m + &sigma_pair(i + 1, 0).scale_real(s.a[i]);
        m = &m + &sigma_pair(0, i + 1).scale_real(s.b[i]);
        for j in 0..3 {
            m = &m + &sigma_pair(i + 1, j + 1).scale_real(s.t[i][j]);
        }
    }
    m.scale_real(0.25)
}

/// Inverts [`density_from_bloch`] by taking Pauli expectation values.
pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochSpec> {
    bloch_from_operator(rho.matrix())
}

/// Pauli expectation values of any 4x4 operator.
pub fn bloch_from_operator(m: &ComplexMatrix) -> Result<BlochSpec> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(bad_dim("4x4", m.rows(), m.cols()));
    }
    let expect = |i: usize, j: usize| (&sigma_pair(i, j) * m).trace().re;
    let mut s = BlochSpec::zero();
    for i in 0..3 {
        s.a[i] = expect(i + 1, 0);
        s.b[i] = expect(0, i + 1);
        for j in 0..3 {
            s.t[i][j] = expect(i + 1, j + 1);
        }
    }
    Ok(s)
}

/// `Tr(rho^2)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // Tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ.
    rho.matrix().entries().iter().map(|z| z.norm_sqr()).sum()
}

/// Bell-diagonal state with correlations `diag(c1, c2, c3)`.
pub fn bell_diagonal(c1: f64, c2: f64, c3: f64) -> Result<DensityMatrix> {
    density_from_bloch(&BlochSpec::bell_diagonal(c1, c2, c3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn zero_spec_is_maximally_mixed() {
        let rho = density_from_bloch(&BlochSpec::zero()).unwrap();
        assert!(rho
            .matrix()
            .approx_eq(&ComplexMatrix::identity(4).scale_real(0.25), 1e-15));
    }

    #[test]
    fn figure_input_state_entries() {
        let rho = bell_diagonal(0.5, -0.5, 0.5).unwrap();
        let m = rho.matrix();
        let diag: Vec<f64> = (0..4).map(|i| m[(i, i)].re).collect();
        assert_eq!(diag, vec![0.375, 0.125, 0.125, 0.375]);
        // (c1 - c2)/4 between |00> and |11>, (c1 + c2)/4 between |01> and |10>.
        assert!((m[(0, 3)] - re(0.25)).norm() < 1e-15);
        assert!((m[(3, 0)] - re(0.25)).norm() < 1e-15);
        assert!(m[(1, 2)].norm() < 1e-15);
        assert!(m[(2, 1)].norm() < 1e-15);
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(m[(i, j)], ZERO);
        }
    }

    #[test]
    fn all_ones_correlations_are_unphysical() {
        match density_from_bloch(&BlochSpec::bell_diagonal(1.0, 1.0, 1.0)) {
            Err(Error::UnphysicalState { eigenvalue }) => {
                assert!((eigenvalue + 0.5).abs() < 1e-12)
            }
            other => panic!("expected UnphysicalState, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_component_is_rejected() {
        let mut s = BlochSpec::zero();
        s.a[0] = 1.5;
        assert!(matches!(
            density_from_bloch(&s),
            Err(Error::BadParameter { .. })
        ));
    }

    #[test]
    fn bloch_of_maximally_mixed_is_zero() {
        let s = bloch_from_density(&DensityMatrix::maximally_mixed(4)).unwrap();
        assert_eq!(s.max_abs_diff(&BlochSpec::zero()), 0.0);
    }

    #[test]
    fn bloch_of_11_projector() {
        let s = bloch_from_density(&DensityMatrix::basis_state(4, 3)).unwrap();
        let mut want = BlochSpec::zero();
        want.a = [0.0, 0.0, -1.0];
        want.b = [0.0, 0.0, -1.0];
        want.t[2][2] = 1.0;
        assert!(s.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn bloch_from_reduced_state_is_a_dimension_error() {
        let q = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            bloch_from_density(&q),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn purity_cases() {
        assert!((purity(&DensityMatrix::maximally_mixed(4)) - 0.25).abs() < 1e-15);
        assert!((purity(&DensityMatrix::basis_state(4, 3)) - 1.0).abs() < 1e-15);
        let rho = bell_diagonal(0.5, -0.5, 0.5).unwrap();
        let from_spectrum: f64 = rho.spectrum().iter().map(|l| l * l).sum();
        assert!((rho.purity() - 0.4375).abs() < 1e-15);
        assert!((rho.purity() - from_spectrum).abs() < 1e-10);
    }

    #[test]
    fn bell_diagonal_constructor_cases() {
        let rho = bell_diagonal(0.0, 0.0, 0.0).unwrap();
        assert!(rho
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(4).matrix(), 1e-15));

        let bell = bell_diagonal(1.0, -1.0, 1.0).unwrap();
        assert!((bell.purity() - 1.0).abs() < 1e-12);
        let spec = bell.spectrum();
        assert!((spec[0] - 1.0).abs() < 1e-12);
        assert!(spec[1..].iter().all(|l| l.abs() < 1e-12));

        assert!(matches!(
            bell_diagonal(1.0, 1.0, 1.0),
            Err(Error::UnphysicalState { .. })
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = ComplexMatrix::identity(4);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::BadTrace { .. })
        ));
        let mut non_herm = ComplexMatrix::identity(2).scale_real(0.5);
        non_herm[(0, 1)] = re(0.1);
        assert!(matches!(
            DensityMatrix::new(non_herm),
            Err(Error::NonHermitianInput { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::identity(3).scale_real(1.0 / 3.0)),
            Err(Error::BadDimension { .. })
        ));
    }
}
