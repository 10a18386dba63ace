//! Dense complex matrices and a Hermitian Jacobi eigensolver.
//!
//! Everything here is sized for 2x2 and 4x4 problems. Two-qubit matrices are
//! written in the basis `|00>, |01>, |10>, |11>` where the first label belongs
//! to subsystem A and the second to subsystem B.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{bad_dim, Error, Result};

/// Tolerance used by [`hermitian_eigenvalues`] for the Hermiticity check.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which Jacobi iteration stops.
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-14;

const JACOBI_MAX_SWEEPS: usize = 64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Fails with [`Error::BadDimension`] when the entry count does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::BadDimension {
                expected: format!("{} entries for a {rows}x{cols} matrix", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self::from_vec(n_rows, n_cols, data).expect("non-empty rows")
    }

    /// Builds a matrix from real nested rows.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `self * a * self†`, the action of a single Kraus operator.
    pub fn sandwich(&self, a: &Self) -> Self {
        &(self * a) * &self.dagger()
    }

    /// Largest entrywise modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise max-norm distance; `f64::INFINITY` when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Max-norm of `A - A†`; infinite for non-square input.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    fn binary(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.binary(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.binary(rhs, |a, b| a - b)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrix by index: 0 = identity, 1 = x, 2 = y, 3 = z.
pub fn pauli(index: usize) -> ComplexMatrix {
    match index {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        2 => ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        3 => ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index must be in 0..4, got {index}"),
    }
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows())
            .map(|i| self.vectors[(i, k)])
            .collect()
    }
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(a).map(|e| e.values)
}

/// Cyclic complex Jacobi iteration.
///
/// Each rotation first rephases column `q` so that `a[p][q]` is real and
/// then applies a real plane rotation that annihilates it. Eigenvectors are
/// accumulated in the columns of the returned `vectors`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(bad_dim("square matrix", a.rows(), a.cols()));
    }
    let residual = a.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput { residual });
    }

    let n = a.rows();
    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    let mut m = (a + &a.dagger()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_DIAGONAL_TOL * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = m.off_diagonal_norm();
        if off < threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let g = apq.norm();
                if g < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / g;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Unitary acting on the (p, q) plane:
                //   U_pp = c,           U_pq = s,
                //   U_qp = -s conj(φ),  U_qq = c conj(φ)
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                // m <- m U (columns p, q)
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * u_pp + mkq * u_qp;
                    m[(k, q)] = mkp * u_pq + mkq * u_qq;
                }
                // m <- U† m (rows p, q)
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = u_pp.conj() * mpk + u_qp.conj() * mqk;
                    m[(q, k)] = u_pq.conj() * mpk + u_qq.conj() * mqk;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Which factor of `A ⊗ B` survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduces a 4x4 two-qubit operator to the 2x2 operator on `keep`.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(bad_dim("4x4", rho.rows(), rho.cols()));
    }
    let mut out = ComplexMatrix::zeros(2, 2);
    // Index of |ab> is 2a + b.
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                Subsystem::A => rho[(2 * i, 2 * j)] + rho[(2 * i + 1, 2 * j + 1)],
                Subsystem::B => rho[(i, j)] + rho[(2 + i, 2 + j)],
            };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell_diagonal_matrix(c1: f64, c2: f64, c3: f64) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(4);
        for (k, ck) in [(1, c1), (2, c2), (3, c3)] {
            m = &m + &pauli(k).kron(&pauli(k)).scale_real(ck);
        }
        m.scale_real(0.25)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.kron(&i2).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn kron_zz_is_diagonal_sign_pattern() {
        let zz = pauli(3).kron(&pauli(3));
        assert!(zz.approx_eq(
            &ComplexMatrix::from_real_diagonal(&[1.0, -1.0, -1.0, 1.0]),
            0.0
        ));
    }

    #[test]
    fn kron_of_amplitude_damping_factors_matches_hand_expansion() {
        let d: f64 = 0.36;
        let k0 = ComplexMatrix::from_real_rows(&[[(1.0 - d).sqrt(), 0.0], [0.0, 1.0]]);
        let k1 = ComplexMatrix::from_real_rows(&[[0.0, 0.0], [d.sqrt(), 0.0]]);
        // A0 ⊗ A1: rows |ab>, only |0>->|1> on B survives.
        // (A0 ⊗ A1)[2a+b'][2a+b] = A0[a][a] * A1[b'][b]; A1 only has (1,0).
        let got = k0.kron(&k1);
        let mut want = ComplexMatrix::zeros(4, 4);
        want[(1, 0)] = c((1.0 - d).sqrt() * d.sqrt());
        want[(3, 2)] = c(d.sqrt());
        assert!(got.approx_eq(&want, 1e-15), "{got:?}");
        // Each nonzero column has a single nonzero entry.
        for col in 0..4 {
            let nnz = (0..4).filter(|&r| got[(r, col)] != ZERO).count();
            assert!(nnz <= 1);
        }
    }

    #[test]
    fn dagger_cases() {
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.dagger().approx_eq(&i2, 0.0));
        let y = pauli(2);
        assert!(y.dagger().approx_eq(&y, 0.0));

        let d: f64 = 0.4;
        let mut e11 = ComplexMatrix::zeros(4, 4);
        e11[(3, 0)] = c(d.sqrt());
        let e11_dag = e11.dagger();
        assert_eq!(e11_dag[(0, 3)], c(d.sqrt()));
        assert_eq!(e11_dag[(3, 0)], ZERO);
    }

    #[test]
    fn eigenvalues_of_identity() {
        let vals = hermitian_eigenvalues(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(vals, vec![1.0; 4]);
    }

    #[test]
    fn eigenvalues_of_diagonal_are_sorted_descending() {
        let m = ComplexMatrix::from_real_diagonal(&[0.375, 0.125, 0.125, 0.375]);
        let vals = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(vals, vec![0.375, 0.375, 0.125, 0.125]);
    }

    #[test]
    fn bell_diagonal_spectrum_matches_closed_form() {
        let (c1, c2, c3) = (0.5, -0.5, 0.5);
        let closed = {
            let mut v = vec![
                (1.0 - c1 - c2 - c3) / 4.0,
                (1.0 - c1 + c2 + c3) / 4.0,
                (1.0 + c1 - c2 + c3) / 4.0,
                (1.0 + c1 + c2 - c3) / 4.0,
            ];
            v.sort_by(|a: &f64, b| b.total_cmp(a));
            v
        };
        let vals = hermitian_eigenvalues(&bell_diagonal_matrix(c1, c2, c3)).unwrap();
        for (got, want) in vals.iter().zip(&closed) {
            assert!((got - want).abs() < 1e-12);
        }
        for (got, want) in vals.iter().zip([0.625, 0.125, 0.125, 0.125]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvectors_diagonalize_complex_input() {
        let m = ComplexMatrix::from_rows(&[
            [c(2.0), Complex64::new(0.3, -0.7), Complex64::new(0.0, 0.2)],
            [Complex64::new(0.3, 0.7), c(-1.0), Complex64::new(0.5, 0.1)],
            [Complex64::new(0.0, -0.2), Complex64::new(0.5, -0.1), c(0.4)],
        ]);
        let eig = hermitian_eigen(&m).unwrap();
        let v = &eig.vectors;
        let recon = &(v * &ComplexMatrix::from_real_diagonal(&eig.values)) * &v.dagger();
        assert!(recon.approx_eq(&m, 1e-12), "{recon:?}");
        let gram = &v.dagger() * v;
        assert!(gram.approx_eq(&ComplexMatrix::identity(3), 1e-12));
        let tr: f64 = eig.values.iter().sum();
        assert!((tr - m.trace().re).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NonHermitianInput { .. })
        ));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eigenvalues(&rect),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn partial_trace_cases() {
        let mixed = ComplexMatrix::identity(4).scale_real(0.25);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(partial_trace(&mixed, Subsystem::B)
            .unwrap()
            .approx_eq(&half, 1e-15));

        let p11 = ComplexMatrix::from_real_diagonal(&[0.0, 0.0, 0.0, 1.0]);
        let one = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert!(partial_trace(&p11, Subsystem::A)
            .unwrap()
            .approx_eq(&one, 0.0));

        for (c1, c2, c3) in [(0.5, -0.5, 0.5), (0.1, 0.2, -0.3), (1.0, -1.0, 1.0)] {
            let rho = bell_diagonal_matrix(c1, c2, c3);
            for keep in [Subsystem::A, Subsystem::B] {
                assert!(partial_trace(&rho, keep).unwrap().approx_eq(&half, 1e-15));
            }
        }

        assert!(matches!(
            partial_trace(&ComplexMatrix::identity(2), Subsystem::A),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn partial_trace_keeps_the_right_factor() {
        let a = ComplexMatrix::from_rows(&[
            [c(0.7), Complex64::new(0.1, 0.2)],
            [Complex64::new(0.1, -0.2), c(0.3)],
        ]);
        let b = ComplexMatrix::from_real_diagonal(&[0.9, 0.1]);
        let ab = a.kron(&b);
        assert!(partial_trace(&ab, Subsystem::A)
            .unwrap()
            .approx_eq(&a, 1e-15));
        assert!(partial_trace(&ab, Subsystem::B)
            .unwrap()
            .approx_eq(&b, 1e-15));
    }
}
