//! Complex tridiagonal matrices.
//!
//! Every lattice operator in this crate (Hamiltonian, forward/backward/real/imaginary
//! momentum, the lattice shift operators) is tridiagonal, so this is the one
//! storage format they share. Dense conversion exists for oracles and for
//! products whose band grows past three diagonals.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// An `n x n` tridiagonal matrix stored by its three diagonals.
///
/// `upper[j]` is the entry `(j, j + 1)` and `lower[j]` is `(j + 1, j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexTridiagonal {
    pub diagonal: Vec<Complex64>,
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
}

impl ComplexTridiagonal {
    pub fn zeros(n: usize) -> Self {
        let off = n.saturating_sub(1);
        Self {
            diagonal: vec![Complex64::new(0.0, 0.0); n],
            upper: vec![Complex64::new(0.0, 0.0); off],
            lower: vec![Complex64::new(0.0, 0.0); off],
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (d, &v) in m.diagonal.iter_mut().zip(diag) {
            *d = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Entry `(i, j)`, zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i == j {
            self.diagonal[i]
        } else if j == i + 1 {
            self.upper[i]
        } else if i == j + 1 {
            self.lower[j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            diagonal: self.diagonal.iter().map(|z| z.conj()).collect(),
            upper: self.lower.iter().map(|z| z.conj()).collect(),
            lower: self.upper.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            diagonal: self.diagonal.iter().map(|z| z * s).collect(),
            upper: self.upper.iter().map(|z| z * s).collect(),
            lower: self.lower.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let zip = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Self {
            diagonal: zip(&self.diagonal, &other.diagonal),
            upper: zip(&self.upper, &other.upper),
            lower: zip(&self.lower, &other.lower),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.diagonal
            .iter()
            .chain(&self.upper)
            .chain(&self.lower)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Whether the diagonal is real and `lower = conj(upper)`, compared exactly.
    pub fn is_hermitian(&self) -> bool {
        self.diagonal.iter().all(|d| d.im == 0.0)
            && self.upper.iter().zip(&self.lower).all(|(u, l)| *l == u.conj())
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(x.len(), n, "vector length mismatch");
        (0..n)
            .map(|i| {
                let mut acc = self.diagonal[i] * x[i];
                if i + 1 < n {
                    acc += self.upper[i] * x[i + 1];
                }
                if i > 0 {
                    acc += self.lower[i - 1] * x[i - 1];
                }
                acc
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.get(i, j))
    }
}

/// Max-norm of `A - A^dagger`.
pub fn hermiticity_defect(a: &ComplexTridiagonal) -> f64 {
    let diag = a.diagonal.iter().map(|d| 2.0 * d.im.abs());
    let off = a.upper.iter().zip(&a.lower).map(|(u, l)| (u - l.conj()).norm());
    diag.chain(off).fold(0.0, f64::max)
}

/// Max-norm of a dense complex matrix.
pub fn dense_max_norm(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_matches_dense_adjoint() {
        let m = ComplexTridiagonal {
            diagonal: vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0)],
            upper: vec![c(1.0, 1.0), c(-2.0, 0.5)],
            lower: vec![c(0.0, 4.0), c(7.0, 0.0)],
        };
        assert_eq!(m.adjoint().to_dense(), m.to_dense().adjoint());
    }

    #[test]
    fn matvec_matches_dense() {
        let m = ComplexTridiagonal {
            diagonal: vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 1.0)],
            upper: vec![c(0.0, 1.0), c(1.0, 0.0)],
            lower: vec![c(0.0, -1.0), c(2.0, 2.0)],
        };
        let x = vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.5)];
        let dense = m.to_dense() * nalgebra::DVector::from_vec(x.clone());
        for (a, b) in m.matvec(&x).iter().zip(dense.iter()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn defect_of_hermitian_is_zero() {
        let m = ComplexTridiagonal {
            diagonal: vec![c(1.0, 0.0), c(2.0, 0.0)],
            upper: vec![c(0.5, -0.25)],
            lower: vec![c(0.5, 0.25)],
        };
        assert!(m.is_hermitian());
        assert_eq!(hermiticity_defect(&m), 0.0);
        let skew = ComplexTridiagonal { lower: vec![c(0.5, -0.25)], ..m };
        assert!(!skew.is_hermitian());
        assert_eq!(hermiticity_defect(&skew), 0.5);
    }
}
