//! Density matrices: Hermitian, unit trace, positive semidefinite up to
//! numeric noise. Validation is explicit rather than enforced on every
//! construction, so the simulator can check its own state after each step.

use crate::error::{Error, Result};
use crate::{tol, CMat, CVec};
use num_complex::Complex64;

/// An N×N complex density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMat,
}

impl DensityMatrix {
    /// Wrap a square complex matrix. Only squareness is enforced here; use
    /// [`DensityMatrix::validate`] for the physical invariants.
    pub fn from_matrix(mat: CMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                got: mat.ncols(),
            });
        }
        Ok(Self { mat })
    }

    /// The maximally mixed state `I/N`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DatabaseTooSmall(n));
        }
        let w = Complex64::new(1.0 / n as f64, 0.0);
        Ok(Self {
            mat: CMat::identity(n, n) * w,
        })
    }

    /// The pure state `|psi><psi|` for a normalized state vector.
    pub fn pure(state: &CVec) -> Self {
        Self {
            mat: state * state.adjoint(),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    /// Real part of the diagonal entry `(index, index)`: the Born-rule
    /// probability of the corresponding basis outcome.
    pub fn diagonal_prob(&self, index: usize) -> Result<f64> {
        if index >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index,
                limit: self.dim(),
            });
        }
        Ok(self.mat[(index, index)].re)
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// `tr(rho^2)`; 1 for pure states, 1/N for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// Max entry of `|rho - rho†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        crate::numeric::max_abs_diff(&self.mat, &self.mat.adjoint())
    }

    /// `|tr(rho) - 1|`.
    pub fn trace_defect(&self) -> f64 {
        (self.trace() - Complex64::new(1.0, 0.0)).norm()
    }

    /// Smallest eigenvalue of the Hermitian part of `rho`.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.mat + self.mat.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |acc, &x| acc.min(x))
    }

    /// Check Hermiticity, unit trace and positive semidefiniteness against
    /// the crate tolerances. Returns the first violated invariant.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let h = self.hermiticity_defect();
        if h > tol::HERMITICITY {
            return Err(format!(
                "hermiticity defect {h:.3e} exceeds {:.0e}",
                tol::HERMITICITY
            ));
        }
        let t = self.trace_defect();
        if t > tol::TRACE {
            return Err(format!("trace defect {t:.3e} exceeds {:.0e}", tol::TRACE));
        }
        let e = self.min_eigenvalue();
        if e < tol::EIG_FLOOR {
            return Err(format!(
                "eigenvalue {e:.3e} below floor {:.0e}",
                tol::EIG_FLOOR
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed_is_valid_and_flat() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        rho.validate().unwrap();
        for i in 0..4 {
            assert!((rho.diagonal_prob(i).unwrap() - 0.25).abs() < 1e-15);
        }
        assert!((rho.purity() - 0.25).abs() < 1e-15);
        assert!(DensityMatrix::maximally_mixed(1).is_err());
    }

    #[test]
    fn pure_state_has_unit_purity() {
        let amp = Complex64::new(0.5, 0.0);
        let v = CVec::from_element(4, amp);
        let rho = DensityMatrix::pure(&v);
        rho.validate().unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validate_catches_bad_states() {
        // Non-Hermitian
        let mut m = CMat::identity(2, 2) * Complex64::new(0.5, 0.0);
        m[(0, 1)] = Complex64::new(0.3, 0.0);
        let rho = DensityMatrix::from_matrix(m).unwrap();
        assert!(rho.validate().is_err());

        // Wrong trace
        let m = CMat::identity(2, 2);
        let rho = DensityMatrix::from_matrix(m).unwrap();
        assert!(rho.validate().unwrap_err().contains("trace"));

        // Negative eigenvalue: diag(1.5, -0.5)
        let mut m = CMat::identity(2, 2);
        m[(0, 0)] = Complex64::new(1.5, 0.0);
        m[(1, 1)] = Complex64::new(-0.5, 0.0);
        let rho = DensityMatrix::from_matrix(m).unwrap();
        assert!(rho.validate().unwrap_err().contains("eigenvalue"));
    }

    #[test]
    fn from_matrix_rejects_non_square() {
        let m = CMat::zeros(2, 3);
        assert!(DensityMatrix::from_matrix(m).is_err());
    }

    #[test]
    fn diagonal_prob_bounds_checked() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(rho.diagonal_prob(3).is_err());
    }
}
