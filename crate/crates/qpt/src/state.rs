//! Qubit and two-qubit density matrices with physicality checks and
//! Bloch-vector conversions.
//!
//! Checked constructors enforce Hermiticity, unit trace, and positive
//! semidefiniteness; unchecked constructors exist for predicted states that
//! are allowed to be unphysical (that is a diagnostic signal, not an error).

use crate::error::{Error, Result};
use crate::mat::{c64, pauli, pauli_combination, ComplexMatrix};

/// Tolerance for Hermiticity and unit trace of a single-qubit state.
pub const QUBIT_STATE_TOL: f64 = 1e-12;
/// States may dip this far below zero before they count as unphysical.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// A state counts as pure when its Bloch norm is within this of 1.
pub const PURITY_TOL: f64 = 1e-10;

/// Single-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    matrix: ComplexMatrix,
}

impl QubitState {
    /// Checked constructor: Hermitian and unit trace within 1e-12,
    /// eigenvalues at least -1e-10.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 2 {
            return Err(Error::Dimension {
                expected: 2,
                got: matrix.dim(),
            });
        }
        let defect = matrix.hermiticity_defect();
        if defect > QUBIT_STATE_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = matrix.trace();
        if (tr - c64(1.0, 0.0)).norm() > QUBIT_STATE_TOL {
            return Err(Error::NotUnitTrace(tr.re));
        }
        let min = matrix.hermitian_part().hermitian_eigenvalues()?[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { matrix })
    }

    /// Constructor without physicality checks, for predicted states that may
    /// carry negative eigenvalues. Panics if the matrix is not 2x2.
    pub fn new_unchecked(matrix: ComplexMatrix) -> Self {
        assert_eq!(matrix.dim(), 2, "qubit state must be 2x2");
        Self { matrix }
    }

    /// `(I + v.σ)/2`; fails if `|v| > 1` beyond tolerance.
    pub fn from_bloch(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1.0 + POSITIVITY_TOL {
            return Err(Error::NotPositive((1.0 - norm) / 2.0));
        }
        Ok(Self::from_bloch_unchecked(v))
    }

    /// `(I + v.σ)/2` with no physicality check, so `|v| > 1` is allowed.
    pub fn from_bloch_unchecked(v: [f64; 3]) -> Self {
        Self::new_unchecked(pauli_combination(0.5, [v[0] / 2.0, v[1] / 2.0, v[2] / 2.0]))
    }

    /// Bloch vector `v_j = tr(ρ σ_j)`. Exact round-trip with `from_bloch`.
    pub fn bloch(&self) -> [f64; 3] {
        let m = &self.matrix;
        [
            (m.get(0, 1) + m.get(1, 0)).re,
            ((m.get(0, 1) - m.get(1, 0)) * c64(0.0, 1.0)).re,
            (m.get(0, 0) - m.get(1, 1)).re,
        ]
    }

    /// The completely mixed state `I/2`.
    pub fn maximally_mixed() -> Self {
        Self::new_unchecked(pauli(0).scale(c64(0.5, 0.0)))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix
            .hermitian_part()
            .hermitian_eigenvalues()
            .expect("hermitian part is hermitian")[0]
    }

    /// Rank-1 within tolerance, i.e. Bloch norm within `tol` of 1.
    pub fn is_pure(&self, tol: f64) -> bool {
        let v = self.bloch();
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        (norm - 1.0).abs() <= tol
    }

    /// Normalized Bloch direction; fails on the maximally mixed state.
    pub(crate) fn bloch_direction(&self) -> Result<[f64; 3]> {
        let v = self.bloch();
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm < 1e-12 {
            return Err(Error::NotPure(norm));
        }
        Ok([v[0] / norm, v[1] / norm, v[2] / norm])
    }
}

/// Tolerance for Hermiticity, trace, and positivity of a joint state.
pub const BIPARTITE_STATE_TOL: f64 = 1e-10;

/// Density matrix of system ⊗ environment, two qubits, system-major index
/// ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    matrix: ComplexMatrix,
}

impl BipartiteState {
    /// Checked constructor: Hermitian, unit trace, positive semidefinite
    /// within 1e-10.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::Dimension {
                expected: 4,
                got: matrix.dim(),
            });
        }
        let defect = matrix.hermiticity_defect();
        if defect > BIPARTITE_STATE_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = matrix.trace();
        if (tr - c64(1.0, 0.0)).norm() > BIPARTITE_STATE_TOL {
            return Err(Error::NotUnitTrace(tr.re));
        }
        let min = matrix.hermitian_part().hermitian_eigenvalues()?[0];
        if min < -BIPARTITE_STATE_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { matrix })
    }

    /// Constructor without physicality checks. Panics if not 4x4.
    pub fn new_unchecked(matrix: ComplexMatrix) -> Self {
        assert_eq!(matrix.dim(), 4, "bipartite state must be 4x4");
        Self { matrix }
    }

    /// Product state `system ⊗ environment`.
    pub fn from_product(system: &QubitState, environment: &QubitState) -> Self {
        Self::new_unchecked(system.matrix().tensor(environment.matrix()))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Reduced state of the system qubit.
    pub fn system_marginal(&self) -> QubitState {
        QubitState::new_unchecked(self.matrix.partial_trace_env().expect("dim 4"))
    }

    /// Reduced state of the environment qubit.
    pub fn environment_marginal(&self) -> QubitState {
        QubitState::new_unchecked(self.matrix.partial_trace_system().expect("dim 4"))
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix
            .hermitian_part()
            .hermitian_eigenvalues()
            .expect("hermitian part is hermitian")[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bloch_round_trip_is_exact() {
        let v = [0.3, -0.2, 0.5];
        let state = QubitState::from_bloch(v).unwrap();
        let w = state.bloch();
        for j in 0..3 {
            assert!((v[j] - w[j]).abs() < 1e-15);
        }
    }

    #[test]
    fn bloch_origin_is_maximally_mixed() {
        let state = QubitState::from_bloch([0.0, 0.0, 0.0]).unwrap();
        assert!(state
            .matrix()
            .approx_eq(QubitState::maximally_mixed().matrix(), 0.0));
    }

    #[test]
    fn bloch_x_plus_is_projector() {
        // (I + σ1)/2
        let state = QubitState::from_bloch([1.0, 0.0, 0.0]).unwrap();
        let expect = pauli_combination(0.5, [0.5, 0.0, 0.0]);
        assert!(state.matrix().approx_eq(&expect, 0.0));
        assert!(state.is_pure(1e-12));
    }

    #[test]
    fn physicality_boundary() {
        assert!(QubitState::from_bloch([0.6, 0.0, 0.8]).is_ok());
        assert!(matches!(
            QubitState::from_bloch([0.8, 0.0, 0.8]),
            Err(Error::NotPositive(_))
        ));
        // still constructible unchecked
        let over = QubitState::from_bloch_unchecked([0.8, 0.0, 0.8]);
        assert!(over.min_eigenvalue() < -POSITIVITY_TOL);
    }

    #[test]
    fn rejects_bad_matrices() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c64(0.1, 0.0);
        assert!(matches!(QubitState::new(m), Err(Error::NotHermitian(_))));

        let m = ComplexMatrix::identity(2);
        assert!(matches!(QubitState::new(m), Err(Error::NotUnitTrace(_))));
    }

    #[test]
    fn marginals_of_correlated_state() {
        // (I⊗I + 0.5 σ2⊗σ3)/4 has both marginals I/2.
        let m = &pauli(0).tensor(&pauli(0)).scale(c64(0.25, 0.0))
            + &pauli(2).tensor(&pauli(3)).scale(c64(0.125, 0.0));
        let state = BipartiteState::new(m).unwrap();
        let half = QubitState::maximally_mixed();
        assert!(state
            .system_marginal()
            .matrix()
            .approx_eq(half.matrix(), 1e-15));
        assert!(state
            .environment_marginal()
            .matrix()
            .approx_eq(half.matrix(), 1e-15));
    }
}
