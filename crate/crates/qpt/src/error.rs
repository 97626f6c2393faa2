//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by construction and reconstruction routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is not Hermitian: max |M - M†| entry is {0:.3e}")]
    NotHermitian(f64),

    #[error("matrix trace {0:.12} is not 1 within tolerance")]
    NotUnitTrace(f64),

    #[error("state is not positive semidefinite: min eigenvalue {0:.3e}")]
    NotPositive(f64),

    #[error("state is not pure: Bloch norm {0:.12}")]
    NotPure(f64),

    #[error("input states are linearly dependent: Gram condition number {0:.3e}")]
    LinearlyDependent(f64),

    #[error("matrix is numerically singular")]
    Singular,

    #[error("eigensolver did not converge after {0} sweeps")]
    EigNonConvergence(usize),

    #[error("polarization must lie in (0, 1], got {0}")]
    PolarizationRange(f64),

    #[error("rotation error must satisfy 0 <= epsilon < 1, got {0}")]
    EpsilonRange(f64),

    #[error("input label {0} is not part of this preparation's family")]
    UnknownLabel(String),

    #[error("mismatched set sizes: {inputs} inputs, {duals} duals, {outputs} outputs")]
    MismatchedSets {
        inputs: usize,
        duals: usize,
        outputs: usize,
    },

    #[error("expansion coefficient has imaginary part {0:.3e}")]
    NonRealCoefficient(f64),

    #[error("prepared state is unphysical: min eigenvalue {0:.3e}")]
    UnphysicalPreparation(f64),

    #[error("product-formula and spectral unitaries disagree: max entry diff {0:.3e}")]
    UnitaryMismatch(f64),

    #[error("probe is not preparable under this scenario: {0}")]
    ProbeNotPreparable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
