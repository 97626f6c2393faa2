//! Input-state families for qubit tomography and their dual sets.
//!
//! Duals are obtained by Gram-matrix inversion: with
//! `G_mn = tr(P_m† P_n)` the operators `P̃_m = Σ_n (G⁻¹)_mn P_n` satisfy
//! `tr(P̃_m† P_n) = δ_mn`, which is the only property a dual set needs. For
//! a linearly independent spanning set the construction is unique.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::{c64, ComplexMatrix};
use crate::state::QubitState;

/// Gram condition numbers beyond this count as linearly dependent.
pub const GRAM_CONDITION_LIMIT: f64 = 1e12;

/// Biorthogonality must hold at least this well for a computed dual set.
pub const BIORTHOGONALITY_TOL: f64 = 1e-10;

/// Names for the members of the tomography input families. The first four
/// are the Bloch-axis projectors; `Mixed` is the `I/2` input used by the
/// double-pin family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InputLabel {
    XMinus,
    XPlus,
    YPlus,
    ZPlus,
    Mixed,
}

impl InputLabel {
    /// Bloch axis of the intended pure state; `None` for the mixed input.
    pub fn bloch_axis(&self) -> Option<[f64; 3]> {
        match self {
            InputLabel::XMinus => Some([-1.0, 0.0, 0.0]),
            InputLabel::XPlus => Some([1.0, 0.0, 0.0]),
            InputLabel::YPlus => Some([0.0, 1.0, 0.0]),
            InputLabel::ZPlus => Some([0.0, 0.0, 1.0]),
            InputLabel::Mixed => None,
        }
    }
}

impl fmt::Display for InputLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InputLabel::XMinus => "(1,-)",
            InputLabel::XPlus => "(1,+)",
            InputLabel::YPlus => "(2,+)",
            InputLabel::ZPlus => "(3,+)",
            InputLabel::Mixed => "I",
        };
        f.write_str(s)
    }
}

/// The three preset input families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputFamily {
    /// Pure projectors `(I ± σ_j)/2` along -x, +x, +y, +z.
    Projectors,
    /// Partially polarized versions `(I ± p σ_j)/2` with `0 < p <= 1`.
    Polarized(f64),
    /// `{I/2, (I+σ1)/2, (I+σ2)/2, (I+σ3)/2}` as used with a second pin.
    MultiPin,
}

/// Four linearly independent input states with their labels.
#[derive(Debug, Clone)]
pub struct InputSet {
    labels: Vec<InputLabel>,
    states: Vec<QubitState>,
}

impl InputSet {
    /// Exactly four states are required, and they must be linearly
    /// independent as operators (finite Gram condition number).
    pub fn new(labels: Vec<InputLabel>, states: Vec<QubitState>) -> Result<Self> {
        if labels.len() != 4 || states.len() != 4 {
            return Err(Error::MismatchedSets {
                inputs: states.len(),
                duals: labels.len(),
                outputs: 0,
            });
        }
        let ops: Vec<ComplexMatrix> = states.iter().map(|s| s.matrix().clone()).collect();
        gram_condition(&ops)?;
        Ok(Self { labels, states })
    }

    pub fn labels(&self) -> &[InputLabel] {
        &self.labels
    }

    pub fn states(&self) -> &[QubitState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Index of a label within the set.
    pub fn position(&self, label: InputLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// Construct one of the preset input families.
pub fn standard_inputs(family: InputFamily) -> Result<InputSet> {
    let projector = |v: [f64; 3]| QubitState::from_bloch(v).expect("unit Bloch vector");
    match family {
        InputFamily::Projectors => InputSet::new(
            vec![
                InputLabel::XMinus,
                InputLabel::XPlus,
                InputLabel::YPlus,
                InputLabel::ZPlus,
            ],
            vec![
                projector([-1.0, 0.0, 0.0]),
                projector([1.0, 0.0, 0.0]),
                projector([0.0, 1.0, 0.0]),
                projector([0.0, 0.0, 1.0]),
            ],
        ),
        InputFamily::Polarized(p) => {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::PolarizationRange(p));
            }
            InputSet::new(
                vec![
                    InputLabel::XMinus,
                    InputLabel::XPlus,
                    InputLabel::YPlus,
                    InputLabel::ZPlus,
                ],
                vec![
                    projector([-p, 0.0, 0.0]),
                    projector([p, 0.0, 0.0]),
                    projector([0.0, p, 0.0]),
                    projector([0.0, 0.0, p]),
                ],
            )
        }
        InputFamily::MultiPin => InputSet::new(
            vec![
                InputLabel::Mixed,
                InputLabel::XPlus,
                InputLabel::YPlus,
                InputLabel::ZPlus,
            ],
            vec![
                QubitState::maximally_mixed(),
                projector([1.0, 0.0, 0.0]),
                projector([0.0, 1.0, 0.0]),
                projector([0.0, 0.0, 1.0]),
            ],
        ),
    }
}

/// Duals of an input set, aligned index by index. Dual operators are
/// Hermitian but in general neither positive nor unit trace.
#[derive(Debug, Clone)]
pub struct DualSet {
    duals: Vec<ComplexMatrix>,
}

impl DualSet {
    pub fn duals(&self) -> &[ComplexMatrix] {
        &self.duals
    }

    pub fn len(&self) -> usize {
        self.duals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.duals.is_empty()
    }
}

fn gram_matrix(ops: &[ComplexMatrix]) -> ComplexMatrix {
    let n = ops.len();
    ComplexMatrix::from_fn(n, |m, k| (&ops[m].adjoint() * &ops[k]).trace())
}

/// Condition number of the Gram matrix, or a linear-dependence error when
/// it exceeds the cutoff. The Gram matrix of Hermitian operators is
/// Hermitian positive semidefinite, so its eigenvalue ratio is the
/// condition number.
fn gram_condition(ops: &[ComplexMatrix]) -> Result<f64> {
    let eigs = gram_matrix(ops).hermitian_eigenvalues()?;
    let (min, max) = (eigs[0], eigs[eigs.len() - 1]);
    if min <= 0.0 || max / min > GRAM_CONDITION_LIMIT {
        let cond = if min <= 0.0 { f64::INFINITY } else { max / min };
        return Err(Error::LinearlyDependent(cond));
    }
    Ok(max / min)
}

/// Dual operators of an arbitrary Hermitian operator basis by Gram
/// inversion. Applying this twice reproduces the original operators.
pub fn dual_operators(ops: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    gram_condition(ops)?;
    let g_inv = gram_matrix(ops).invert()?;
    let n = ops.len();
    let dim = ops[0].dim();
    let duals: Vec<ComplexMatrix> = (0..n)
        .map(|m| {
            let mut d = ComplexMatrix::zeros(dim);
            for (k, op) in ops.iter().enumerate() {
                d = &d + &op.scale(g_inv.get(m, k));
            }
            d
        })
        .collect();
    Ok(duals)
}

/// Duals of a tomography input set, with the biorthogonality
/// `tr(P̃_m† P_n) = δ_mn` verified after construction.
pub fn compute_duals(inputs: &InputSet) -> Result<DualSet> {
    let ops: Vec<ComplexMatrix> = inputs.states().iter().map(|s| s.matrix().clone()).collect();
    let duals = dual_operators(&ops)?;
    for (m, dual) in duals.iter().enumerate() {
        for (n, op) in ops.iter().enumerate() {
            let want = if m == n { 1.0 } else { 0.0 };
            let got = (&dual.adjoint() * op).trace();
            if (got - c64(want, 0.0)).norm() > BIORTHOGONALITY_TOL {
                return Err(Error::LinearlyDependent(f64::INFINITY));
            }
        }
    }
    Ok(DualSet { duals })
}

/// Coefficients of `ρ` in the input basis: `x_m = tr(P̃_m† ρ)`, so that
/// `Σ_m x_m P_m = ρ`. Coefficients are real for Hermitian inputs and duals;
/// they may be negative (the combination is linear, not convex).
pub fn expand_in_inputs(rho: &QubitState, inputs: &InputSet, duals: &DualSet) -> Result<[f64; 4]> {
    if inputs.len() != 4 || duals.len() != 4 {
        return Err(Error::MismatchedSets {
            inputs: inputs.len(),
            duals: duals.len(),
            outputs: 0,
        });
    }
    let mut coeffs = [0.0; 4];
    for (m, dual) in duals.duals().iter().enumerate() {
        let x: Complex64 = (&dual.adjoint() * rho.matrix()).trace();
        if x.im.abs() > 1e-10 {
            return Err(Error::NonRealCoefficient(x.im));
        }
        coeffs[m] = x.re;
    }
    Ok(coeffs)
}
