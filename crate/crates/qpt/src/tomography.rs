//! Process-map reconstruction from (input, dual, output) triples and the
//! diagnostics that reveal how the inputs were prepared.
//!
//! The map is stored in B form: a d²×d² Hermitian matrix with row index
//! (r, r') and column index (s, s'), flattened row-major as `r*d + r'`. In
//! that arrangement the reconstruction is a plain sum of Kronecker
//! products, `Λ = Σ_m Q_m ⊗ conj(P̃_m)`, the eigenvalues of the matrix
//! decide complete positivity, and trace preservation is the partial-sum
//! identity checked by [`ProcessMap::tp_residual`].

use num_complex::Complex64;

use crate::basis::{DualSet, InputSet};
use crate::error::{Error, Result};
use crate::mat::{c64, ComplexMatrix};
use crate::state::QubitState;

/// A map counts as completely positive when its smallest B-form eigenvalue
/// is at least `-CP_EIG_TOL`. The negativity of interest in the scenarios
/// is orders of magnitude larger than this.
pub const CP_EIG_TOL: f64 = 1e-9;

/// Hermiticity tolerance for an admissible B form.
const B_FORM_HERMITICITY_TOL: f64 = 1e-10;

/// A linear map on qubit density matrices in B form.
#[derive(Debug, Clone)]
pub struct ProcessMap {
    dim: usize,
    b_form: ComplexMatrix,
}

impl ProcessMap {
    /// Wrap an explicit B form; it must be square of dimension d² and
    /// Hermitian within 1e-10.
    pub fn from_b_form(b_form: ComplexMatrix) -> Result<Self> {
        let d2 = b_form.dim();
        let dim = (d2 as f64).sqrt().round() as usize;
        if dim * dim != d2 {
            return Err(Error::Dimension {
                expected: 4,
                got: d2,
            });
        }
        let defect = b_form.hermiticity_defect();
        if defect > B_FORM_HERMITICITY_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self { dim, b_form })
    }

    /// System dimension d (2 for a qubit).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn b_form(&self) -> &ComplexMatrix {
        &self.b_form
    }

    /// Act on a state: `Q_rs = Σ_{r's'} Λ_{(r,r'),(s,s')} ρ_{r's'}`.
    ///
    /// The output is built with the unchecked constructor: a predicted state
    /// with negative eigenvalues is diagnostic signal, not an error.
    pub fn apply(&self, rho: &QubitState) -> QubitState {
        let d = self.dim;
        let out = ComplexMatrix::from_fn(d, |r, s| {
            let mut acc = Complex64::new(0.0, 0.0);
            for rp in 0..d {
                for sp in 0..d {
                    acc += self.b_form.get(d * r + rp, d * s + sp) * rho.matrix().get(rp, sp);
                }
            }
            acc
        });
        QubitState::new_unchecked(out)
    }

    /// Eigenvalues of the B form, ascending. Negative values mean the map
    /// is not completely positive.
    pub fn cp_spectrum(&self) -> Result<Vec<f64>> {
        self.b_form.hermitian_eigenvalues()
    }

    /// Trace-preservation residual:
    /// `max_{r's'} |Σ_r Λ_{(r,r'),(r,s')} - δ_{r's'}|`.
    pub fn tp_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for rp in 0..d {
            for sp in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..d {
                    acc += self.b_form.get(d * r + rp, d * r + sp);
                }
                let delta = if rp == sp { 1.0 } else { 0.0 };
                worst = worst.max((acc - c64(delta, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest entrywise difference between two B forms.
    pub fn max_abs_diff(&self, other: &ProcessMap) -> f64 {
        self.b_form.max_abs_diff(&other.b_form)
    }
}

/// Reconstruct the process map from measured outputs and the dual set of
/// the assumed inputs: `Λ_{(r,r'),(s,s')} = Σ_m (Q_m)_{rs} conj(P̃_m)_{r's'}`.
pub fn reconstruct_map(
    inputs: &InputSet,
    duals: &DualSet,
    outputs: &[QubitState],
) -> Result<ProcessMap> {
    if inputs.len() != duals.len() || inputs.len() != outputs.len() {
        return Err(Error::MismatchedSets {
            inputs: inputs.len(),
            duals: duals.len(),
            outputs: outputs.len(),
        });
    }
    let d = 2;
    let mut b = ComplexMatrix::zeros(d * d);
    for (q, dual) in outputs.iter().zip(duals.duals()) {
        b = &b + &q.matrix().tensor(&dual.conj());
    }
    ProcessMap::from_b_form(b)
}

/// Per-probe linearity diagnostic: how far the map's prediction is from
/// the simulated output, and how physical the prediction is.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProbeDiagnostic {
    pub label: String,
    /// Max entry distance between predicted and simulated output states.
    pub residual: f64,
    /// Min eigenvalue of the predicted state; negative means the map
    /// predicts an unphysical output for this probe.
    pub predicted_min_eigenvalue: f64,
}

/// Summary diagnostics for a reconstructed map.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DiagnosticsReport {
    pub cp_min_eigenvalue: f64,
    pub is_cp: bool,
    pub tp_residual: f64,
    pub linearity: Vec<ProbeDiagnostic>,
}

/// Anything that can prepare and run an arbitrary probe state through the
/// actual process, giving the ground truth a reconstructed map is compared
/// against.
pub trait SimulatesProbe {
    fn simulate_probe(&self, probe: &QubitState) -> Result<QubitState>;
}

/// Compare the map's predictions against the simulated process on each
/// probe. If the process is linear on the probe set, every residual is
/// zero up to roundoff.
pub fn linearity_probe(
    map: &ProcessMap,
    process: &impl SimulatesProbe,
    probes: &[(String, QubitState)],
) -> Result<Vec<ProbeDiagnostic>> {
    probes
        .iter()
        .map(|(label, probe)| {
            let simulated = process.simulate_probe(probe)?;
            let predicted = map.apply(probe);
            Ok(ProbeDiagnostic {
                label: label.clone(),
                residual: predicted.matrix().max_abs_diff(simulated.matrix()),
                predicted_min_eigenvalue: predicted.min_eigenvalue(),
            })
        })
        .collect()
}

/// Full diagnostics: CP spectrum, TP residual, and linearity probes.
pub fn diagnostics(
    map: &ProcessMap,
    process: &impl SimulatesProbe,
    probes: &[(String, QubitState)],
) -> Result<DiagnosticsReport> {
    let spectrum = map.cp_spectrum()?;
    let cp_min = spectrum[0];
    Ok(DiagnosticsReport {
        cp_min_eigenvalue: cp_min,
        is_cp: cp_min >= -CP_EIG_TOL,
        tp_residual: map.tp_residual(),
        linearity: linearity_probe(map, process, probes)?,
    })
}
