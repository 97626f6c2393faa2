//! Desk-scale simulator and diagnostic library for two-qubit quantum process
//! tomography.
//!
//! A system qubit coupled to an environment qubit evolves under an isotropic
//! exchange interaction. Input states are produced by explicit preparation
//! procedures (pin maps, local rotations, faulty rotations, mixed pins,
//! fixed correlations, double pins, or bare rotations with no pin), outputs
//! are read off by tracing out the environment, and the process map is
//! reconstructed by dual-set inversion. Whether that map comes out
//! completely positive, trace preserving, and linear is determined entirely
//! by the preparation procedure, and the library exposes exactly those
//! diagnostics, along with closed-form reference maps and CSV/JSON sweeps
//! over the evolution time.

pub mod basis;
pub mod dynamics;
mod eig;
pub mod emit;
pub mod error;
pub mod mat;
pub mod prep;
pub mod scenario;
pub mod state;
pub mod tomography;

pub use basis::{
    compute_duals, dual_operators, expand_in_inputs, standard_inputs, DualSet, InputFamily,
    InputLabel, InputSet,
};
pub use dynamics::{hamiltonian, process_output, swap_matrix, unitary, Evolution};
pub use error::{Error, Result};
pub use mat::{c64, pauli, pauli_combination, ComplexMatrix};
pub use prep::{
    apply_pin, erroneous_rotation, prepare_input, rotation_for_target, MixedInputRoute, Preparation,
};
pub use scenario::{
    check_scenario, initial_state, oracle_map, random_probes, run_scenario, sweep, ScenarioConfig,
    ScenarioKind, ScenarioProcess, SweepResult, SweepRow, TimeGrid, TomographySet,
};
pub use state::{BipartiteState, QubitState};
pub use tomography::{
    diagnostics, linearity_probe, reconstruct_map, DiagnosticsReport, ProbeDiagnostic, ProcessMap,
    SimulatesProbe, CP_EIG_TOL,
};
