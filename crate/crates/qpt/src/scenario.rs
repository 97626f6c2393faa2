//! Preset end-to-end scenarios: a shared initial state, one preparation
//! procedure per scenario, simulated outputs, reconstructed maps,
//! closed-form reference maps where they exist, and time sweeps.
//!
//! Times are swept in the dimensionless coordinate `2ωt`, the argument of
//! every closed form here.

use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{compute_duals, standard_inputs, DualSet, InputFamily, InputSet};
use crate::dynamics::{process_output, unitary, Evolution};
use crate::error::{Error, Result};
use crate::mat::{c64, pauli, ComplexMatrix};
use crate::prep::{prepare_input, rotation_for_target, Preparation};
use crate::state::{BipartiteState, QubitState, POSITIVITY_TOL};
use crate::tomography::{
    diagnostics, reconstruct_map, DiagnosticsReport, ProcessMap, SimulatesProbe, CP_EIG_TOL,
};

/// The six preset experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// Consistent pin to a pure state, perfect rotations. The map is
    /// completely positive at all times.
    Ideal,
    /// One input rotation is faulty. The map picks up negative eigenvalues
    /// even though nothing is correlated with the environment.
    ControlError,
    /// The pin only reaches polarization p but the matching duals are
    /// used, so the map still comes out exact.
    MixedUncorrelated,
    /// Same mixed pin, plus a fixed system-environment correlation the pin
    /// does not remove. The map is linear but not completely positive.
    MixedCorrelated,
    /// The I/2 input is made with a second pin, so the environment differs
    /// across inputs: the map is neither completely positive nor linear.
    MultiPin,
    /// No pin at all: rotations calibrated for a pure reference state act
    /// on the raw initial state. The process is not truly linear.
    NoPin,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::Ideal,
        ScenarioKind::ControlError,
        ScenarioKind::MixedUncorrelated,
        ScenarioKind::MixedCorrelated,
        ScenarioKind::MultiPin,
        ScenarioKind::NoPin,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Ideal => "ideal",
            ScenarioKind::ControlError => "control_error",
            ScenarioKind::MixedUncorrelated => "mixed_uncorrelated",
            ScenarioKind::MixedCorrelated => "mixed_correlated",
            ScenarioKind::MultiPin => "multi_pin",
            ScenarioKind::NoPin => "no_pin",
        }
    }
}

/// Evaluation grid in the `2ωt` coordinate, inclusive of both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl TimeGrid {
    /// Grid points; a single step collapses onto `start`.
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.start + h * i as f64).collect()
    }
}

/// Full configuration of a scenario run.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    /// Exchange frequency ω (rad/time).
    pub omega: f64,
    /// Control-error size (control_error scenario).
    pub epsilon: f64,
    /// Pin polarization (mixed scenarios).
    pub p: f64,
    /// Fixed σ2⊗σ3 correlation strength.
    pub c23: f64,
    /// System polarization of the initial state.
    pub a: [f64; 3],
    /// Sweep grid in 2ωt.
    pub t_grid: TimeGrid,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: ScenarioKind::Ideal,
            omega: 1.0,
            epsilon: 0.1,
            p: 0.9,
            c23: 0.5,
            a: [0.0, 0.0, 0.0],
            t_grid: TimeGrid {
                start: 0.0,
                end: PI,
                steps: 200,
            },
        }
    }
}

impl ScenarioConfig {
    pub fn new(scenario: ScenarioKind) -> Self {
        Self {
            scenario,
            ..Self::default()
        }
    }

    /// Parameter-range validation shared by every entry point.
    pub fn validate(&self) -> Result<()> {
        if !self.omega.is_finite() || self.omega <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(Error::EpsilonRange(self.epsilon));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::PolarizationRange(self.p));
        }
        let a_norm = (self.a[0].powi(2) + self.a[1].powi(2) + self.a[2].powi(2)).sqrt();
        if a_norm > 1.0 + POSITIVITY_TOL {
            return Err(Error::InvalidConfig(format!(
                "|a| must be at most 1, got {a_norm}"
            )));
        }
        if self.t_grid.steps < 1 {
            return Err(Error::InvalidConfig("grid needs at least 1 step".into()));
        }
        if !self.t_grid.start.is_finite() || !self.t_grid.end.is_finite() {
            return Err(Error::InvalidConfig("grid bounds must be finite".into()));
        }
        // Initial-state positivity bounds c23 given a.
        initial_state(self.a, self.c23)?;
        Ok(())
    }

    /// Physical time for a grid coordinate `x = 2ωt`.
    pub fn time_for(&self, two_omega_t: f64) -> f64 {
        two_omega_t / (2.0 * self.omega)
    }
}

/// The unprepared joint state every scenario starts from:
/// `(I⊗I + a.σ⊗I + c23 σ2⊗σ3)/4`. Fails if the parameters make it
/// unphysical.
pub fn initial_state(a: [f64; 3], c23: f64) -> Result<BipartiteState> {
    let mut m = pauli(0).tensor(&pauli(0));
    for (j, aj) in a.iter().enumerate() {
        if *aj != 0.0 {
            m = &m + &pauli(j + 1).tensor(&pauli(0)).scale(c64(*aj, 0.0));
        }
    }
    if c23 != 0.0 {
        m = &m + &pauli(2).tensor(&pauli(3)).scale(c64(c23, 0.0));
    }
    BipartiteState::new(m.scale(c64(0.25, 0.0)))
}

/// Bloch direction of the pure state the no-pin rotations are calibrated
/// for. Perpendicular to the z axis on purpose: a system polarization along
/// the reference axis commutes with every calibrated rotation and hides the
/// nonlinearity this scenario exists to show.
pub const NO_PIN_REFERENCE_AXIS: [f64; 3] = [1.0, 0.0, 0.0];

fn scenario_preparation(cfg: &ScenarioConfig) -> Result<Preparation> {
    match cfg.scenario {
        ScenarioKind::Ideal => Preparation::ideal_pin(QubitState::from_bloch([0.0, 0.0, 1.0])?),
        ScenarioKind::ControlError => Preparation::control_error(cfg.epsilon),
        ScenarioKind::MixedUncorrelated => Preparation::mixed_pin(cfg.p),
        ScenarioKind::MixedCorrelated => Preparation::correlated(cfg.p, cfg.c23),
        ScenarioKind::MultiPin => Ok(Preparation::multi_pin()),
        ScenarioKind::NoPin => Preparation::no_pin(QubitState::from_bloch(NO_PIN_REFERENCE_AXIS)?),
    }
}

/// The inputs the experimenter believes were prepared, which fix the duals
/// used for reconstruction. The control-error and no-pin scenarios assume
/// the pure projectors even though the actual preparations differ; the
/// mixed scenarios use the polarization-matched family.
fn assumed_inputs(cfg: &ScenarioConfig) -> Result<InputSet> {
    match cfg.scenario {
        ScenarioKind::Ideal | ScenarioKind::ControlError | ScenarioKind::NoPin => {
            standard_inputs(InputFamily::Projectors)
        }
        ScenarioKind::MixedUncorrelated | ScenarioKind::MixedCorrelated => {
            standard_inputs(InputFamily::Polarized(cfg.p))
        }
        ScenarioKind::MultiPin => standard_inputs(InputFamily::MultiPin),
    }
}

/// Matched lists of assumed inputs, their duals, and simulated outputs.
#[derive(Debug, Clone)]
pub struct TomographySet {
    pub inputs: InputSet,
    pub duals: DualSet,
    pub outputs: Vec<QubitState>,
}

/// Run one scenario at physical time `t`: prepare each input, evolve it,
/// trace out the environment, and reconstruct the map with the scenario's
/// assumed duals.
pub fn run_scenario(cfg: &ScenarioConfig, t: f64) -> Result<(TomographySet, ProcessMap)> {
    cfg.validate()?;
    let rho_se = initial_state(cfg.a, cfg.c23)?;
    let inputs = assumed_inputs(cfg)?;
    let duals = compute_duals(&inputs)?;
    let prep = scenario_preparation(cfg)?;
    let ev = unitary(cfg.omega, t)?;
    let outputs: Vec<QubitState> = inputs
        .labels()
        .iter()
        .map(|&label| {
            let prepared = prepare_input(&prep, &rho_se, label)?;
            Ok(process_output(&prepared, &ev))
        })
        .collect::<Result<_>>()?;
    let map = reconstruct_map(&inputs, &duals, &outputs)?;
    Ok((
        TomographySet {
            inputs,
            duals,
            outputs,
        },
        map,
    ))
}

/// Closed-form reference map at time `t`, for the presets that have one:
/// ideal and mixed-uncorrelated share one form, mixed-correlated and
/// multi-pin add their own terms, and the control-error and no-pin maps
/// have no compact closed form.
pub fn oracle_map(cfg: &ScenarioConfig, t: f64) -> Option<ProcessMap> {
    let x = 2.0 * cfg.omega * t;
    let (c, s) = (x.cos(), x.sin());
    match cfg.scenario {
        ScenarioKind::Ideal | ScenarioKind::MixedUncorrelated => Some(reference_map_ideal(c)),
        ScenarioKind::MixedCorrelated => Some(reference_map_correlated(c, s, cfg.c23)),
        ScenarioKind::MultiPin => Some(reference_map_multi_pin(c, s)),
        ScenarioKind::ControlError | ScenarioKind::NoPin => None,
    }
}

/// `Λ_s`: B form of the ideal map, `C = cos(2ωt)`.
pub fn reference_map_ideal(c: f64) -> ProcessMap {
    let c2 = c * c;
    let mut b = ComplexMatrix::zeros(4);
    for (r, v) in [(0, 1.0 + c2), (1, 1.0 - c2), (2, 1.0 - c2), (3, 1.0 + c2)] {
        b[(r, r)] = c64(v / 2.0, 0.0);
    }
    b[(0, 3)] = c64(c2, 0.0);
    b[(3, 0)] = c64(c2, 0.0);
    ProcessMap::from_b_form(b).expect("closed form is Hermitian")
}

/// B form of the correlated mixed-pin map: the ideal form plus
/// `-c23·C·S/2` on four off-diagonal entries.
pub fn reference_map_correlated(c: f64, s: f64, c23: f64) -> ProcessMap {
    let mut b = reference_map_ideal(c).b_form().clone();
    let w = c64(-c23 * c * s / 2.0, 0.0);
    for (r, col) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
        b[(r, col)] = b.get(r, col) + w;
    }
    ProcessMap::from_b_form(b).expect("closed form is Hermitian")
}

/// B form of the double-pin map, with the `S²` inconsistency terms.
pub fn reference_map_multi_pin(c: f64, s: f64) -> ProcessMap {
    let (c2, s2) = (c * c, s * s);
    let h = |re: f64| c64(re / 2.0, 0.0);
    let ip = c64(-s2 / 2.0, -s2 / 2.0); // -(1+i)S²/2
    let im = c64(-s2 / 2.0, s2 / 2.0); // -(1-i)S²/2
    let mut b = ComplexMatrix::zeros(4);
    b[(0, 0)] = h(1.0 + c2);
    b[(0, 1)] = ip;
    b[(0, 3)] = h(2.0 * c2);
    b[(1, 0)] = im;
    b[(1, 1)] = h(1.0 - c2 + 2.0 * s2);
    b[(2, 2)] = h(1.0 - c2);
    b[(2, 3)] = -ip;
    b[(3, 0)] = h(2.0 * c2);
    b[(3, 2)] = -im;
    b[(3, 3)] = h(1.0 + c2 - 2.0 * s2);
    ProcessMap::from_b_form(b).expect("closed form is Hermitian")
}

/// One sweep row: grid coordinate, ascending B-form spectrum, and the
/// CP/TP diagnostics at that time.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub two_omega_t: f64,
    pub eigenvalues: [f64; 4],
    pub min_eig: f64,
    pub is_cp: bool,
    pub tp_residual: f64,
}

/// Sweep output: one row per grid point, ordered by the grid.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub config: ScenarioConfig,
    pub rows: Vec<SweepRow>,
}

/// Run the scenario across its configured grid. Deterministic: identical
/// configurations produce identical results.
pub fn sweep(cfg: &ScenarioConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let rows = cfg
        .t_grid
        .points()
        .into_iter()
        .map(|x| {
            let (_, map) = run_scenario(cfg, cfg.time_for(x))?;
            let eigs = map.cp_spectrum()?;
            let eigenvalues = [eigs[0], eigs[1], eigs[2], eigs[3]];
            Ok(SweepRow {
                two_omega_t: x,
                eigenvalues,
                min_eig: eigenvalues[0],
                is_cp: eigenvalues[0] >= -CP_EIG_TOL,
                tp_residual: map.tp_residual(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        config: cfg.clone(),
        rows,
    })
}

/// A scenario frozen at one time, able to prepare and run arbitrary probe
/// states for linearity checks.
#[derive(Debug, Clone)]
pub struct ScenarioProcess {
    cfg: ScenarioConfig,
    rho_se: BipartiteState,
    preparation: Preparation,
    evolution: Evolution,
}

impl ScenarioProcess {
    pub fn new(cfg: &ScenarioConfig, t: f64) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            cfg: cfg.clone(),
            rho_se: initial_state(cfg.a, cfg.c23)?,
            preparation: scenario_preparation(cfg)?,
            evolution: unitary(cfg.omega, t)?,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.cfg
    }

    pub fn evolution(&self) -> &Evolution {
        &self.evolution
    }

    /// How this scenario realizes an arbitrary probe state:
    ///
    /// - pin-based scenarios reach any state in the Bloch ball (pure pins
    ///   plus convex mixing), with the consistent `I/2` environment;
    /// - the mixed families only reach radius `p`, and the correlated one
    ///   adds its fixed correlation;
    /// - the no-pin scenario can only rotate, so probes must be pure.
    pub fn prepare_probe(&self, probe: &QubitState) -> Result<BipartiteState> {
        let v = probe.bloch();
        let radius = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        match &self.preparation {
            Preparation::IdealPin { .. }
            | Preparation::PinWithControlError { .. }
            | Preparation::MultiPin { .. } => Ok(BipartiteState::from_product(
                probe,
                &QubitState::maximally_mixed(),
            )),
            Preparation::MixedPin { p } => {
                if radius > p + POSITIVITY_TOL {
                    return Err(Error::ProbeNotPreparable(format!(
                        "Bloch radius {radius} exceeds pin polarization {p}"
                    )));
                }
                Ok(BipartiteState::from_product(
                    probe,
                    &QubitState::maximally_mixed(),
                ))
            }
            Preparation::CorrelatedFamily { p, correlation } => {
                if radius > p + POSITIVITY_TOL {
                    return Err(Error::ProbeNotPreparable(format!(
                        "Bloch radius {radius} exceeds pin polarization {p}"
                    )));
                }
                let product = BipartiteState::from_product(probe, &QubitState::maximally_mixed());
                let state = BipartiteState::new_unchecked(product.matrix() + correlation);
                let min = state.min_eigenvalue();
                if min < -POSITIVITY_TOL {
                    return Err(Error::UnphysicalPreparation(min));
                }
                Ok(state)
            }
            Preparation::NoPin { reference } => {
                if !probe.is_pure(1e-9) {
                    return Err(Error::ProbeNotPreparable(format!(
                        "rotations only reach pure states; probe Bloch radius is {radius}"
                    )));
                }
                let rot = rotation_for_target(reference, probe)?;
                Ok(BipartiteState::new_unchecked(
                    self.rho_se.matrix().conjugate_by(&rot.tensor(&pauli(0))),
                ))
            }
        }
    }
}

impl SimulatesProbe for ScenarioProcess {
    fn simulate_probe(&self, probe: &QubitState) -> Result<QubitState> {
        Ok(process_output(&self.prepare_probe(probe)?, &self.evolution))
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    // 53-bit mantissa in [0, 1).
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn ball_point(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [
            2.0 * uniform(rng) - 1.0,
            2.0 * uniform(rng) - 1.0,
            2.0 * uniform(rng) - 1.0,
        ];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 <= 1.0 && n2 > 1e-12 {
            return v;
        }
    }
}

/// Seeded random probe states matched to what the scenario can prepare:
/// uniform over the Bloch ball, shrunk to radius `p` for the mixed
/// families and projected to the sphere for the no-pin scenario.
pub fn random_probes(cfg: &ScenarioConfig, count: usize, seed: u64) -> Vec<(String, QubitState)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut v = ball_point(&mut rng);
            match cfg.scenario {
                ScenarioKind::NoPin => {
                    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                    v = [v[0] / n, v[1] / n, v[2] / n];
                }
                ScenarioKind::MixedUncorrelated | ScenarioKind::MixedCorrelated => {
                    v = [v[0] * cfg.p, v[1] * cfg.p, v[2] * cfg.p];
                }
                _ => {}
            }
            (format!("probe-{i:02}"), QubitState::from_bloch_unchecked(v))
        })
        .collect()
}

/// Reconstruct the map at one time and run the full diagnostics against
/// `count` seeded random probes.
pub fn check_scenario(
    cfg: &ScenarioConfig,
    t: f64,
    count: usize,
    seed: u64,
) -> Result<DiagnosticsReport> {
    let (_, map) = run_scenario(cfg, t)?;
    let process = ScenarioProcess::new(cfg, t)?;
    let probes = random_probes(cfg, count, seed);
    diagnostics(&map, &process, &probes)
}
