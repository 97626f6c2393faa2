//! Preparation procedures acting on the joint system-environment state.
//!
//! A stochastic preparation decorrelates the system with a pin map and then
//! rotates it into each input state, which keeps the environment marginal
//! identical across inputs. Every failure mode studied here is a departure
//! from that recipe: a faulty rotation, a pin that only reaches polarization
//! `p`, a correlation the pin does not remove, a second pin used for one
//! input, or no pin at all.

use std::f64::consts::FRAC_PI_4;

use crate::basis::InputLabel;
use crate::dynamics::unitary;
use crate::error::{Error, Result};
use crate::mat::{c64, pauli, ComplexMatrix};
use crate::state::{BipartiteState, QubitState, POSITIVITY_TOL, PURITY_TOL};

/// How the `I/2` input of the double-pin family is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedInputRoute {
    /// Pin to `(I+σ3)/2` and let it decohere under the exchange evolution
    /// for a quarter swap period, leaving the environment in `(I+σ3)/2`.
    DecoheredPin,
    /// Swap the unprepared initial state itself, leaving the environment
    /// holding whatever polarization the initial state had.
    SwappedInitial,
}

/// A preparation procedure: how each labeled input state is realized on the
/// joint system-environment state.
#[derive(Debug, Clone)]
pub enum Preparation {
    /// Pin to a pure target, then rotate into each projector input.
    IdealPin { target: QubitState },
    /// Like the ideal pin (target `|1><1|`), except the rotation for one
    /// input is the faulty unitary of [`erroneous_rotation`].
    PinWithControlError { epsilon: f64, faulty: InputLabel },
    /// The pin only reaches polarization `p`, so every input is
    /// `(I ± p σ_j)/2`.
    MixedPin { p: f64 },
    /// Mixed pin plus a fixed correlation operator added to every product
    /// input; the correlation is the same for all labels.
    CorrelatedFamily { p: f64, correlation: ComplexMatrix },
    /// Projector inputs from one pin, the `I/2` input from a second one.
    MultiPin { mixed_route: MixedInputRoute },
    /// No pin: the per-input rotations act directly on the initial joint
    /// state, assuming (perhaps wrongly) that the system starts in
    /// `reference`.
    NoPin { reference: QubitState },
}

impl Preparation {
    pub fn ideal_pin(target: QubitState) -> Result<Self> {
        require_pure(&target)?;
        Ok(Preparation::IdealPin { target })
    }

    /// Control-error preparation with the fault on the `(1,-)` input.
    pub fn control_error(epsilon: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::EpsilonRange(epsilon));
        }
        Ok(Preparation::PinWithControlError {
            epsilon,
            faulty: InputLabel::XMinus,
        })
    }

    pub fn mixed_pin(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::PolarizationRange(p));
        }
        Ok(Preparation::MixedPin { p })
    }

    /// Correlated family with `correlation = (c23/4) σ2⊗σ3`. All four
    /// prepared inputs must come out positive semidefinite, which bounds
    /// `|c23|` for the given `p` (the binding case is the σ2-polarized
    /// input, where the two terms commute: `1 - p - |c23| >= 0`).
    pub fn correlated(p: f64, c23: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::PolarizationRange(p));
        }
        let correlation = pauli(2).tensor(&pauli(3)).scale(c64(c23 / 4.0, 0.0));
        for label in [
            InputLabel::XMinus,
            InputLabel::XPlus,
            InputLabel::YPlus,
            InputLabel::ZPlus,
        ] {
            let state = correlated_input(p, &correlation, label)?;
            let min = state.min_eigenvalue();
            if min < -POSITIVITY_TOL {
                return Err(Error::UnphysicalPreparation(min));
            }
        }
        Ok(Preparation::CorrelatedFamily { p, correlation })
    }

    pub fn multi_pin() -> Self {
        Preparation::MultiPin {
            mixed_route: MixedInputRoute::DecoheredPin,
        }
    }

    pub fn no_pin(reference: QubitState) -> Result<Self> {
        require_pure(&reference)?;
        Ok(Preparation::NoPin { reference })
    }
}

fn require_pure(state: &QubitState) -> Result<()> {
    if !state.is_pure(PURITY_TOL) {
        let v = state.bloch();
        return Err(Error::NotPure(
            (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt(),
        ));
    }
    Ok(())
}

/// Pin map: send the system to the pure state `phi` while leaving the
/// environment marginal untouched, `ρ_SE -> |φ><φ| ⊗ Tr_S[ρ_SE]`.
pub fn apply_pin(rho_se: &BipartiteState, phi: &QubitState) -> Result<BipartiteState> {
    require_pure(phi)?;
    Ok(BipartiteState::from_product(
        phi,
        &rho_se.environment_marginal(),
    ))
}

/// Unitary mapping one pure state onto another: the rotation about the axis
/// `n̂ × m̂` by the angle between the Bloch vectors. Coincident states give
/// exactly the identity; antipodal states rotate by π about a fixed
/// deterministic perpendicular axis (the x axis where possible, else y).
/// Prepared states do not depend on the orthocomplement phase this picks.
pub fn rotation_for_target(phi: &QubitState, target: &QubitState) -> Result<ComplexMatrix> {
    require_pure(phi)?;
    require_pure(target)?;
    let n = phi.bloch_direction()?;
    let m = target.bloch_direction()?;
    let cross = [
        n[1] * m[2] - n[2] * m[1],
        n[2] * m[0] - n[0] * m[2],
        n[0] * m[1] - n[1] * m[0],
    ];
    let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let cos = n[0] * m[0] + n[1] * m[1] + n[2] * m[2];
    if sin < 1e-12 {
        if cos > 0.0 {
            return Ok(ComplexMatrix::identity(2));
        }
        // Antipodal: π rotation about a deterministic axis perpendicular
        // to n.
        let axis = perpendicular_axis(n);
        return Ok(axis_rotation(axis, std::f64::consts::PI));
    }
    let axis = [cross[0] / sin, cross[1] / sin, cross[2] / sin];
    Ok(axis_rotation(axis, sin.atan2(cos)))
}

fn perpendicular_axis(n: [f64; 3]) -> [f64; 3] {
    for seed in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]] {
        let dot = seed[0] * n[0] + seed[1] * n[1] + seed[2] * n[2];
        let v = [
            seed[0] - dot * n[0],
            seed[1] - dot * n[1],
            seed[2] - dot * n[2],
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-6 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
    unreachable!("no axis perpendicular to a unit vector")
}

/// SU(2) rotation `cos(θ/2) I - i sin(θ/2) (a.σ)` about the unit axis `a`.
fn axis_rotation(axis: [f64; 3], theta: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut v = pauli(0).scale(c64(c, 0.0));
    for (j, component) in axis.iter().enumerate() {
        v = &v - &pauli(j + 1).scale(c64(0.0, s * component));
    }
    v
}

/// The faulty rotation of the control-error procedure. Its action on `|1>`
/// is `(sqrt(1-ε)|1> - sqrt(1+ε)|0>)/sqrt(2)`; the other column is the
/// orthogonal completion `(sqrt(1+ε)|1> + sqrt(1-ε)|0>)/sqrt(2)`. Applied
/// to `|1><1|` it prepares `(I + ε σ3 - sqrt(1-ε²) σ1)/2` instead of the
/// intended `(I - σ1)/2`.
pub fn erroneous_rotation(epsilon: f64) -> Result<ComplexMatrix> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::EpsilonRange(epsilon));
    }
    let a = ((1.0 - epsilon) / 2.0).sqrt();
    let b = ((1.0 + epsilon) / 2.0).sqrt();
    Ok(ComplexMatrix::from_rows(&[
        &[c64(a, 0.0), c64(-b, 0.0)],
        &[c64(b, 0.0), c64(a, 0.0)],
    ]))
}

/// `(V ⊗ I) ρ (V ⊗ I)†`: rotate the system qubit of a joint state.
fn conjugate_system(state: &ComplexMatrix, v: &ComplexMatrix) -> ComplexMatrix {
    state.conjugate_by(&v.tensor(&pauli(0)))
}

fn intended_target(label: InputLabel) -> Result<QubitState> {
    match label.bloch_axis() {
        Some(axis) => Ok(QubitState::from_bloch_unchecked(axis)),
        None => Err(Error::UnknownLabel(label.to_string())),
    }
}

fn correlated_input(
    p: f64,
    correlation: &ComplexMatrix,
    label: InputLabel,
) -> Result<BipartiteState> {
    let axis = label
        .bloch_axis()
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    let system = QubitState::from_bloch([p * axis[0], p * axis[1], p * axis[2]])?;
    let product = BipartiteState::from_product(&system, &QubitState::maximally_mixed());
    Ok(BipartiteState::new_unchecked(
        product.matrix() + correlation,
    ))
}

/// Prepare the input state with the given label from the unprepared joint
/// state `rho_se`. Every variant returns a unit-trace joint state.
pub fn prepare_input(
    prep: &Preparation,
    rho_se: &BipartiteState,
    label: InputLabel,
) -> Result<BipartiteState> {
    match prep {
        Preparation::IdealPin { target } => {
            let pinned = apply_pin(rho_se, target)?;
            let v = rotation_for_target(target, &intended_target(label)?)?;
            Ok(BipartiteState::new_unchecked(conjugate_system(
                pinned.matrix(),
                &v,
            )))
        }
        Preparation::PinWithControlError { epsilon, faulty } => {
            let pin_target = QubitState::from_bloch_unchecked([0.0, 0.0, -1.0]); // |1><1|
            let pinned = apply_pin(rho_se, &pin_target)?;
            let v = if label == *faulty {
                erroneous_rotation(*epsilon)?
            } else {
                rotation_for_target(&pin_target, &intended_target(label)?)?
            };
            Ok(BipartiteState::new_unchecked(conjugate_system(
                pinned.matrix(),
                &v,
            )))
        }
        Preparation::MixedPin { p } => {
            let axis = label
                .bloch_axis()
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            // Pin reaches (I + p σ3)/2; the rotation moving ẑ to the axis
            // carries the shortened Bloch vector with it.
            let pinned_system = QubitState::from_bloch([0.0, 0.0, *p])?;
            let v = rotation_for_target(
                &QubitState::from_bloch_unchecked([0.0, 0.0, 1.0]),
                &QubitState::from_bloch_unchecked(axis),
            )?;
            let rotated = QubitState::new_unchecked(pinned_system.matrix().conjugate_by(&v));
            Ok(BipartiteState::from_product(
                &rotated,
                &rho_se.environment_marginal(),
            ))
        }
        Preparation::CorrelatedFamily { p, correlation } => {
            let state = correlated_input(*p, correlation, label)?;
            let min = state.min_eigenvalue();
            if min < -POSITIVITY_TOL {
                return Err(Error::UnphysicalPreparation(min));
            }
            Ok(state)
        }
        Preparation::MultiPin { mixed_route } => {
            let pin_target = QubitState::from_bloch_unchecked([0.0, 0.0, 1.0]); // (I+σ3)/2
            if label == InputLabel::Mixed {
                // A quarter period of the exchange evolution is a full swap
                // regardless of ω.
                let swap_ev = unitary(1.0, FRAC_PI_4)?;
                let start = match mixed_route {
                    MixedInputRoute::DecoheredPin => apply_pin(rho_se, &pin_target)?,
                    MixedInputRoute::SwappedInitial => rho_se.clone(),
                };
                return Ok(swap_ev.evolve(&start));
            }
            let pinned = apply_pin(rho_se, &pin_target)?;
            let v = rotation_for_target(&pin_target, &intended_target(label)?)?;
            Ok(BipartiteState::new_unchecked(conjugate_system(
                pinned.matrix(),
                &v,
            )))
        }
        Preparation::NoPin { reference } => {
            let v = rotation_for_target(reference, &intended_target(label)?)?;
            Ok(BipartiteState::new_unchecked(conjugate_system(
                rho_se.matrix(),
                &v,
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::initial_state;

    fn rho_se() -> BipartiteState {
        initial_state([0.2, -0.1, 0.3], 0.4).unwrap()
    }

    #[test]
    fn pin_decorrelates_and_keeps_environment() {
        let rho = rho_se();
        let phi = QubitState::from_bloch([0.0, 1.0, 0.0]).unwrap();
        let pinned = apply_pin(&rho, &phi).unwrap();
        assert!(pinned
            .system_marginal()
            .matrix()
            .approx_eq(phi.matrix(), 1e-14));
        assert!(pinned
            .environment_marginal()
            .matrix()
            .approx_eq(rho.environment_marginal().matrix(), 1e-14));
        // On the preset family the environment marginal is I/2.
        assert!(pinned
            .environment_marginal()
            .matrix()
            .approx_eq(QubitState::maximally_mixed().matrix(), 1e-14));
    }

    #[test]
    fn pin_of_product_state_replaces_system() {
        let p = QubitState::from_bloch([0.1, 0.2, -0.3]).unwrap();
        let tau = QubitState::from_bloch([0.0, 0.4, 0.5]).unwrap();
        let product = BipartiteState::from_product(&p, &tau);
        let phi = QubitState::from_bloch([1.0, 0.0, 0.0]).unwrap();
        let pinned = apply_pin(&product, &phi).unwrap();
        assert!(pinned
            .matrix()
            .approx_eq(BipartiteState::from_product(&phi, &tau).matrix(), 1e-14));
    }

    #[test]
    fn pin_rejects_mixed_target() {
        let phi = QubitState::from_bloch([0.0, 0.0, 0.5]).unwrap();
        assert!(matches!(apply_pin(&rho_se(), &phi), Err(Error::NotPure(_))));
    }

    #[test]
    fn rotation_reaches_target() {
        let cases = [
            ([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]),
            ([0.0, 0.0, 1.0], [0.0, 0.0, -1.0]),
            ([1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]),
            ([0.6, 0.0, 0.8], [0.0, -1.0, 0.0]),
        ];
        for (from, to) in cases {
            let phi = QubitState::from_bloch(from).unwrap();
            let target = QubitState::from_bloch(to).unwrap();
            let v = rotation_for_target(&phi, &target).unwrap();
            assert!((&v.adjoint() * &v).approx_eq(&ComplexMatrix::identity(2), 1e-13));
            let moved = QubitState::new_unchecked(phi.matrix().conjugate_by(&v));
            assert!(moved.matrix().approx_eq(target.matrix(), 1e-12));
        }
        // Coincident states canonicalize to exactly the identity.
        let phi = QubitState::from_bloch([0.0, 1.0, 0.0]).unwrap();
        let v = rotation_for_target(&phi, &phi).unwrap();
        assert!(v.approx_eq(&ComplexMatrix::identity(2), 0.0));
    }

    #[test]
    fn erroneous_rotation_properties() {
        for eps in [0.0, 0.1, 0.5] {
            let v = erroneous_rotation(eps).unwrap();
            assert!((&v.adjoint() * &v).approx_eq(&ComplexMatrix::identity(2), 1e-13));
            let one = QubitState::from_bloch_unchecked([0.0, 0.0, -1.0]);
            let prepared = QubitState::new_unchecked(one.matrix().conjugate_by(&v));
            let want = [-(1.0 - eps * eps).sqrt(), 0.0, eps];
            let got = prepared.bloch();
            for j in 0..3 {
                assert!((got[j] - want[j]).abs() < 1e-13, "eps={eps}");
            }
        }
        assert!(matches!(
            erroneous_rotation(1.0),
            Err(Error::EpsilonRange(_))
        ));
    }

    #[test]
    fn ideal_pin_environment_is_constant_across_inputs() {
        let prep =
            Preparation::ideal_pin(QubitState::from_bloch([0.0, 0.0, 1.0]).unwrap()).unwrap();
        let rho = rho_se();
        let labels = [
            InputLabel::XMinus,
            InputLabel::XPlus,
            InputLabel::YPlus,
            InputLabel::ZPlus,
        ];
        let envs: Vec<_> = labels
            .iter()
            .map(|&l| {
                prepare_input(&prep, &rho, l)
                    .unwrap()
                    .environment_marginal()
            })
            .collect();
        for label in labels {
            let state = prepare_input(&prep, &rho, label).unwrap();
            assert!((state.matrix().trace() - c64(1.0, 0.0)).norm() < 1e-12);
            assert!(state.min_eigenvalue() > -POSITIVITY_TOL);
            assert!(state
                .system_marginal()
                .matrix()
                .approx_eq(intended_target(label).unwrap().matrix(), 1e-13));
        }
        for env in &envs[1..] {
            assert!(env.matrix().approx_eq(envs[0].matrix(), 1e-12));
        }
    }

    #[test]
    fn multi_pin_mixed_input_environment_differs() {
        let prep = Preparation::multi_pin();
        let rho = rho_se();
        let mixed = prepare_input(&prep, &rho, InputLabel::Mixed).unwrap();
        // Decohered route: the joint state is (I⊗I + I⊗σ3)/4.
        let want = &pauli(0).tensor(&pauli(0)).scale(c64(0.25, 0.0))
            + &pauli(0).tensor(&pauli(3)).scale(c64(0.25, 0.0));
        assert!(mixed.matrix().approx_eq(&want, 1e-13));

        let projector_env = prepare_input(&prep, &rho, InputLabel::ZPlus)
            .unwrap()
            .environment_marginal();
        let diff = mixed
            .environment_marginal()
            .matrix()
            .max_abs_diff(projector_env.matrix());
        assert!(diff >= 0.49, "environment inconsistency too small: {diff}");
    }

    #[test]
    fn correlated_family_matches_closed_form() {
        let (p, c23) = (0.4, 0.5);
        let prep = Preparation::correlated(p, c23).unwrap();
        let rho = rho_se();
        let state = prepare_input(&prep, &rho, InputLabel::ZPlus).unwrap();
        let want = &(&pauli(0).tensor(&pauli(0)) + &pauli(3).tensor(&pauli(0)).scale(c64(p, 0.0)))
            .scale(c64(0.25, 0.0))
            + &pauli(2).tensor(&pauli(3)).scale(c64(c23 / 4.0, 0.0));
        assert!(state.matrix().approx_eq(&want, 1e-13));
    }

    #[test]
    fn correlated_family_positivity_bound() {
        // 1 - p - |c23| < 0 makes the σ2-polarized input unphysical.
        assert!(Preparation::correlated(0.5, 0.5).is_ok());
        assert!(matches!(
            Preparation::correlated(0.9, 0.5),
            Err(Error::UnphysicalPreparation(_))
        ));
    }

    #[test]
    fn no_pin_preserves_spectrum() {
        let rho = rho_se();
        let prep = Preparation::no_pin(QubitState::from_bloch([1.0, 0.0, 0.0]).unwrap()).unwrap();
        let before = rho.matrix().hermitian_eigenvalues().unwrap();
        for label in [InputLabel::XMinus, InputLabel::YPlus, InputLabel::ZPlus] {
            let state = prepare_input(&prep, &rho, label).unwrap();
            let after = state.matrix().hermitian_eigenvalues().unwrap();
            for (a, b) in before.iter().zip(&after) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unknown_label_is_rejected() {
        let prep =
            Preparation::ideal_pin(QubitState::from_bloch([0.0, 0.0, 1.0]).unwrap()).unwrap();
        assert!(matches!(
            prepare_input(&prep, &rho_se(), InputLabel::Mixed),
            Err(Error::UnknownLabel(_))
        ));
    }
}
