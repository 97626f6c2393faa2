//! Property tests for the algebraic invariants: trace identities, dual-set
//! biorthogonality, unitarity and periodicity of the evolution, and
//! linearity of the exact reconstruction.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qpt::{
    c64, compute_duals, dual_operators, expand_in_inputs, pauli, process_output, standard_inputs,
    unitary, BipartiteState, ComplexMatrix, InputFamily, QubitState,
};

fn complex_entry() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| c64(re, im))
}

/// Random Hermitian 4x4 matrix with O(1) entries.
fn hermitian4() -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(complex_entry(), 16).prop_map(|v| {
        let raw = ComplexMatrix::from_fn(4, |r, c| v[4 * r + c]);
        raw.hermitian_part()
    })
}

/// Random unitary built from a product of complex plane rotations, so it is
/// unitary by construction rather than by numerics.
fn unitary4() -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((0.0..PI, 0.0..(2.0 * PI)), 12).prop_map(|angles| {
        let mut u = ComplexMatrix::identity(4);
        let mut idx = 0;
        for p in 0..4usize {
            for q in (p + 1)..4usize {
                let (theta, phi) = angles[idx];
                idx += 1;
                let mut g = ComplexMatrix::identity(4);
                let (ct, st) = (theta.cos(), theta.sin());
                g[(p, p)] = c64(ct, 0.0);
                g[(p, q)] = c64(st * phi.cos(), st * phi.sin());
                g[(q, p)] = c64(-st * phi.cos(), st * phi.sin());
                g[(q, q)] = c64(ct, 0.0);
                u = &u * &g;
            }
        }
        u
    })
}

fn bloch_in_ball() -> impl Strategy<Value = [f64; 3]> {
    ((-1.0..1.0f64), (-1.0..1.0f64), (-1.0..1.0f64))
        .prop_filter("inside the Bloch ball", |(x, y, z)| {
            x * x + y * y + z * z <= 1.0
        })
        .prop_map(|(x, y, z)| [x, y, z])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_preserves_trace(m in hermitian4()) {
        let traced = m.partial_trace_env().unwrap();
        prop_assert!((traced.trace() - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_is_adjoint_to_embedding(m in hermitian4(), v in bloch_in_ball()) {
        // tr((A ⊗ I) M) = tr(A Tr_E M)
        let a = QubitState::from_bloch(v).unwrap().matrix().clone();
        let lhs = (&a.tensor(&pauli(0)) * &m).trace();
        let rhs = (&a * &m.partial_trace_env().unwrap()).trace();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn spectrum_invariant_under_conjugation(m in hermitian4(), w in unitary4()) {
        let before = m.hermitian_eigenvalues().unwrap();
        let after = m.conjugate_by(&w).hermitian_eigenvalues().unwrap();
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalue_sum_is_trace(m in hermitian4()) {
        let eigs = m.hermitian_eigenvalues().unwrap();
        prop_assert!((eigs.iter().sum::<f64>() - m.trace().re).abs() < 1e-10);
    }

    #[test]
    fn bloch_round_trip(v in bloch_in_ball()) {
        let state = QubitState::from_bloch(v).unwrap();
        let w = state.bloch();
        for j in 0..3 {
            prop_assert!((v[j] - w[j]).abs() < 1e-15);
        }
    }

    #[test]
    fn duals_are_biorthogonal_for_every_polarization(p in 0.05..1.0f64) {
        let inputs = standard_inputs(InputFamily::Polarized(p)).unwrap();
        let duals = compute_duals(&inputs).unwrap();
        for (m, dual) in duals.duals().iter().enumerate() {
            for (n, state) in inputs.states().iter().enumerate() {
                let got = (&dual.adjoint() * state.matrix()).trace();
                let want = if m == n { 1.0 } else { 0.0 };
                prop_assert!((got - c64(want, 0.0)).norm() < 1e-10);
            }
        }
        // Unit-trace spanning set: duals sum to the identity.
        let mut sum = ComplexMatrix::zeros(2);
        for dual in duals.duals() {
            sum = &sum + dual;
        }
        prop_assert!(sum.approx_eq(&ComplexMatrix::identity(2), 1e-10));
    }

    #[test]
    fn expansion_reconstructs_the_state(v in bloch_in_ball(), p in 0.2..1.0f64) {
        for family in [InputFamily::Projectors, InputFamily::Polarized(p), InputFamily::MultiPin] {
            let inputs = standard_inputs(family).unwrap();
            let duals = compute_duals(&inputs).unwrap();
            let rho = QubitState::from_bloch(v).unwrap();
            let coeffs = expand_in_inputs(&rho, &inputs, &duals).unwrap();
            let mut rebuilt = ComplexMatrix::zeros(2);
            for (x, state) in coeffs.iter().zip(inputs.states()) {
                rebuilt = &rebuilt + &state.matrix().scale(c64(*x, 0.0));
            }
            prop_assert!(rebuilt.approx_eq(rho.matrix(), 1e-9));
        }
    }

    #[test]
    fn duals_of_duals_are_the_inputs(p in 0.2..1.0f64) {
        let inputs = standard_inputs(InputFamily::Polarized(p)).unwrap();
        let ops: Vec<ComplexMatrix> =
            inputs.states().iter().map(|s| s.matrix().clone()).collect();
        let duals = dual_operators(&ops).unwrap();
        let back = dual_operators(&duals).unwrap();
        for (a, b) in back.iter().zip(&ops) {
            prop_assert!(a.approx_eq(b, 1e-9));
        }
    }

    #[test]
    fn evolution_unitary_and_periodic(wt in 0.0..PI) {
        let ev = unitary(1.0, wt).unwrap();
        let u = ev.unitary();
        prop_assert!((&u.adjoint() * u).approx_eq(&ComplexMatrix::identity(4), 1e-12));

        // U(ωt + π) equals U(ωt) up to a global phase: |tr(U1† U2)| = 4.
        let shifted = unitary(1.0, wt + PI).unwrap();
        let overlap = (&u.adjoint() * shifted.unitary()).trace().norm();
        prop_assert!((overlap - 4.0).abs() < 1e-11);
    }

    #[test]
    fn outputs_periodic_and_isotropic(wt in 0.0..PI, v in bloch_in_ball()) {
        let prepared = BipartiteState::from_product(
            &QubitState::from_bloch(v).unwrap(),
            &QubitState::maximally_mixed(),
        );
        let out = process_output(&prepared, &unitary(1.0, wt).unwrap());
        // Period π in 2ωt, i.e. π/2 in ωt.
        let out_shifted = process_output(&prepared, &unitary(1.0, wt + PI / 2.0).unwrap());
        prop_assert!(out.matrix().approx_eq(out_shifted.matrix(), 1e-12));

        // All Bloch components shrink by the same cos²(2ωt).
        let c2 = (2.0 * wt).cos().powi(2);
        let got = out.bloch();
        for j in 0..3 {
            prop_assert!((got[j] - c2 * v[j]).abs() < 1e-12);
        }
        // Trace preserved and state physical.
        prop_assert!((out.matrix().trace() - c64(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(out.min_eigenvalue() > -1e-12);
    }

    #[test]
    fn rotations_between_random_pure_pairs(
        (a1, b1) in (0.0..PI, 0.0..(2.0 * PI)),
        (a2, b2) in (0.0..PI, 0.0..(2.0 * PI)),
    ) {
        let sphere = |theta: f64, phi: f64| {
            QubitState::from_bloch([
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ])
            .unwrap()
        };
        let phi_state = sphere(a1, b1);
        let target = sphere(a2, b2);
        let v = qpt::rotation_for_target(&phi_state, &target).unwrap();
        prop_assert!((&v.adjoint() * &v).approx_eq(&ComplexMatrix::identity(2), 1e-12));
        let moved = phi_state.matrix().conjugate_by(&v);
        prop_assert!(moved.approx_eq(target.matrix(), 1e-11));
    }

    #[test]
    fn prepared_states_have_unit_trace(v in bloch_in_ball(), c23 in -0.4..0.4f64) {
        use qpt::{initial_state, prepare_input, InputLabel, Preparation};
        let rho_se = match initial_state(v, c23) {
            Ok(s) => s,
            Err(_) => return Ok(()), // skip unphysical parameter draws
        };
        let preparations = vec![
            Preparation::ideal_pin(QubitState::from_bloch([0.0, 0.0, 1.0]).unwrap()).unwrap(),
            Preparation::control_error(0.1).unwrap(),
            Preparation::mixed_pin(0.7).unwrap(),
            Preparation::correlated(0.5, 0.4).unwrap(),
            Preparation::multi_pin(),
            Preparation::no_pin(QubitState::from_bloch([1.0, 0.0, 0.0]).unwrap()).unwrap(),
        ];
        for prep in &preparations {
            let labels: &[InputLabel] = if matches!(prep, Preparation::MultiPin { .. }) {
                &[InputLabel::Mixed, InputLabel::XPlus, InputLabel::YPlus, InputLabel::ZPlus]
            } else {
                &[InputLabel::XMinus, InputLabel::XPlus, InputLabel::YPlus, InputLabel::ZPlus]
            };
            for &label in labels {
                let state = prepare_input(prep, &rho_se, label).unwrap();
                prop_assert!((state.matrix().trace() - c64(1.0, 0.0)).norm() < 1e-12);
                // Pin-based preparations always give physical states.
                if matches!(
                    prep,
                    Preparation::IdealPin { .. }
                        | Preparation::MixedPin { .. }
                        | Preparation::MultiPin { .. }
                ) {
                    prop_assert!(state.min_eigenvalue() > -1e-10);
                }
            }
        }
    }

    #[test]
    fn physicality_iff_inside_ball(x in -1.5..1.5f64, y in -1.5..1.5f64, z in -1.5..1.5f64) {
        let norm = (x * x + y * y + z * z).sqrt();
        let result = QubitState::from_bloch([x, y, z]);
        if norm <= 1.0 {
            prop_assert!(result.is_ok());
        } else if norm > 1.0 + 1e-9 {
            prop_assert!(result.is_err());
            // The unchecked route still builds it, with a negative eigenvalue.
            let state = QubitState::from_bloch_unchecked([x, y, z]);
            prop_assert!(state.min_eigenvalue() < 0.0);
        }
    }
}
