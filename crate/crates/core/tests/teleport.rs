mod common;

use common::{random_complex, rng};
use postulate::hilbert::{StateVector, C64};
use postulate::measurement::{measure_forced, SemanticsMode};
use postulate::protocols::{bell_state, teleport, teleport_forced, BellKind, Correction, Teleporter};

fn ket(bits: &[f64]) -> StateVector {
    StateVector::new(bits.iter().map(|&x| C64::new(x, 0.0)).collect(), vec![2, 2]).unwrap()
}

fn combo(a: &StateVector, b: &StateVector, sign: f64) -> Vec<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x + y * sign) * h)
        .collect()
}

fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
}

#[test]
fn product_basis_in_bell_basis() {
    use BellKind::*;
    let b = bell_state;
    assert!(close(ket(&[1.0, 0.0, 0.0, 0.0]).amplitudes(), &combo(&b(PhiPlus), &b(PhiMinus), 1.0), 1e-12));
    assert!(close(ket(&[0.0, 1.0, 0.0, 0.0]).amplitudes(), &combo(&b(PsiPlus), &b(PsiMinus), 1.0), 1e-12));
    assert!(close(ket(&[0.0, 0.0, 1.0, 0.0]).amplitudes(), &combo(&b(PsiPlus), &b(PsiMinus), -1.0), 1e-12));
    assert!(close(ket(&[0.0, 0.0, 0.0, 1.0]).amplitudes(), &combo(&b(PhiPlus), &b(PhiMinus), -1.0), 1e-12));
}

fn random_qubit(r: &mut impl rand::Rng) -> (C64, C64, StateVector) {
    let psi = StateVector::normalized(vec![random_complex(r), random_complex(r)], vec![2]).unwrap();
    (psi.amplitude(0), psi.amplitude(1), psi)
}

#[test]
fn forced_outcomes_reproduce_collapse_table() {
    let teleporter = Teleporter::new();
    let mut r = rng(2024);
    for _ in 0..100 {
        let (a, b, psi) = random_qubit(&mut r);
        let total = Teleporter::initial_state(&psi).unwrap();
        let expected_bob = [[a, b], [a, -b], [b, a], [-b, a]];
        for (kind, bob) in BellKind::ALL.iter().zip(expected_bob) {
            let bob = StateVector::new(bob.to_vec(), vec![2]).unwrap();
            let expected = bell_state(*kind).tensor(&bob).regroup(vec![2, 2, 2]).unwrap();
            let index = teleporter.alice_observable().spectrum().index_of(kind.label() as f64).unwrap();
            let outcome = measure_forced(teleporter.alice_observable(), &total, SemanticsMode::Lueders, index).unwrap();
            assert!(outcome.post_state.unwrap().phase_equal(&expected, 1e-10).unwrap());
            assert!((outcome.probability - 0.25).abs() < 1e-10);
        }
    }
}

#[test]
fn lueders_teleportation_has_unit_fidelity() {
    let mut r = rng(99);
    for _ in 0..1000 {
        let (_, _, psi) = random_qubit(&mut r);
        for kind in BellKind::ALL {
            let result = teleport_forced(&psi, SemanticsMode::Lueders, kind).unwrap();
            assert!((result.fidelity.unwrap() - 1.0).abs() < 1e-10);
            assert!((result.probability - 0.25).abs() < 1e-10);
            assert_eq!(result.correction, Correction::for_outcome(kind));
            assert_eq!(result.classical_bits, kind.bits());
        }
    }
}

#[test]
fn strict_teleportation_is_blocked() {
    let mut r = rng(5);
    for _ in 0..50 {
        let (_, _, psi) = random_qubit(&mut r);
        let result = teleport(&psi, SemanticsMode::StrictVonNeumann, &mut r).unwrap();
        let report = result.blocked.expect("blocked");
        assert_eq!(report.dimension, 8);
        assert_eq!(report.multiplicities, vec![2, 2, 2, 2]);
        assert!(result.bob_state_after_correction.is_none());
        assert!(result.fidelity.is_none());
    }
}

#[test]
fn sampled_outcomes_are_uniform() {
    let mut r = rng(17);
    let psi = StateVector::normalized(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)], vec![2]).unwrap();
    let mut counts = [0usize; 4];
    let trials = 20_000;
    for _ in 0..trials {
        counts[teleport(&psi, SemanticsMode::Lueders, &mut r).unwrap().outcome_kind.label()] += 1;
    }
    for c in counts {
        assert!((c as f64 / trials as f64 - 0.25).abs() < 0.02);
    }
}
