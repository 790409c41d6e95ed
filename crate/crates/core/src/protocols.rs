//! Single-qubit teleportation over a shared `|Φ+>` pair.
//!
//! Alice holds qubits 0 (the input) and 1; Bob holds qubit 2. Alice's Bell
//! measurement is the operator `Σ k |B_k><B_k|` on her two qubits, lifted
//! to the three-qubit space where every eigenvalue has multiplicity 2. Under
//! Lüders' rule the protocol goes through; under the strict rule it stops at
//! that measurement with a [`DegeneracyReport`].

use std::fmt;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::hilbert::{Observable, StateVector, C64};
use crate::measurement::{measure_forced, sample_index, born_distribution, MeasurementOutcome, SemanticsMode};
use crate::{Error, Result};

/// Fidelity tolerance for the teleported state.
pub const FIDELITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellKind {
    #[serde(rename = "Phi+")]
    PhiPlus,
    #[serde(rename = "Phi-")]
    PhiMinus,
    #[serde(rename = "Psi+")]
    PsiPlus,
    #[serde(rename = "Psi-")]
    PsiMinus,
}

impl BellKind {
    /// In eigenvalue order of [`bell_basis_observable`].
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    /// Eigenvalue of this state under the Bell-basis observable.
    pub fn label(self) -> usize {
        self as usize
    }

    pub fn from_label(label: usize) -> Option<Self> {
        Self::ALL.get(label).copied()
    }

    /// Two-bit classical message: `00, 01, 10, 11` for `Φ+, Φ-, Ψ+, Ψ-`.
    pub fn bits(self) -> [bool; 2] {
        let k = self.label();
        [k & 2 != 0, k & 1 != 0]
    }

    pub fn bit_string(self) -> String {
        self.bits().iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bits(bits: [bool; 2]) -> Self {
        Self::ALL[(bits[0] as usize) << 1 | bits[1] as usize]
    }

    pub fn name(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "Phi+",
            BellKind::PhiMinus => "Phi-",
            BellKind::PsiPlus => "Psi+",
            BellKind::PsiMinus => "Psi-",
        }
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Bob's correction, named by its Pauli product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Correction {
    #[serde(rename = "I")]
    Identity,
    #[serde(rename = "sigma3")]
    Sigma3,
    #[serde(rename = "sigma1")]
    Sigma1,
    #[serde(rename = "sigma3sigma1")]
    Sigma3Sigma1,
}

impl Correction {
    pub fn for_outcome(kind: BellKind) -> Self {
        match kind {
            BellKind::PhiPlus => Correction::Identity,
            BellKind::PhiMinus => Correction::Sigma3,
            BellKind::PsiPlus => Correction::Sigma1,
            BellKind::PsiMinus => Correction::Sigma3Sigma1,
        }
    }

    pub fn matrix(self) -> DMatrix<C64> {
        let r = |v: [f64; 4]| DMatrix::from_row_slice(2, 2, &v.map(|x| C64::new(x, 0.0)));
        match self {
            Correction::Identity => r([1.0, 0.0, 0.0, 1.0]),
            Correction::Sigma3 => r([1.0, 0.0, 0.0, -1.0]),
            Correction::Sigma1 => r([0.0, 1.0, 1.0, 0.0]),
            // σ3σ1 = iσ2
            Correction::Sigma3Sigma1 => r([0.0, 1.0, -1.0, 0.0]),
        }
    }
}

/// Spectrum summary of the observable that blocked a strict measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub dimension: usize,
    pub distinct_eigenvalues: usize,
    pub multiplicities: Vec<usize>,
}

impl DegeneracyReport {
    pub fn of(observable: &Observable) -> Self {
        let spectrum = observable.spectrum();
        Self {
            dimension: observable.dim(),
            distinct_eigenvalues: spectrum.len(),
            multiplicities: spectrum.multiplicities(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportResult {
    pub mode: SemanticsMode,
    pub outcome_kind: BellKind,
    pub classical_bits: [bool; 2],
    /// Born probability of Alice's outcome.
    pub probability: f64,
    /// Bob's qubit after Alice's measurement; absent when blocked.
    pub bob_state_before_correction: Option<StateVector>,
    pub correction: Correction,
    pub bob_state_after_correction: Option<StateVector>,
    /// `|<ψ_in|ψ_Bob>|²` after correction; absent when blocked.
    pub fidelity: Option<f64>,
    pub blocked: Option<DegeneracyReport>,
}

impl TeleportResult {
    pub fn is_blocked(&self) -> bool {
        self.blocked.is_some()
    }
}

pub fn bell_state(kind: BellKind) -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match kind {
        BellKind::PhiPlus => [h, 0.0, 0.0, h],
        BellKind::PhiMinus => [h, 0.0, 0.0, -h],
        BellKind::PsiPlus => [0.0, h, h, 0.0],
        BellKind::PsiMinus => [0.0, h, -h, 0.0],
    };
    StateVector::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect(), vec![2, 2])
        .expect("Bell states are normalized")
}

/// `Σ k |B_k><B_k|` with `k = 0, 1, 2, 3` on `Φ+, Φ-, Ψ+, Ψ-`.
pub fn bell_basis_observable() -> Observable {
    let pairs: Vec<(f64, StateVector)> = BellKind::ALL
        .iter()
        .map(|&k| (k.label() as f64, bell_state(k)))
        .collect();
    Observable::from_spectrum(&pairs).expect("Bell projectors are Hermitian")
}

pub fn correction_gate(kind: BellKind) -> DMatrix<C64> {
    Correction::for_outcome(kind).matrix()
}

/// Teleportation runner holding the lifted Bell observable.
#[derive(Debug, Clone)]
pub struct Teleporter {
    alice: Observable,
}

impl Default for Teleporter {
    fn default() -> Self {
        Self::new()
    }
}

impl Teleporter {
    pub fn new() -> Self {
        let alice = bell_basis_observable()
            .tensor(&Observable::identity(vec![2]).expect("valid dims"))
            .expect("8-dimensional");
        // eigen-decompose once up front
        alice.spectrum();
        Self { alice }
    }

    /// Alice's measurement on the three-qubit space.
    pub fn alice_observable(&self) -> &Observable {
        &self.alice
    }

    /// `ψ_in ⊗ |Φ+>`
    pub fn initial_state(psi_in: &StateVector) -> Result<StateVector> {
        check_qubit(psi_in)?;
        Ok(psi_in.tensor(&bell_state(BellKind::PhiPlus)))
    }

    /// Exact Born probability of each Bell outcome, in [`BellKind::ALL`] order.
    pub fn outcome_probabilities(&self, psi_in: &StateVector) -> Result<Vec<f64>> {
        born_distribution(&self.alice, &Self::initial_state(psi_in)?)
    }

    pub fn run<R: Rng + ?Sized>(
        &self,
        psi_in: &StateVector,
        mode: SemanticsMode,
        rng: &mut R,
    ) -> Result<TeleportResult> {
        let probs = self.outcome_probabilities(psi_in)?;
        let index = sample_index(&probs, rng);
        self.run_forced(psi_in, mode, BellKind::ALL[index])
    }

    /// Runs the protocol with Alice's outcome fixed to `kind`.
    pub fn run_forced(
        &self,
        psi_in: &StateVector,
        mode: SemanticsMode,
        kind: BellKind,
    ) -> Result<TeleportResult> {
        let total = Self::initial_state(psi_in)?;
        let index = self
            .alice
            .spectrum()
            .index_of(kind.label() as f64)
            .expect("Bell observable has eigenvalues 0..3");
        let outcome = measure_forced(&self.alice, &total, mode, index)?;
        let correction = Correction::for_outcome(kind);
        let mut result = TeleportResult {
            mode,
            outcome_kind: kind,
            classical_bits: kind.bits(),
            probability: outcome.probability,
            bob_state_before_correction: None,
            correction,
            bob_state_after_correction: None,
            fidelity: None,
            blocked: None,
        };
        match outcome {
            MeasurementOutcome {
                determined: true,
                post_state: Some(post),
                ..
            } => {
                let bob = bob_factor(&post, kind)?;
                let after = bob.apply_local(&correction.matrix(), 0)?;
                result.fidelity = Some(psi_in.fidelity(&after)?);
                result.bob_state_before_correction = Some(bob);
                result.bob_state_after_correction = Some(after);
            }
            _ => result.blocked = Some(DegeneracyReport::of(&self.alice)),
        }
        Ok(result)
    }
}

/// Runs the protocol once, sampling Alice's outcome from `rng`.
pub fn teleport<R: Rng + ?Sized>(
    psi_in: &StateVector,
    mode: SemanticsMode,
    rng: &mut R,
) -> Result<TeleportResult> {
    shared().run(psi_in, mode, rng)
}

/// Runs the protocol with Alice's outcome fixed to `kind`.
pub fn teleport_forced(psi_in: &StateVector, mode: SemanticsMode, kind: BellKind) -> Result<TeleportResult> {
    shared().run_forced(psi_in, mode, kind)
}

fn shared() -> &'static Teleporter {
    static TELEPORTER: OnceLock<Teleporter> = OnceLock::new();
    TELEPORTER.get_or_init(Teleporter::new)
}

/// Bob's qubit `(<B_k| ⊗ I) ψ` from a post-measurement state `|B_k> ⊗ φ`.
fn bob_factor(post: &StateVector, kind: BellKind) -> Result<StateVector> {
    let bell = bell_state(kind);
    let mut bob = [C64::new(0.0, 0.0); 2];
    for (a, coeff) in bell.amplitudes().iter().enumerate() {
        for (b, slot) in bob.iter_mut().enumerate() {
            *slot += coeff.conj() * post.amplitude(a * 2 + b);
        }
    }
    StateVector::new(bob.to_vec(), vec![2])
}

fn check_qubit(psi: &StateVector) -> Result<()> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: psi.dim(),
        });
    }
    Ok(())
}
