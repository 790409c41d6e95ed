use rand::Rng;
use serde::{Deserialize, Serialize};

use super::oracle::{DjKind, DjOracle};
use super::{argument_observable, walsh_hadamard};
use crate::hilbert::{StateVector, C64};
use crate::measurement::{partial_distribution, partial_measure, SemanticsMode};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DjResult {
    pub verdict: DjKind,
    /// Sampled argument-register value.
    pub measured: u64,
    /// Exact Born probability of `z = 0`.
    pub probability_zero: f64,
    /// Whether the composite post-state was determined under the mode.
    pub determined: bool,
}

/// Output state over (argument register, ancilla), dims `[2^n, 2]`:
/// `Σ_z (1/2^n) Σ_x (-1)^{x·z + f(x)} |z> ⊗ (|0> - |1>)/√2`.
pub fn dj_final_state(oracle: &DjOracle) -> Result<StateVector> {
    let n = oracle.n();
    let scale = 1.0 / (1u64 << n) as f64;
    let mut arg: Vec<f64> = oracle
        .table()
        .values()
        .iter()
        .map(|&f| if f == 1 { -1.0 } else { 1.0 })
        .collect();
    walsh_hadamard(&mut arg);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amplitudes = arg
        .iter()
        .flat_map(|&a| [C64::new(a * scale * h, 0.0), C64::new(-a * scale * h, 0.0)])
        .collect();
    StateVector::new(amplitudes, vec![1 << n, 2])
}

/// Exact distribution of the argument-register readout.
pub fn dj_distribution(oracle: &DjOracle) -> Result<Vec<f64>> {
    let psi = dj_final_state(oracle)?;
    partial_distribution(&argument_observable(oracle.n())?, 0, &psi)
}

/// Reads the argument register; `z = 0` means constant.
pub fn deutsch_jozsa<R: Rng + ?Sized>(
    oracle: &DjOracle,
    mode: SemanticsMode,
    rng: &mut R,
) -> Result<DjResult> {
    let psi = dj_final_state(oracle)?;
    let readout = argument_observable(oracle.n())?;
    let probability_zero = partial_distribution(&readout, 0, &psi)?[0];
    let outcome = partial_measure(&readout, 0, &psi, mode, rng)?;
    let measured = outcome.eigenvalue as u64;
    Ok(DjResult {
        verdict: if measured == 0 {
            DjKind::Constant
        } else {
            DjKind::Balanced
        },
        measured,
        probability_zero,
        determined: outcome.determined,
    })
}
