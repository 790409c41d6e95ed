use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gf2::{gf2_solve, Gf2System};
use super::oracle::SimonOracle;
use super::{argument_observable, walsh_hadamard};
use crate::hilbert::{StateVector, C64, MAX_STATE_DIM};
use crate::measurement::{partial_distribution, partial_measure, SemanticsMode};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimonResult {
    pub period: u64,
    /// Argument-register readouts, in sampling order.
    pub samples: Vec<u64>,
}

/// Output state over (argument, function) registers, dims `[2^n, 2^n]`:
/// `(1/2^n) Σ_k Σ_j (-1)^{j·k} |j> ⊗ |f(k)>`.
pub fn simon_final_state(oracle: &SimonOracle) -> Result<StateVector> {
    let n = oracle.n();
    let size = 1usize << n;
    if size * size > MAX_STATE_DIM {
        return Err(Error::DimensionTooLarge {
            dim: size * size,
            max: MAX_STATE_DIM,
        });
    }
    // preimages of each function value
    let mut buckets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (k, &y) in oracle.table().values().iter().enumerate() {
        buckets.entry(y).or_default().push(k);
    }
    let scale = 1.0 / size as f64;
    let mut amplitudes = vec![C64::new(0.0, 0.0); size * size];
    let mut column = vec![0.0; size];
    for (&y, preimages) in &buckets {
        column.iter_mut().for_each(|c| *c = 0.0);
        for &k in preimages {
            column[k] = 1.0;
        }
        walsh_hadamard(&mut column);
        for (j, &v) in column.iter().enumerate() {
            amplitudes[j * size + y as usize] = C64::new(v * scale, 0.0);
        }
    }
    StateVector::new(amplitudes, vec![size, size])
}

/// Exact distribution of the argument-register readout.
pub fn simon_distribution(oracle: &SimonOracle) -> Result<Vec<f64>> {
    let psi = simon_final_state(oracle)?;
    partial_distribution(&argument_observable(oracle.n())?, 0, &psi)
}

/// Samples the argument register until the samples span an (n-1)-dimensional
/// space, then returns the nonzero vector orthogonal to all of them.
pub fn simon<R: Rng + ?Sized>(
    oracle: &SimonOracle,
    mode: SemanticsMode,
    rng: &mut R,
    max_samples: usize,
) -> Result<SimonResult> {
    let n = oracle.n();
    let psi = simon_final_state(oracle)?;
    let readout = argument_observable(n)?;
    let mut system = Gf2System::new(n)?;
    let mut samples = Vec::new();
    while system.rank() < n - 1 {
        if samples.len() >= max_samples {
            return Err(Error::RankDeficient {
                samples: samples.len(),
                needed: n - 1,
            });
        }
        let outcome = partial_measure(&readout, 0, &psi, mode, rng)?;
        let j = outcome.eigenvalue as u64;
        system.push(j)?;
        samples.push(j);
    }
    let solution = gf2_solve(&system)?;
    debug_assert!(solution.unique);
    Ok(SimonResult {
        period: solution.vector,
        samples,
    })
}
