use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_4;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::argument_observable;
use crate::hilbert::{StateVector, C64, MAX_OPERATOR_DIM};
use crate::measurement::{measure, SemanticsMode};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverResult {
    pub found: u64,
    pub found_is_marked: bool,
    pub iterations: usize,
    /// Exact Born probability of the marked set before readout.
    pub success_probability: f64,
}

/// `⌊(π/4) √(2^n / M)⌋`
pub fn grover_iterations(n: usize, marked: usize) -> usize {
    let ratio = (1u64 << n) as f64 / marked as f64;
    (FRAC_PI_4 * ratio.sqrt()).floor() as usize
}

/// `sin²((2k+1)θ)` with `θ = arcsin √(M / 2^n)`.
pub fn grover_closed_form(n: usize, marked: usize, iterations: usize) -> f64 {
    let theta = (marked as f64 / (1u64 << n) as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// State after `iterations` rounds of phase flip and inversion about the mean,
/// starting from the uniform superposition.
pub fn grover_state(n: usize, marked: &[u64], iterations: usize) -> Result<StateVector> {
    let marked = validate(n, marked)?;
    let size = 1usize << n;
    let mut amps = vec![1.0 / (size as f64).sqrt(); size];
    for _ in 0..iterations {
        for &m in &marked {
            amps[m as usize] = -amps[m as usize];
        }
        let mean = amps.iter().sum::<f64>() / size as f64;
        for a in &mut amps {
            *a = 2.0 * mean - *a;
        }
    }
    StateVector::normalized(amps.into_iter().map(|a| C64::new(a, 0.0)).collect(), vec![size])
}

pub fn grover<R: Rng + ?Sized>(
    n: usize,
    marked: &[u64],
    mode: SemanticsMode,
    rng: &mut R,
) -> Result<GroverResult> {
    let set = validate(n, marked)?;
    let iterations = grover_iterations(n, set.len());
    let psi = grover_state(n, marked, iterations)?;
    let success_probability = set
        .iter()
        .map(|&m| psi.amplitude(m as usize).norm_sqr())
        .sum();
    let outcome = measure(&argument_observable(n)?, &psi, mode, rng)?;
    let found = outcome.eigenvalue as u64;
    Ok(GroverResult {
        found,
        found_is_marked: set.contains(&found),
        iterations,
        success_probability,
    })
}

fn validate(n: usize, marked: &[u64]) -> Result<BTreeSet<u64>> {
    if n == 0 || 1usize.checked_shl(n as u32).is_none_or(|d| d > MAX_OPERATOR_DIM) {
        return Err(Error::InvalidWidth(n));
    }
    let size = 1u64 << n;
    let set: BTreeSet<u64> = marked.iter().copied().collect();
    if set.len() != marked.len() {
        return Err(Error::InvalidMarkedSet("duplicate indices".into()));
    }
    if let Some(&bad) = set.iter().find(|&&m| m >= size) {
        return Err(Error::InvalidMarkedSet(format!("index {bad} >= 2^{n}")));
    }
    if set.is_empty() || set.len() as u64 >= size {
        return Err(Error::InvalidMarkedSet(format!(
            "need 1 <= |marked| < {size}, got {}",
            set.len()
        )));
    }
    Ok(set)
}
