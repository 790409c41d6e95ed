//! Deutsch-Jozsa, Simon and Grover, each read out by a diagonal observable on
//! the argument register that is nondegenerate on that register.

mod deutsch_jozsa;
pub mod gf2;
mod grover;
mod oracle;
mod simon;

pub use deutsch_jozsa::{deutsch_jozsa, dj_distribution, dj_final_state, DjResult};
pub use gf2::{gf2_solve, Gf2Solution, Gf2System};
pub use grover::{grover, grover_closed_form, grover_iterations, grover_state, GroverResult};
pub use oracle::{BooleanOracle, DjKind, DjOracle, SimonOracle, MAX_ORACLE_WIDTH};
pub use simon::{simon, simon_distribution, simon_final_state, SimonResult};

use crate::hilbert::{Observable, MAX_OPERATOR_DIM};
use crate::{Error, Result};

/// `Σ z |z><z|` on an `n`-qubit register.
pub fn argument_observable(n: usize) -> Result<Observable> {
    if n == 0 || 1usize.checked_shl(n as u32).is_none_or(|d| d > MAX_OPERATOR_DIM) {
        return Err(Error::InvalidWidth(n));
    }
    Observable::diagonal((0..1u64 << n).map(|z| z as f64).collect(), vec![1 << n])
}

/// In-place unnormalized Walsh-Hadamard transform:
/// `out[z] = Σ_x (-1)^{x·z} data[x]`.
pub(crate) fn walsh_hadamard(data: &mut [f64]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (data[i], data[i + h]);
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_observable_examples() {
        let one = argument_observable(1).unwrap();
        assert_eq!(one.as_diagonal().unwrap(), &[0.0, 1.0]);
        let two = argument_observable(2).unwrap();
        assert_eq!(two.as_diagonal().unwrap(), &[0.0, 1.0, 2.0, 3.0]);
        assert!(!two.spectrum().is_degenerate());
        assert!(argument_observable(0).is_err());
        assert!(argument_observable(13).is_err());
    }

    #[test]
    fn lifted_argument_observable_is_degenerate() {
        let lifted = crate::measurement::lift(&argument_observable(2).unwrap(), 0, &[4, 2]).unwrap();
        assert_eq!(lifted.spectrum().multiplicities(), vec![2; 4]);
    }

    #[test]
    fn walsh_hadamard_matches_sum() {
        let data = [1.0, -2.0, 0.5, 3.0, 0.0, 1.0, -1.0, 2.0];
        let mut fast = data;
        walsh_hadamard(&mut fast);
        for (z, got) in fast.iter().enumerate() {
            let want: f64 = data
                .iter()
                .enumerate()
                .map(|(x, v)| if gf2::dot(x as u64, z as u64) { -v } else { *v })
                .sum();
            assert!((got - want).abs() < 1e-12);
        }
    }
}
