//! Finite-dimensional complex Hilbert-space primitives.
//!
//! Composite spaces are ordered big-endian: the leftmost subsystem is the
//! most significant index.

mod observable;
mod spectral;
mod state;

pub use num_complex::Complex64 as C64;
pub use observable::{tensor_op, Observable};
pub use spectral::{hermitian_deviation, spectral_decompose, EigenBasis, Eigenspace, SpectralDecomposition};
pub use state::{phase_equal, tensor_state, StateVector};

pub(crate) use state::split_around;

use crate::{Error, Result};

/// Tolerance on the Euclidean norm of a state.
pub const NORM_TOL: f64 = 1e-10;
/// Entrywise tolerance on `M - M^†`.
pub const HERM_TOL: f64 = 1e-10;
/// Eigenvalues closer than this are treated as one degenerate eigenvalue.
pub const DEGEN_TOL: f64 = 1e-9;
/// Largest operator dimension (2^12).
pub const MAX_OPERATOR_DIM: usize = 1 << 12;
/// Largest state dimension (2^16, enough for Simon's algorithm at n = 8).
pub const MAX_STATE_DIM: usize = 1 << 16;

fn check_dims(dims: &[usize], len: usize, max: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch {
            expected: len,
            actual: 0,
        });
    }
    let product = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .unwrap_or(usize::MAX);
    if product != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            actual: product,
        });
    }
    if len > max {
        return Err(Error::DimensionTooLarge { dim: len, max });
    }
    Ok(())
}
