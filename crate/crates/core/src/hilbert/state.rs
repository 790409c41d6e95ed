use std::fmt;

use nalgebra::DMatrix;

use super::{check_dims, C64, MAX_STATE_DIM, NORM_TOL};
use crate::{Error, Result};

/// Normalized pure state on a composite space.
///
/// Amplitudes are indexed big-endian over `dims`: the leftmost subsystem is
/// the most significant digit, so `|a> ⊗ |b>` has amplitude `a_i b_j` at
/// `i * dims[1] + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    dims: Vec<usize>,
}

impl StateVector {
    /// Builds a state, requiring the Euclidean norm to be 1 within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len(), MAX_STATE_DIM)?;
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dims })
    }

    /// Builds a state after rescaling `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len(), MAX_STATE_DIM)?;
        let norm = l2_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { amplitudes, dims })
    }

    /// Computational basis state `|index>`.
    pub fn basis(index: usize, dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self::new(amplitudes, dims)
    }

    /// Single qubit `alpha|0> + beta|1>`; must already be normalized.
    pub fn qubit(alpha: C64, beta: C64) -> Result<Self> {
        Self::new(vec![alpha, beta], vec![2])
    }

    /// `(|0> + |1>) / √2`
    pub fn plus() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            amplitudes: vec![h, h],
            dims: vec![2],
        }
    }

    pub fn zero() -> Self {
        Self {
            amplitudes: vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            dims: vec![2],
        }
    }

    pub fn one() -> Self {
        Self {
            amplitudes: vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            dims: vec![2],
        }
    }

    /// Uniform superposition over all basis states of `dims`.
    pub fn uniform(dims: Vec<usize>) -> Result<Self> {
        let dim: usize = dims.iter().product();
        check_dims(&dims, dim, MAX_STATE_DIM)?;
        let a = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            amplitudes: vec![a; dim],
            dims,
        })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total dimension (product of `dims`).
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Kronecker product `self ⊗ other`; dims are concatenated.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        StateVector { amplitudes, dims }
    }

    /// Same amplitudes, reinterpreted over a different factorization.
    pub fn regroup(&self, dims: Vec<usize>) -> Result<StateVector> {
        check_dims(&dims, self.dim(), MAX_STATE_DIM)?;
        Ok(StateVector {
            amplitudes: self.amplitudes.clone(),
            dims,
        })
    }

    /// Multiplies by a global phase so the first nonzero amplitude is real and positive.
    pub fn phase_normalized(&self) -> StateVector {
        let lead = self
            .amplitudes
            .iter()
            .copied()
            .find(|a| a.norm() > NORM_TOL)
            .unwrap_or(C64::new(1.0, 0.0));
        let phase = lead.conj() / lead.norm();
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
            dims: self.dims.clone(),
        }
    }

    /// True when the states agree up to a global phase: `|<a|b>| >= 1 - tol`.
    pub fn phase_equal(&self, other: &StateVector, tol: f64) -> Result<bool> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self.inner(other)?.norm() >= 1.0 - tol)
    }

    /// Applies a unitary acting on one subsystem.
    pub fn apply_local(&self, unitary: &DMatrix<C64>, subsystem: usize) -> Result<StateVector> {
        let d = *self.dims.get(subsystem).ok_or(Error::IndexOutOfRange {
            index: subsystem,
            len: self.dims.len(),
        })?;
        if unitary.nrows() != d || unitary.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: unitary.nrows(),
            });
        }
        let (left, right) = split_around(&self.dims, subsystem);
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for l in 0..left {
            for r in 0..right {
                let at = |m: usize| (l * d + m) * right + r;
                for row in 0..d {
                    let mut acc = C64::new(0.0, 0.0);
                    for col in 0..d {
                        acc += unitary[(row, col)] * self.amplitudes[at(col)];
                    }
                    out[at(row)] = acc;
                }
            }
        }
        StateVector::new(out, self.dims.clone())
    }
}

impl fmt::Display for StateVector {
    /// Sparse ket listing, e.g. `0.7071|00> + 0.7071|11>` for qubit dims.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a.im.abs() < 1e-12 {
                write!(f, "{:.4}", a.re)?;
            } else {
                write!(f, "({:.4}{:+.4}i)", a.re, a.im)?;
            }
            write!(f, "|{}>", ket_label(i, &self.dims))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Kronecker product of two states. See [`StateVector::tensor`].
pub fn tensor_state(a: &StateVector, b: &StateVector) -> StateVector {
    a.tensor(b)
}

/// Global-phase-insensitive comparison. See [`StateVector::phase_equal`].
pub fn phase_equal(a: &StateVector, b: &StateVector, tol: f64) -> Result<bool> {
    a.phase_equal(b, tol)
}

pub(crate) fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Products of the dimensions left and right of `subsystem`.
pub(crate) fn split_around(dims: &[usize], subsystem: usize) -> (usize, usize) {
    let left = dims[..subsystem].iter().product();
    let right = dims[subsystem + 1..].iter().product();
    (left, right)
}

fn ket_label(mut index: usize, dims: &[usize]) -> String {
    let mut digits = Vec::with_capacity(dims.len());
    for &d in dims.iter().rev() {
        digits.push(index % d);
        index /= d;
    }
    digits.reverse();
    if dims.iter().all(|&d| d <= 10) {
        digits.iter().map(|d| d.to_string()).collect()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
