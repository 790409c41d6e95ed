use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use super::spectral::{hermitian_deviation, spectral_decompose, SpectralDecomposition};
use super::{check_dims, C64, HERM_TOL, MAX_OPERATOR_DIM};
use crate::{Error, Result, StateVector};

#[derive(Debug, Clone)]
enum Repr {
    Dense(DMatrix<C64>),
    Diagonal(Vec<f64>),
}

/// Hermitian operator over a space with declared subsystem dimensions.
///
/// The spectral decomposition is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct Observable {
    repr: Repr,
    dims: Vec<usize>,
    spectrum: OnceLock<SpectralDecomposition>,
}

impl PartialEq for Observable {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.matrix() == other.matrix()
    }
}

impl Observable {
    /// Validates squareness, dims and hermiticity within [`HERM_TOL`].
    pub fn new(matrix: DMatrix<C64>, dims: Vec<usize>) -> Result<Self> {
        let deviation = hermitian_deviation(&matrix)?;
        check_dims(&dims, matrix.nrows(), MAX_OPERATOR_DIM)?;
        if deviation > HERM_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            repr: Repr::Dense(matrix),
            dims,
            spectrum: OnceLock::new(),
        })
    }

    /// Real diagonal operator `Σ values[i] |i><i|`.
    pub fn diagonal(values: Vec<f64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, values.len(), MAX_OPERATOR_DIM)?;
        Ok(Self {
            repr: Repr::Diagonal(values),
            dims,
            spectrum: OnceLock::new(),
        })
    }

    pub fn identity(dims: Vec<usize>) -> Result<Self> {
        let dim = dims.iter().product();
        Self::diagonal(vec![1.0; dim], dims)
    }

    /// `Σ λ_k |v_k><v_k|` over the given (eigenvalue, state) pairs.
    ///
    /// The states are expected to be orthonormal; only hermiticity is
    /// enforced.
    pub fn from_spectrum(pairs: &[(f64, StateVector)]) -> Result<Self> {
        let first = pairs.first().ok_or(Error::ZeroVector)?;
        let dims = first.1.dims().to_vec();
        let n = first.1.dim();
        let mut m = DMatrix::zeros(n, n);
        for (value, v) in pairs {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: v.dim(),
                });
            }
            let col = DVector::from_column_slice(v.amplitudes());
            m += &col * col.adjoint() * C64::new(*value, 0.0);
        }
        Self::new(m, dims)
    }

    /// Pauli σ₁ = `[[0,1],[1,0]]`
    pub fn sigma1() -> Self {
        Self::pauli(&[0.0, 1.0, 1.0, 0.0], &[0.0; 4])
    }

    /// Pauli σ₂ = `[[0,-i],[i,0]]`
    pub fn sigma2() -> Self {
        Self::pauli(&[0.0; 4], &[0.0, -1.0, 1.0, 0.0])
    }

    /// Pauli σ₃ = `[[1,0],[0,-1]]`
    pub fn sigma3() -> Self {
        Self::pauli(&[1.0, 0.0, 0.0, -1.0], &[0.0; 4])
    }

    fn pauli(re: &[f64; 4], im: &[f64; 4]) -> Self {
        let entries: Vec<C64> = re.iter().zip(im).map(|(&r, &i)| C64::new(r, i)).collect();
        Self {
            repr: Repr::Dense(DMatrix::from_row_slice(2, 2, &entries)),
            dims: vec![2],
            spectrum: OnceLock::new(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Dense(m) => m.nrows(),
            Repr::Diagonal(v) => v.len(),
        }
    }

    /// Dense matrix form.
    pub fn matrix(&self) -> DMatrix<C64> {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Diagonal(v) => {
                DMatrix::from_diagonal(&DVector::from_iterator(v.len(), v.iter().map(|&x| C64::new(x, 0.0))))
            }
        }
    }

    /// Diagonal entries when the operator is stored diagonally.
    pub fn as_diagonal(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Diagonal(v) => Some(v),
            Repr::Dense(_) => None,
        }
    }

    /// Cached spectral decomposition.
    pub fn spectrum(&self) -> &SpectralDecomposition {
        self.spectrum.get_or_init(|| match &self.repr {
            Repr::Dense(m) => spectral_decompose(m).expect("hermiticity checked on construction"),
            Repr::Diagonal(v) => SpectralDecomposition::from_diagonal(v),
        })
    }

    /// Kronecker product `self ⊗ other` with dims concatenated.
    pub fn tensor(&self, other: &Observable) -> Result<Observable> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        match (&self.repr, &other.repr) {
            (Repr::Diagonal(a), Repr::Diagonal(b)) => {
                let values = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
                Observable::diagonal(values, dims)
            }
            _ => {
                let total = self.dim() * other.dim();
                check_dims(&dims, total, MAX_OPERATOR_DIM)?;
                Observable::new(self.matrix().kronecker(&other.matrix()), dims)
            }
        }
    }

    /// Same operator over a different factorization of the space.
    pub fn regroup(&self, dims: Vec<usize>) -> Result<Observable> {
        check_dims(&dims, self.dim(), MAX_OPERATOR_DIM)?;
        Ok(Observable {
            repr: self.repr.clone(),
            dims,
            spectrum: self.spectrum.clone(),
        })
    }

    /// Applies the operator to a state's amplitudes (the result is not normalized).
    pub fn apply(&self, psi: &StateVector) -> Result<Vec<C64>> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: psi.dim(),
            });
        }
        Ok(match &self.repr {
            Repr::Diagonal(v) => v.iter().zip(psi.amplitudes()).map(|(x, a)| a * *x).collect(),
            Repr::Dense(m) => {
                let x = DVector::from_column_slice(psi.amplitudes());
                (m * x).iter().copied().collect()
            }
        })
    }

    /// Entrywise max of `|[self, other]|`.
    pub fn commutator_norm(&self, other: &Observable) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        let (a, b) = (self.matrix(), other.matrix());
        let comm = &a * &b - &b * &a;
        Ok(comm.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

/// Kronecker product of two observables. See [`Observable::tensor`].
pub fn tensor_op(a: &Observable, b: &Observable) -> Result<Observable> {
    a.tensor(b)
}
