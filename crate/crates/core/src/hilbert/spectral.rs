use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{C64, DEGEN_TOL, HERM_TOL};
use crate::{Error, Result};

/// Orthonormal basis of an eigenspace, stored as columns.
///
/// Eigenspaces of diagonal operators are spanned by computational basis
/// vectors; those are kept as index lists so that large diagonal readout
/// observables never materialize dense columns.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenBasis {
    Computational { dim: usize, indices: Vec<usize> },
    Dense(DMatrix<C64>),
}

impl EigenBasis {
    /// Dimension of the ambient space.
    pub fn dim(&self) -> usize {
        match self {
            EigenBasis::Computational { dim, .. } => *dim,
            EigenBasis::Dense(m) => m.nrows(),
        }
    }

    /// Number of basis vectors.
    pub fn rank(&self) -> usize {
        match self {
            EigenBasis::Computational { indices, .. } => indices.len(),
            EigenBasis::Dense(m) => m.ncols(),
        }
    }

    pub fn column(&self, k: usize) -> DVector<C64> {
        match self {
            EigenBasis::Computational { dim, indices } => {
                let mut v = DVector::zeros(*dim);
                v[indices[k]] = C64::new(1.0, 0.0);
                v
            }
            EigenBasis::Dense(m) => m.column(k).into_owned(),
        }
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        match self {
            EigenBasis::Computational { dim, indices } => {
                let mut m = DMatrix::zeros(*dim, indices.len());
                for (k, &i) in indices.iter().enumerate() {
                    m[(i, k)] = C64::new(1.0, 0.0);
                }
                m
            }
            EigenBasis::Dense(m) => m.clone(),
        }
    }

    /// `V^† x` for a strided slice `x[offset + m * stride]`, m in 0..dim.
    pub(crate) fn coefficients_strided(
        &self,
        data: &[C64],
        offset: usize,
        stride: usize,
        out: &mut [C64],
    ) {
        match self {
            EigenBasis::Computational { indices, .. } => {
                for (o, &i) in out.iter_mut().zip(indices) {
                    *o = data[offset + i * stride];
                }
            }
            EigenBasis::Dense(m) => {
                for (k, o) in out.iter_mut().enumerate() {
                    let col = m.column(k);
                    *o = col
                        .iter()
                        .enumerate()
                        .map(|(i, v)| v.conj() * data[offset + i * stride])
                        .sum();
                }
            }
        }
    }

    /// Adds `V c` into the strided slice of `data`.
    pub(crate) fn expand_strided(&self, coeffs: &[C64], data: &mut [C64], offset: usize, stride: usize) {
        match self {
            EigenBasis::Computational { indices, .. } => {
                for (c, &i) in coeffs.iter().zip(indices) {
                    data[offset + i * stride] += c;
                }
            }
            EigenBasis::Dense(m) => {
                for (k, c) in coeffs.iter().enumerate() {
                    for (i, v) in m.column(k).iter().enumerate() {
                        data[offset + i * stride] += v * c;
                    }
                }
            }
        }
    }

    /// `V V^†`
    pub fn projector(&self) -> DMatrix<C64> {
        let v = self.to_matrix();
        &v * v.adjoint()
    }
}

/// One distinct eigenvalue together with an orthonormal basis of its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenspace {
    value: f64,
    basis: EigenBasis,
    // eigensolver column index of each basis vector, ascending
    solver_order: Vec<usize>,
}

impl Eigenspace {
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn multiplicity(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis(&self) -> &EigenBasis {
        &self.basis
    }

    pub fn projector(&self) -> DMatrix<C64> {
        self.basis.projector()
    }

    /// Original column positions of this eigenspace's vectors in the
    /// eigensolver output (the row index for diagonal operators).
    pub fn solver_order(&self) -> &[usize] {
        &self.solver_order
    }
}

/// Resolution of the identity of a Hermitian operator over its distinct
/// eigenvalues, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    dim: usize,
    eigenspaces: Vec<Eigenspace>,
}

impl SpectralDecomposition {
    /// Decomposition of `Σ values[i] |i><i|`, with computational-basis eigenspaces.
    pub(crate) fn from_diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let pairs = values.iter().copied().zip(0..dim).collect();
        let eigenspaces = cluster(pairs)
            .into_iter()
            .map(|(value, members)| Eigenspace {
                value,
                basis: EigenBasis::Computational {
                    dim,
                    indices: members.clone(),
                },
                solver_order: members,
            })
            .collect();
        Self { dim, eigenspaces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.eigenspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenspaces.is_empty()
    }

    pub fn eigenspaces(&self) -> &[Eigenspace] {
        &self.eigenspaces
    }

    pub fn eigenspace(&self, index: usize) -> Result<&Eigenspace> {
        self.eigenspaces.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.eigenspaces.len(),
        })
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigenspaces.iter().map(|e| e.value).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.eigenspaces.iter().map(|e| e.multiplicity()).collect()
    }

    pub fn projectors(&self) -> Vec<DMatrix<C64>> {
        self.eigenspaces.iter().map(|e| e.projector()).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.eigenspaces.iter().any(|e| e.multiplicity() > 1)
    }

    /// Index of the eigenvalue closest to `value`, if within [`DEGEN_TOL`].
    pub fn index_of(&self, value: f64) -> Option<usize> {
        self.eigenspaces
            .iter()
            .position(|e| (e.value - value).abs() <= DEGEN_TOL)
    }

    /// `Σ λ_i P_i`
    pub fn reconstruct(&self) -> DMatrix<C64> {
        self.eigenspaces
            .iter()
            .fold(DMatrix::zeros(self.dim, self.dim), |acc, e| {
                acc + e.projector() * C64::new(e.value, 0.0)
            })
    }
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues closer than [`DEGEN_TOL`] (chained in ascending order) are
/// merged into one eigenvalue, their mean, whose eigenspace basis is the
/// Gram-Schmidt orthonormalization of the member eigenvectors taken in
/// eigensolver column order.
pub fn spectral_decompose(matrix: &DMatrix<C64>) -> Result<SpectralDecomposition> {
    let deviation = hermitian_deviation(matrix)?;
    if deviation > HERM_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = matrix.nrows();

    if is_diagonal(matrix) {
        let values: Vec<f64> = (0..n).map(|i| matrix[(i, i)].re).collect();
        return Ok(SpectralDecomposition::from_diagonal(&values));
    }

    let hermitian = (matrix + matrix.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(hermitian);
    let pairs: Vec<(f64, usize)> = eig.eigenvalues.iter().copied().zip(0..n).collect();
    let eigenspaces = cluster(pairs)
        .into_iter()
        .map(|(value, members)| {
            let columns: Vec<DVector<C64>> = members
                .iter()
                .map(|&k| eig.eigenvectors.column(k).into_owned())
                .collect();
            let basis = gram_schmidt(&columns);
            Eigenspace {
                value,
                basis: EigenBasis::Dense(DMatrix::from_columns(&basis)),
                solver_order: members,
            }
        })
        .collect();
    Ok(SpectralDecomposition { dim: n, eigenspaces })
}

/// `max |M - M^†|` entrywise.
pub fn hermitian_deviation(matrix: &DMatrix<C64>) -> Result<f64> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::NotSquare {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    let n = matrix.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
        }
    }
    Ok(worst)
}

fn is_diagonal(matrix: &DMatrix<C64>) -> bool {
    let n = matrix.nrows();
    (0..n).all(|j| (0..n).all(|i| i == j || matrix[(i, j)] == C64::new(0.0, 0.0)))
}

/// Groups (eigenvalue, solver index) pairs into clusters of nearly equal
/// eigenvalues; members of each cluster are returned in solver order.
fn cluster(mut pairs: Vec<(f64, usize)>) -> Vec<(f64, Vec<usize>)> {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<(Vec<f64>, Vec<usize>)> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for (value, index) in pairs {
        match out.last_mut() {
            Some((values, members)) if value - prev <= DEGEN_TOL => {
                values.push(value);
                members.push(index);
            }
            _ => out.push((vec![value], vec![index])),
        }
        prev = value;
    }
    out.into_iter()
        .map(|(values, mut members)| {
            members.sort_unstable();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            (mean, members)
        })
        .collect()
}

/// Modified Gram-Schmidt; drops vectors that become numerically dependent.
fn gram_schmidt(vectors: &[DVector<C64>]) -> Vec<DVector<C64>> {
    let mut out: Vec<DVector<C64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let proj = u.dotc(&w);
            w -= u * proj;
        }
        let norm = w.norm();
        if norm > 1e-10 {
            out.push(w / C64::new(norm, 0.0));
        }
    }
    out
}
