use nalgebra::{DMatrix, DVector};

use crate::hilbert::{EigenBasis, Observable, C64};
use crate::Result;

/// A nondegenerate observable `C` compatible with `A`, with `A = f(C)`.
///
/// `C` has eigenvalues `0, 1, …, N-1`; `value_map[k]` is `f(k)`, the
/// eigenvalue of `A` on `C`'s `k`-th eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementObservable {
    pub c: Observable,
    pub value_map: Vec<f64>,
}

/// Numerical check of the three refinement requirements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementCheck {
    pub nondegenerate: bool,
    /// Entrywise max of `|[A, C]|`.
    pub commutator: f64,
    /// Entrywise max of `|f(C) - A|`.
    pub reconstruction_error: f64,
}

impl RefinementCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.nondegenerate && self.commutator <= tol && self.reconstruction_error <= tol
    }
}

impl RefinementObservable {
    /// Evaluates `f(C) = Σ_k f(k) P_k(C)` using `C`'s own spectral decomposition.
    pub fn apply_value_map(&self) -> DMatrix<C64> {
        let n = self.c.dim();
        self.c
            .spectrum()
            .eigenspaces()
            .iter()
            .fold(DMatrix::zeros(n, n), |acc, e| {
                let k = e.value().round() as usize;
                acc + e.projector() * C64::new(self.value_map[k], 0.0)
            })
    }

    pub fn check(&self, a: &Observable) -> Result<RefinementCheck> {
        let commutator = a.commutator_norm(&self.c)?;
        let diff = self.apply_value_map() - a.matrix();
        Ok(RefinementCheck {
            nondegenerate: !self.c.spectrum().is_degenerate(),
            commutator,
            reconstruction_error: diff.iter().map(|z| z.norm()).fold(0.0, f64::max),
        })
    }
}

/// Builds a refinement of `a`.
///
/// Each eigenspace basis is already Gram-Schmidt orthonormalized in
/// eigensolver order; the union of those bases is labelled `0..N-1` in
/// eigensolver column order and `C` is diagonal in it.
pub fn build_refinement(a: &Observable) -> Result<RefinementObservable> {
    let spectrum = a.spectrum();
    let n = a.dim();

    let mut labelled: Vec<(usize, f64, DVector<C64>)> = Vec::with_capacity(n);
    let mut computational = true;
    for space in spectrum.eigenspaces() {
        computational &= matches!(space.basis(), EigenBasis::Computational { .. });
        for (k, &solver_index) in space.solver_order().iter().enumerate() {
            labelled.push((solver_index, space.value(), space.basis().column(k)));
        }
    }
    labelled.sort_by_key(|(solver_index, _, _)| *solver_index);

    let value_map: Vec<f64> = labelled.iter().map(|(_, value, _)| *value).collect();
    let c = if computational {
        let mut diag = vec![0.0; n];
        for (label, (_, _, v)) in labelled.iter().enumerate() {
            let i = v.iter().position(|z| z.norm() > 0.5).expect("unit basis vector");
            diag[i] = label as f64;
        }
        Observable::diagonal(diag, a.dims().to_vec())?
    } else {
        let mut m = DMatrix::zeros(n, n);
        for (label, (_, _, v)) in labelled.iter().enumerate() {
            m += v * v.adjoint() * C64::new(label as f64, 0.0);
        }
        // exact hermiticity before validation
        let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        Observable::new(m, a.dims().to_vec())?
    };
    Ok(RefinementObservable { c, value_map })
}
