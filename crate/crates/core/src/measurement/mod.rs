//! Measurement semantics: Born probabilities, Lüders collapse, and strict von
//! Neumann collapse that refuses to assign a state on degenerate eigenspaces.

mod partial;
mod refinement;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::hilbert::{split_around, EigenBasis, Observable, StateVector, C64};
use crate::{Error, Result};

pub use partial::{lift, partial_distribution, partial_measure, partial_measure_forced};
pub use refinement::{build_refinement, RefinementCheck, RefinementObservable};

/// Outcomes with probability at or below this are never selected.
pub const PROB_FLOOR: f64 = 1e-15;

/// Which projection rule assigns the post-measurement state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SemanticsMode {
    /// A state is assigned only for nondegenerate outcomes.
    #[serde(rename = "von-neumann")]
    StrictVonNeumann,
    /// Project onto the outcome eigenspace and renormalize.
    #[serde(rename = "lueders")]
    Lueders,
}

impl SemanticsMode {
    pub const ALL: [SemanticsMode; 2] = [SemanticsMode::StrictVonNeumann, SemanticsMode::Lueders];

    pub fn as_str(self) -> &'static str {
        match self {
            SemanticsMode::StrictVonNeumann => "von-neumann",
            SemanticsMode::Lueders => "lueders",
        }
    }
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseModeError(pub String);

impl fmt::Display for ParseModeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown semantics mode {:?} (expected \"von-neumann\" or \"lueders\")", self.0)
    }
}

impl std::error::Error for ParseModeError {}

impl FromStr for SemanticsMode {
    type Err = ParseModeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "von-neumann" => Ok(SemanticsMode::StrictVonNeumann),
            "lueders" => Ok(SemanticsMode::Lueders),
            other => Err(ParseModeError(other.to_string())),
        }
    }
}

/// Orthogonal projector `I_left ⊗ V V^† ⊗ I_right`.
///
/// `V` is an orthonormal basis of an eigenspace of the (local) observable.
/// Full-space projectors have `left = right = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    basis: EigenBasis,
    left: usize,
    right: usize,
}

impl Projector {
    pub(crate) fn new(basis: EigenBasis, left: usize, right: usize) -> Self {
        Self { basis, left, right }
    }

    pub fn dim(&self) -> usize {
        self.left * self.basis.dim() * self.right
    }

    pub fn rank(&self) -> usize {
        self.left * self.basis.rank() * self.right
    }

    /// Eigenspace basis on the measured factor.
    pub fn local_basis(&self) -> &EigenBasis {
        &self.basis
    }

    /// `P ψ`, unnormalized.
    pub fn apply(&self, amplitudes: &[C64]) -> Vec<C64> {
        let d = self.basis.dim();
        let mut out = vec![C64::new(0.0, 0.0); amplitudes.len()];
        let mut coeffs = vec![C64::new(0.0, 0.0); self.basis.rank()];
        for l in 0..self.left {
            for r in 0..self.right {
                let offset = l * d * self.right + r;
                self.basis
                    .coefficients_strided(amplitudes, offset, self.right, &mut coeffs);
                self.basis.expand_strided(&coeffs, &mut out, offset, self.right);
            }
        }
        out
    }

    /// `‖P ψ‖²`
    pub fn weight(&self, amplitudes: &[C64]) -> f64 {
        let d = self.basis.dim();
        let mut coeffs = vec![C64::new(0.0, 0.0); self.basis.rank()];
        let mut total = 0.0;
        for l in 0..self.left {
            for r in 0..self.right {
                let offset = l * d * self.right + r;
                self.basis
                    .coefficients_strided(amplitudes, offset, self.right, &mut coeffs);
                total += coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>();
            }
        }
        total
    }

    /// Dense matrix over the full space; intended for small dimensions.
    pub fn to_matrix(&self) -> DMatrix<C64> {
        let local = self.basis.projector();
        DMatrix::<C64>::identity(self.left, self.left)
            .kronecker(&local)
            .kronecker(&DMatrix::<C64>::identity(self.right, self.right))
    }
}

/// Result of one measurement under a given semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    /// Position of the eigenvalue in the ascending spectrum.
    pub index: usize,
    pub eigenvalue: f64,
    pub probability: f64,
    pub mode: SemanticsMode,
    /// Present exactly when `determined`.
    pub post_state: Option<StateVector>,
    pub eigenprojector: Projector,
    pub determined: bool,
    /// For undetermined outcomes: the state Lüders' rule would have assigned.
    pub lueders_state: Option<StateVector>,
    /// Partial measurements only: the measured subsystem's eigenstate.
    pub subsystem_state: Option<StateVector>,
}

impl MeasurementOutcome {
    pub fn multiplicity(&self) -> usize {
        self.eigenprojector.rank()
    }
}

/// `‖P_i ψ‖²` for the `eigenvalue_index`-th eigenvalue of `a`.
pub fn born_probability(a: &Observable, eigenvalue_index: usize, psi: &StateVector) -> Result<f64> {
    check_dim(a, psi)?;
    let space = a.spectrum().eigenspace(eigenvalue_index)?;
    Ok(Projector::new(space.basis().clone(), 1, 1).weight(psi.amplitudes()))
}

/// Born probabilities of every eigenvalue of `a`, in ascending eigenvalue order.
pub fn born_distribution(a: &Observable, psi: &StateVector) -> Result<Vec<f64>> {
    check_dim(a, psi)?;
    Ok(a.spectrum()
        .eigenspaces()
        .iter()
        .map(|e| Projector::new(e.basis().clone(), 1, 1).weight(psi.amplitudes()))
        .collect())
}

/// Samples an eigenvalue of `a` with Born probabilities and assigns the
/// post-measurement state according to `mode`.
pub fn measure<R: Rng + ?Sized>(
    a: &Observable,
    psi: &StateVector,
    mode: SemanticsMode,
    rng: &mut R,
) -> Result<MeasurementOutcome> {
    let probs = born_distribution(a, psi)?;
    let index = sample_index(&probs, rng);
    measure_forced(a, psi, mode, index)
}

/// Measurement conditioned on the outcome `index` (post-selection).
pub fn measure_forced(
    a: &Observable,
    psi: &StateVector,
    mode: SemanticsMode,
    index: usize,
) -> Result<MeasurementOutcome> {
    check_dim(a, psi)?;
    let space = a.spectrum().eigenspace(index)?;
    let projector = Projector::new(space.basis().clone(), 1, 1);
    let projected = projector.apply(psi.amplitudes());
    let probability = projected.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if probability <= PROB_FLOOR {
        return Err(Error::ZeroProbabilityBranch { index });
    }
    let lueders = StateVector::normalized(projected, psi.dims().to_vec())?;
    let multiplicity = projector.rank();

    let (post_state, determined, lueders_state) = match mode {
        SemanticsMode::Lueders => (Some(lueders), true, None),
        SemanticsMode::StrictVonNeumann if multiplicity == 1 => {
            let v = space.basis().column(0);
            let eigenvector =
                StateVector::normalized(v.iter().copied().collect(), psi.dims().to_vec())?;
            (Some(eigenvector.phase_normalized()), true, None)
        }
        SemanticsMode::StrictVonNeumann => (None, false, Some(lueders)),
    };

    Ok(MeasurementOutcome {
        index,
        eigenvalue: space.value(),
        probability,
        mode,
        post_state,
        eigenprojector: projector,
        determined,
        lueders_state,
        subsystem_state: None,
    })
}

/// Inverse-CDF sampling from one uniform draw; outcomes at or below
/// [`PROB_FLOOR`] are never returned.
pub fn sample_index<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let total: f64 = probs.iter().filter(|&&p| p > PROB_FLOOR).sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= PROB_FLOOR {
            continue;
        }
        acc += p;
        last = i;
        if target < acc {
            return i;
        }
    }
    last
}

fn check_dim(a: &Observable, psi: &StateVector) -> Result<()> {
    if a.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: psi.dim(),
        });
    }
    Ok(())
}

pub(crate) fn local_split(dims: &[usize], subsystem: usize) -> Result<(usize, usize, usize)> {
    let d = *dims.get(subsystem).ok_or(Error::IndexOutOfRange {
        index: subsystem,
        len: dims.len(),
    })?;
    let (left, right) = split_around(dims, subsystem);
    Ok((left, d, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    /// Always returns the same word.
    struct ConstRng(u64);

    impl RngCore for ConstRng {
        fn next_u32(&mut self) -> u32 {
            self.0 as u32
        }
        fn next_u64(&mut self) -> u64 {
            self.0
        }
        fn fill_bytes(&mut self, dst: &mut [u8]) {
            dst.fill(0);
        }
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn phi_plus() -> StateVector {
        StateVector::normalized(vec![c(1.0), c(0.0), c(0.0), c(1.0)], vec![2, 2]).unwrap()
    }

    #[test]
    fn mode_strings_round_trip() {
        for mode in SemanticsMode::ALL {
            assert_eq!(mode.as_str().parse::<SemanticsMode>().unwrap(), mode);
        }
        assert!("copenhagen".parse::<SemanticsMode>().is_err());
    }

    #[test]
    fn born_on_eigenstate() {
        let z = Observable::sigma3();
        // ascending: index 1 is +1
        assert_eq!(born_probability(&z, 1, &StateVector::zero()).unwrap(), 1.0);
        assert_eq!(born_probability(&z, 0, &StateVector::zero()).unwrap(), 0.0);
    }

    #[test]
    fn born_on_lifted_sigma3() {
        let a = lift(&Observable::sigma3(), 0, &[2, 2]).unwrap();
        let p = born_probability(&a, 1, &phi_plus()).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn born_index_and_dims_errors() {
        let z = Observable::sigma3();
        assert!(matches!(
            born_probability(&z, 2, &StateVector::zero()),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            born_probability(&z, 0, &phi_plus()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sigma3_on_plus_modes_agree() {
        let z = Observable::sigma3();
        for index in 0..2 {
            let a = measure_forced(&z, &StateVector::plus(), SemanticsMode::Lueders, index).unwrap();
            let b = measure_forced(&z, &StateVector::plus(), SemanticsMode::StrictVonNeumann, index)
                .unwrap();
            assert!((a.probability - 0.5).abs() < 1e-15);
            assert!(a.determined && b.determined);
            let expected = if index == 1 { StateVector::zero() } else { StateVector::one() };
            assert_eq!(b.post_state.as_ref().unwrap(), &expected);
            assert!(a.post_state.unwrap().phase_equal(&expected, 1e-12).unwrap());
        }
    }

    #[test]
    fn strict_refuses_degenerate_outcome() {
        let a = lift(&Observable::sigma3(), 0, &[2, 2]).unwrap();
        let out = measure_forced(&a, &phi_plus(), SemanticsMode::StrictVonNeumann, 1).unwrap();
        assert!(!out.determined);
        assert!(out.post_state.is_none());
        assert_eq!(out.multiplicity(), 2);
        let would_be = out.lueders_state.unwrap();
        assert_eq!(would_be, StateVector::basis(0, vec![2, 2]).unwrap());
    }

    #[test]
    fn zero_probability_branch_is_rejected() {
        let z = Observable::sigma3();
        assert_eq!(
            measure_forced(&z, &StateVector::zero(), SemanticsMode::Lueders, 0),
            Err(Error::ZeroProbabilityBranch { index: 0 })
        );
    }

    #[test]
    fn sampling_skips_zero_probability() {
        let mut rng = ConstRng(0);
        assert_eq!(sample_index(&[0.0, 0.3, 0.7], &mut rng), 1);
        let mut rng = ConstRng(u64::MAX);
        assert_eq!(sample_index(&[0.3, 0.7, 0.0], &mut rng), 1);
    }

    #[test]
    fn projector_matrix_matches_apply() {
        let a = lift(&Observable::sigma3(), 1, &[2, 2]).unwrap();
        let space = a.spectrum().eigenspace(0).unwrap();
        let p = Projector::new(space.basis().clone(), 1, 1);
        let m = p.to_matrix();
        assert_eq!(p.rank(), 2);
        assert!((&m * &m - &m).norm() < 1e-15);
    }
}
