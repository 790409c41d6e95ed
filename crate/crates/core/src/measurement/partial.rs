use rand::Rng;

use super::{local_split, sample_index, MeasurementOutcome, Projector, SemanticsMode, PROB_FLOOR};
use crate::hilbert::{Observable, StateVector};
use crate::{Error, Result};

/// Embeds `a` as `I ⊗ … ⊗ a ⊗ … ⊗ I` acting on `dims[subsystem]`.
pub fn lift(a: &Observable, subsystem: usize, dims: &[usize]) -> Result<Observable> {
    let (_, d, _) = local_split(dims, subsystem)?;
    if a.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: a.dim(),
        });
    }
    let mut lifted = a.clone();
    if subsystem > 0 {
        lifted = Observable::identity(dims[..subsystem].to_vec())?.tensor(&lifted)?;
    }
    if subsystem + 1 < dims.len() {
        lifted = lifted.tensor(&Observable::identity(dims[subsystem + 1..].to_vec())?)?;
    }
    lifted.regroup(dims.to_vec())
}

/// Probabilities `‖(E_j ⊗ I) ψ‖²` over the ascending eigenvalues of the
/// local observable `a` acting on `psi.dims()[subsystem]`.
///
/// The lifted operator is never formed.
pub fn partial_distribution(a: &Observable, subsystem: usize, psi: &StateVector) -> Result<Vec<f64>> {
    let (left, right) = check_local(a, subsystem, psi)?;
    Ok(a.spectrum()
        .eigenspaces()
        .iter()
        .map(|e| Projector::new(e.basis().clone(), left, right).weight(psi.amplitudes()))
        .collect())
}

/// Measures a locally nondegenerate observable on one subsystem of a
/// composite state.
///
/// The outcome always reports the subsystem eigenstate `|α_j>`. In Lüders
/// mode the composite post-state is `(E_j ⊗ I)ψ` renormalized. In strict mode
/// the lifted eigenspace has rank `dim(H) / dim(H_1)`, so the composite state
/// is determined only when the other factors are trivial.
pub fn partial_measure<R: Rng + ?Sized>(
    a: &Observable,
    subsystem: usize,
    psi: &StateVector,
    mode: SemanticsMode,
    rng: &mut R,
) -> Result<MeasurementOutcome> {
    let probs = partial_distribution(a, subsystem, psi)?;
    let index = sample_index(&probs, rng);
    partial_measure_forced(a, subsystem, psi, mode, index)
}

/// [`partial_measure`] conditioned on outcome `index`.
pub fn partial_measure_forced(
    a: &Observable,
    subsystem: usize,
    psi: &StateVector,
    mode: SemanticsMode,
    index: usize,
) -> Result<MeasurementOutcome> {
    let (left, right) = check_local(a, subsystem, psi)?;
    let space = a.spectrum().eigenspace(index)?;
    let projector = Projector::new(space.basis().clone(), left, right);
    let projected = projector.apply(psi.amplitudes());
    let probability = projected.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if probability <= PROB_FLOOR {
        return Err(Error::ZeroProbabilityBranch { index });
    }
    let lueders = StateVector::normalized(projected, psi.dims().to_vec())?;
    let local = space.basis().column(0);
    let subsystem_state =
        StateVector::normalized(local.iter().copied().collect(), vec![a.dim()])?.phase_normalized();

    let (post_state, determined, lueders_state) = match mode {
        SemanticsMode::Lueders => (Some(lueders), true, None),
        SemanticsMode::StrictVonNeumann if projector.rank() == 1 => {
            (Some(lueders.phase_normalized()), true, None)
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
        subsystem_state: Some(subsystem_state),
    })
}

fn check_local(a: &Observable, subsystem: usize, psi: &StateVector) -> Result<(usize, usize)> {
    let (left, d, right) = local_split(psi.dims(), subsystem)?;
    if a.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: a.dim(),
        });
    }
    let spectrum = a.spectrum();
    if spectrum.is_degenerate() {
        return Err(Error::DegenerateLocalObservable {
            multiplicities: spectrum.multiplicities(),
        });
    }
    Ok((left, right))
}
