//! Dense state-vector quantum simulation with two measurement semantics.
//!
//! Measurements on observables with degenerate spectra are where the two
//! semantics part ways:
//!
//! - [`SemanticsMode::Lueders`] projects the state onto the outcome's
//!   eigenspace and renormalizes, whatever the multiplicity.
//! - [`SemanticsMode::StrictVonNeumann`] only assigns a post-measurement state
//!   when the outcome's eigenspace is one-dimensional. Otherwise the outcome
//!   is reported as undetermined and a refinement observable is needed.
//!
//! On top of the engine sit the teleportation protocol ([`protocols`]) and the
//! Deutsch-Jozsa, Simon and Grover algorithms ([`algorithms`]).
//!
//! ```
//! use postulate::hilbert::StateVector;
//! use postulate::measurement::{partial_measure_forced, SemanticsMode};
//! use postulate::hilbert::Observable;
//!
//! let phi_plus = StateVector::normalized(
//!     vec![1.0.into(), 0.0.into(), 0.0.into(), 1.0.into()],
//!     vec![2, 2],
//! )
//! .unwrap();
//! let z = Observable::sigma3();
//! let out = partial_measure_forced(&z, 0, &phi_plus, SemanticsMode::Lueders, 1).unwrap();
//! assert!((out.probability - 0.5).abs() < 1e-12);
//! assert_eq!(out.eigenvalue, 1.0);
//! ```

pub mod algorithms;
mod error;
pub mod hilbert;
pub mod measurement;
pub mod protocols;

pub use error::{Error, Result};
pub use hilbert::{Observable, SpectralDecomposition, StateVector, C64};
pub use measurement::{MeasurementOutcome, SemanticsMode};
