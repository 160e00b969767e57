//! Spectral laboratory for the diffusive Oldroyd-B system on a periodic box.
//!
//! The crate is layered bottom-up: [`grid`], [`fft`] and [`field`] hold the
//! Fourier discretization, [`spectral`] and [`cutoff`] the multipliers,
//! [`semigroup`] the exact per-mode linear theory, [`solver`] the nonlinear
//! time integrator and [`diagnostics`] the norms, identities and decay fits.

pub mod cutoff;
pub mod diagnostics;
pub mod error;
pub mod fft;
pub mod field;
pub mod grid;
pub mod semigroup;
pub mod snapshot;
pub mod solver;
pub mod spectral;

pub use cutoff::{decompose, CutoffSpec, Decomposition};
pub use error::{Error, Result};
pub use fft::FftPlan;
pub use field::{
    AntiSymTensorField, ScalarField, SpectralField, SymTensorField, TensorField, VectorField,
};
pub use grid::SpectralGrid;
pub use semigroup::ModelParams;
pub use snapshot::{Snapshot, SnapshotKind};
pub use solver::{FlowState, Solver, SolverConfig};
