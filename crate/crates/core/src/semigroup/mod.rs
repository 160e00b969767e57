//! Exact per-mode theory of the linearized system in the `(u_hat, sigma_hat)`
//! variables.

pub mod bounds;
pub mod green;
mod params;
pub mod quadrature;
pub mod radial;

pub use bounds::{
    default_cutoff_radius, find_bound_constants, verify_green_bounds, BoundConstants,
    BoundReport, SampleSpec,
};
pub use green::{
    discriminant, eigenvalues, green_functions, propagator, symbol_matrix, GreenTriple, Matrix2,
};
pub use params::ModelParams;
pub use radial::{
    linear_decay_series, linear_norm_radial, Component, DecayRow, RadialData, RadialProfile,
};
