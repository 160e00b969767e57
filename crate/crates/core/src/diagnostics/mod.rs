//! Norms, energy functionals, identity residuals and decay fits.

mod duhamel;
mod energy;
mod fit;
mod identities;

pub use duhamel::{constant_forcing_integral, duhamel_low_freq_residual, trapezoid_integral};
pub use energy::{
    default_eta1, energy_functionals, h3_norm, sandwich_eta_limit, sobolev_norm, write_diagnostics_csv,
    CsvTable, EnergySample, DIAGNOSTICS_HEADER,
};
pub use fit::{detect_window, fit_decay, DecayFit, WindowRule, MIN_FIT_SAMPLES};
pub use identities::{
    cancellation_residual, cancellation_residual_general, commutator_ratio, energy_balance,
    energy_identity_from_states, energy_identity_residual, transport_skew_residual, uniform_spacing,
    EnergyBalance,
};
