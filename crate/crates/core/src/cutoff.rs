//! Radial low/high frequency cutoff.
//!
//! `phi(r) = 1` for `r <= R/2`, `cos^2(pi (r - R/2) / R)` on `[R/2, R]` and
//! `0` beyond. The complementary multipliers are `phi1 = 1 - phi` and
//! `phi1_tilde = phi1^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::SpectralGrid;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSpec {
    radius: f64,
}

impl CutoffSpec {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParams(format!(
                "cutoff radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Low-pass multiplier `phi(r)`.
    pub fn value(&self, r: f64) -> f64 {
        let half = 0.5 * self.radius;
        if r <= half {
            1.0
        } else if r >= self.radius {
            0.0
        } else {
            (PI * (r - half) / self.radius).cos().powi(2)
        }
    }

    /// High-pass multiplier `phi1 = 1 - phi`.
    pub fn high(&self, r: f64) -> f64 {
        let half = 0.5 * self.radius;
        if r <= half {
            0.0
        } else if r >= self.radius {
            1.0
        } else {
            (PI * (r - half) / self.radius).sin().powi(2)
        }
    }
}

pub fn cutoff_value(r: f64, spec: &CutoffSpec) -> f64 {
    spec.value(r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<F> {
    pub low: F,
    pub high: F,
    pub tilde_low: F,
    pub tilde_high: F,
}

/// Splits `f` into `(phi0 f, phi1 f)` and `(f - phi1^2 f, phi1^2 f)`.
///
/// The high parts are computed by multiplication and the low parts as the
/// remainder, so each pair sums back to `f` up to one rounding per
/// coefficient.
pub fn decompose<F: SpectralField>(f: &F, spec: &CutoffSpec, grid: &SpectralGrid) -> Decomposition<F> {
    let radii = grid.radii();
    let mut high = f.clone();
    high.apply_all(|idx| Complex64::new(spec.high(radii[idx]), 0.0));
    let mut tilde_high = high.clone();
    tilde_high.apply_all(|idx| Complex64::new(spec.high(radii[idx]), 0.0));
    let mut low = f.clone();
    low.add_scaled(&high, -1.0);
    let mut tilde_low = f.clone();
    tilde_low.add_scaled(&tilde_high, -1.0);
    Decomposition {
        low,
        high,
        tilde_low,
        tilde_high,
    }
}

/// High-pass part only.
pub fn high_part<F: SpectralField>(f: &F, spec: &CutoffSpec, grid: &SpectralGrid) -> F {
    let radii = grid.radii();
    let mut high = f.clone();
    high.apply_all(|idx| Complex64::new(spec.high(radii[idx]), 0.0));
    high
}
