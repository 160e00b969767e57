//! Localized Gaussian initial data built directly from the Fourier
//! coefficients of the periodized Gaussian
//! `g(x) = sum_n exp(-|x - c + n L|^2 / w^2)` centred at the box midpoint:
//! `g_hat(xi) = (pi^{3/2} w^3 / L^3) exp(-w^2 |xi|^2 / 4) exp(-i xi . c)`.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{sym_index, ScalarField, SpectralField, SymTensorField, VectorField};
use crate::grid::SpectralGrid;
use crate::spectral::{curl, leray_project};

use super::FlowState;

/// Fixed direction of the velocity potential (or of the projected velocity).
pub const VELOCITY_DIRECTION: [f64; 3] = [1.0, 0.7, -0.4];
/// Fixed symmetric shape of the initial stress.
pub const STRESS_SHAPE: [[f64; 3]; 3] = [[0.5, 0.2, -0.1], [0.2, -0.3, 0.15], [-0.1, 0.15, 0.4]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitKind {
    /// `u = curl(w g d)`.
    CurlGaussian,
    /// `u = P(g d)` with the mean removed.
    ProjectedGaussian,
}

impl FromStr for InitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "curl-gaussian" => Ok(InitKind::CurlGaussian),
            "projected-gaussian" => Ok(InitKind::ProjectedGaussian),
            other => Err(Error::InvalidArgument(format!(
                "unknown initial data type {other:?} (expected curl-gaussian or projected-gaussian)"
            ))),
        }
    }
}

impl InitKind {
    pub fn name(self) -> &'static str {
        match self {
            InitKind::CurlGaussian => "curl-gaussian",
            InitKind::ProjectedGaussian => "projected-gaussian",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialSpec {
    pub kind: InitKind,
    /// Velocity scale.
    pub amplitude: f64,
    /// Stress scale.
    pub stress_amplitude: f64,
    /// `1/e` radius of the Gaussian, in length units.
    pub width: f64,
}

impl InitialSpec {
    /// Amplitude `1e-2`, width `L/16`, stress at half the velocity scale.
    pub fn default_for(box_length: f64) -> Self {
        Self {
            kind: InitKind::CurlGaussian,
            amplitude: 1e-2,
            stress_amplitude: 5e-3,
            width: box_length / 16.0,
        }
    }
}

/// Fourier coefficients of the periodized unit Gaussian.
pub fn gaussian_bump(grid: &SpectralGrid, width: f64) -> ScalarField {
    let l = grid.box_length();
    let pref = PI.powf(1.5) * width.powi(3) / l.powi(3);
    ScalarField::from_fn(grid, |idx| {
        if grid.is_nyquist(idx) {
            return Complex64::default();
        }
        let (i, j, k) = grid.unflat(idx);
        let msum = grid.mode_number(i) + grid.mode_number(j) + grid.mode_number(k);
        // exp(-i xi . c) with c = (L/2, L/2, L/2) is (-1)^{m1+m2+m3}
        let sign = if msum.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let r = grid.radius(idx);
        Complex64::new(sign * pref * (-0.25 * width * width * r * r).exp(), 0.0)
    })
}

pub fn init_state(spec: &InitialSpec, grid: &SpectralGrid) -> Result<FlowState> {
    if !(spec.amplitude >= 0.0) || !(spec.stress_amplitude >= 0.0) {
        return Err(Error::InvalidArgument(
            "initial amplitudes must be non-negative".into(),
        ));
    }
    let min_width = 4.0 * grid.spacing();
    if !(spec.width >= min_width * (1.0 - 1e-12)) || !spec.width.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "initial width {} is not resolvable: need at least 4 grid spacings ({min_width})",
            spec.width
        )));
    }
    if spec.width > 0.25 * grid.box_length() {
        return Err(Error::InvalidArgument(format!(
            "initial width {} is not localized in a box of length {}",
            spec.width,
            grid.box_length()
        )));
    }
    let g = gaussian_bump(grid, spec.width);
    let mut directed = VectorField::zeros(grid.n());
    for c in 0..3 {
        let mut comp = g.clone();
        comp.scale(VELOCITY_DIRECTION[c]);
        directed.comps[c] = comp;
    }
    let mut u = match spec.kind {
        InitKind::CurlGaussian => {
            let mut a = directed;
            a.scale(spec.amplitude * spec.width);
            curl(&a, grid)
        }
        InitKind::ProjectedGaussian => {
            let mut v = directed;
            v.scale(spec.amplitude);
            leray_project(&v, grid)
        }
    };
    for c in u.comps.iter_mut() {
        c.coeffs_mut()[0] = Complex64::default();
    }
    let mut tau = SymTensorField::zeros(grid.n());
    for i in 0..3 {
        for j in i..3 {
            let mut comp = g.clone();
            comp.scale(spec.stress_amplitude * STRESS_SHAPE[i][j]);
            tau.comps[sym_index(i, j)] = comp;
        }
    }
    let mut state = FlowState { u, tau, time: 0.0 };
    state.clean(grid);
    Ok(state)
}
