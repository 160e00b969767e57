//! Exact identities evaluated on spectral data.

use crate::error::{Error, Result};
use crate::fft::FftPlan;
use crate::field::{ScalarField, SpectralField, SymTensorField, TensorField, VectorField};
use crate::grid::SpectralGrid;
use crate::semigroup::ModelParams;
use crate::solver::rhs::{partial, to_physical_many};
use crate::solver::{FlowState, Solver};
use crate::spectral::{lambda_power, tensor_divergence, tensor_divergence_general, velocity_gradient_parts};

use super::energy::sobolev_norm;

fn l3<F: SpectralField>(f: &F, grid: &SpectralGrid) -> F {
    lambda_power(f, 3.0, grid)
}

/// `alpha kappa (<L3 div tau, L3 u> + <L3 D u, L3 tau>)` divided by
/// `alpha kappa (||L3 div tau|| ||L3 u|| + ||L3 D u|| ||L3 tau||)`.
pub fn cancellation_residual(u: &VectorField, tau: &SymTensorField, p: &ModelParams, grid: &SpectralGrid) -> f64 {
    let ak = p.alpha * p.kappa;
    let div = l3(&tensor_divergence(tau, grid), grid);
    let (du, _) = velocity_gradient_parts(u, grid);
    let (du, u3, t3) = (l3(&du, grid), l3(u, grid), l3(tau, grid));
    let lhs = ak * (div.inner(&u3, grid) + du.inner(&t3, grid));
    let scale = ak * (div.norm_l2(grid) * u3.norm_l2(grid) + du.norm_l2(grid) * t3.norm_l2(grid));
    if scale == 0.0 {
        0.0
    } else {
        lhs / scale
    }
}

/// Same pairing for a general (possibly non-symmetric) tensor, with the
/// divergence `(div t)_k = d_l t_lk`.
pub fn cancellation_residual_general(u: &VectorField, t: &TensorField, p: &ModelParams, grid: &SpectralGrid) -> f64 {
    let ak = p.alpha * p.kappa;
    let div = l3(&tensor_divergence_general(t, grid), grid);
    let (du, _) = velocity_gradient_parts(u, grid);
    let (du, u3, t3) = (l3(&du.to_full(), grid), l3(u, grid), l3(t, grid));
    let lhs = ak * (div.inner(&u3, grid) + du.inner(&t3, grid));
    let scale = ak * (div.norm_l2(grid) * u3.norm_l2(grid) + du.norm_l2(grid) * t3.norm_l2(grid));
    if scale == 0.0 {
        0.0
    } else {
        lhs / scale
    }
}

/// `|<u . grad f, f>| / (max|u| ||f|| ||grad f||)` with the product taken on
/// the grid and truncated to the 2/3 band.
pub fn transport_skew_residual(u: &VectorField, f: &ScalarField, plan: &FftPlan, grid: &SpectralGrid) -> f64 {
    let d: Vec<ScalarField> = (0..3).map(|a| partial(f, a, grid)).collect();
    let ph = to_physical_many(plan, &[&u.comps[0], &u.comps[1], &u.comps[2], &d[0], &d[1], &d[2]]);
    let npts = grid.mode_count();
    let adv: Vec<f64> = (0..npts)
        .map(|p| ph[0][p] * ph[3][p] + ph[1][p] * ph[4][p] + ph[2][p] * ph[5][p])
        .collect();
    let mut a = plan.from_physical(&adv);
    a.dealias(grid);
    let umax = (0..npts)
        .map(|p| (ph[0][p].powi(2) + ph[1][p].powi(2) + ph[2][p].powi(2)).sqrt())
        .fold(0.0, f64::max);
    let scale = umax * f.norm_l2(grid) * sobolev_norm(f, 1, grid);
    if scale == 0.0 {
        0.0
    } else {
        a.inner(f, grid).abs() / scale
    }
}

/// Terms of the third-order energy balance at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBalance {
    pub time: f64,
    /// `alpha ||L3 u||^2 + kappa ||L3 tau||^2`.
    pub energy: f64,
    /// `alpha eps ||L4 u||^2 + kappa mu ||L4 tau||^2 + kappa beta ||L3 tau||^2`.
    pub dissipation: f64,
    /// `alpha <L3 N_u, L3 u> + kappa <L3 N_tau, L3 tau>` for the dealiased
    /// quadratic terms `N`.
    pub transfer: f64,
}

pub fn energy_balance(state: &FlowState, solver: &Solver) -> Result<EnergyBalance> {
    let g = solver.grid();
    let p = solver.params();
    let radii = g.radii();
    let w3 = |idx: usize| radii[idx].powi(6);
    let w4 = |idx: usize| radii[idx].powi(8);
    let u3 = state.u.weighted_norm_sq(g, w3);
    let t3 = state.tau.weighted_norm_sq(g, w3);
    let u4 = state.u.weighted_norm_sq(g, w4);
    let t4 = state.tau.weighted_norm_sq(g, w4);
    let (nu, nt) = solver.forcing(state)?;
    let transfer = p.alpha * l3(&nu, g).inner(&l3(&state.u, g), g) + p.kappa * l3(&nt, g).inner(&l3(&state.tau, g), g);
    Ok(EnergyBalance {
        time: state.time,
        energy: p.alpha * u3 + p.kappa * t3,
        dissipation: p.alpha * p.epsilon * u4 + p.kappa * p.mu * t4 + p.kappa * p.beta * t3,
        transfer,
    })
}

/// Checks that the samples are equally spaced and returns the spacing.
pub fn uniform_spacing(times: &[f64]) -> Result<f64> {
    if times.len() < 2 {
        return Ok(0.0);
    }
    let h = times[1] - times[0];
    for w in times.windows(2) {
        let d = w[1] - w[0];
        if !(h > 0.0) || (d - h).abs() > 1e-9 * h {
            return Err(Error::IrregularCadence { expected: h, found: d });
        }
    }
    Ok(h)
}

/// `(1/2 dE/dt + D - I) / D` at each interior sample, with `dE/dt` from
/// centered differences.
pub fn energy_identity_residual(window: &[EnergyBalance]) -> Result<Vec<(f64, f64)>> {
    if window.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "energy identity needs at least 3 samples, got {}",
            window.len()
        )));
    }
    let times: Vec<f64> = window.iter().map(|b| b.time).collect();
    let h = uniform_spacing(&times)?;
    Ok(window
        .windows(3)
        .map(|w| {
            let dedt = (w[2].energy - w[0].energy) / (2.0 * h);
            let lhs = 0.5 * dedt + w[1].dissipation - w[1].transfer;
            let r = if w[1].dissipation == 0.0 {
                if lhs == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                lhs / w[1].dissipation
            };
            (w[1].time, r)
        })
        .collect())
}

/// Energy-identity residuals for a run of states at a fixed cadence.
pub fn energy_identity_from_states(states: &[FlowState], solver: &Solver) -> Result<Vec<(f64, f64)>> {
    let window: Vec<EnergyBalance> = states
        .iter()
        .map(|s| energy_balance(s, solver))
        .collect::<Result<_>>()?;
    energy_identity_residual(&window)
}

/// `(||L^k(f g) - f L^k g||, ||grad f||_inf ||L^{k-1} g|| + ||L^k f|| ||g||_inf)`.
///
/// `f` and `g` must be band-limited to `|m| < n/4` so that the product is
/// resolved without aliasing.
pub fn commutator_ratio(f: &ScalarField, g: &ScalarField, k: u32, plan: &FftPlan, grid: &SpectralGrid) -> Result<(f64, f64)> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!("commutator order must be 1..=3, got {k}")));
    }
    let n = grid.n();
    let quarter = (n / 4) as i64;
    for idx in 0..grid.mode_count() {
        let (i, j, l) = grid.unflat(idx);
        let wide = [i, j, l].iter().any(|&a| grid.mode_number(a).abs() >= quarter);
        if wide && (f.coeffs()[idx].norm() > 0.0 || g.coeffs()[idx].norm() > 0.0) {
            return Err(Error::InvalidArgument(
                "commutator fields must be band-limited to |m| < n/4".into(),
            ));
        }
    }
    let kf = k as f64;
    let lg = lambda_power(g, kf, grid);
    let df: Vec<ScalarField> = (0..3).map(|a| partial(f, a, grid)).collect();
    let ph = to_physical_many(plan, &[f, g, &lg, &df[0], &df[1], &df[2]]);
    let npts = grid.mode_count();
    let fg: Vec<f64> = (0..npts).map(|p| ph[0][p] * ph[1][p]).collect();
    let flg: Vec<f64> = (0..npts).map(|p| ph[0][p] * ph[2][p]).collect();
    let mut comm = lambda_power(&plan.from_physical(&fg), kf, grid);
    comm.add_scaled(&plan.from_physical(&flg), -1.0);
    let lhs = comm.norm_l2(grid);
    let grad_inf = (0..npts)
        .map(|p| (ph[3][p].powi(2) + ph[4][p].powi(2) + ph[5][p].powi(2)).sqrt())
        .fold(0.0, f64::max);
    let g_inf = ph[1].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rhs = grad_inf * sobolev_norm(g, k - 1, grid) + sobolev_norm(f, k, grid) * g_inf;
    Ok((lhs, rhs))
}
