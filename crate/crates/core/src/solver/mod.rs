//! Pseudo-spectral integration of the nonlinear system on the periodic box.
//!
//! The linear operator (diffusion, damping and the `kappa`/`alpha` coupling)
//! is integrated exactly per mode by [`LinearFlow`]. The quadratic terms are
//! explicit in a two-stage exponential midpoint scheme:
//!
//! ```text
//! k1    = N(y)
//! y_mid = E(h/2) (y + h/2 k1)
//! k2    = N(y_mid)
//! y'    = E(h) y + h E(h/2) k2
//! ```

mod forcing;
mod init;
mod linear;
pub mod rhs;
mod state;

pub use forcing::{coarse_grid, restrict, restrict_vector, ForcingRecord, ForcingSeries};
pub use init::{gaussian_bump, init_state, InitKind, InitialSpec, STRESS_SHAPE, VELOCITY_DIRECTION};
pub use linear::{LinearFlow, LinearTable};
pub use rhs::q_bilinear;
pub use state::FlowState;

use crate::cutoff::CutoffSpec;
use crate::diagnostics::{default_eta1, energy_functionals, h3_norm, EnergySample};
use crate::error::{Error, Result};
use crate::fft::FftPlan;
use crate::field::{SpectralField, SymTensorField, VectorField};
use crate::grid::SpectralGrid;
use crate::semigroup::{default_cutoff_radius, ModelParams};
use crate::spectral::{leray_project, sigma_from_tau, tensor_divergence, velocity_gradient_parts};

/// H3 growth factor that trips the blow-up guard.
pub const BLOW_UP_FACTOR: f64 = 1e6;

#[derive(Debug, Clone)]
pub struct Solver {
    grid: SpectralGrid,
    params: ModelParams,
    plan: FftPlan,
    linear: LinearFlow,
    nonlinear: bool,
}

impl Solver {
    pub fn new(grid: SpectralGrid, params: ModelParams, nonlinear: bool) -> Self {
        let plan = FftPlan::new(grid.n());
        let linear = LinearFlow::new(&grid, &params);
        Self {
            grid,
            params,
            plan,
            linear,
            nonlinear,
        }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn plan(&self) -> &FftPlan {
        &self.plan
    }

    pub fn nonlinear(&self) -> bool {
        self.nonlinear
    }

    /// Quadratic tendencies `(-P(u . grad u), -u . grad tau + Q)`; zero when
    /// the nonlinear toggle is off.
    pub fn forcing(&self, state: &FlowState) -> Result<(VectorField, SymTensorField)> {
        let n = self.grid.n();
        if !self.nonlinear {
            return Ok((VectorField::zeros(n), SymTensorField::zeros(n)));
        }
        let (fu, ft) = rhs::quadratic_terms(&self.plan, &self.grid, &state.u, &state.tau, self.params.b);
        if !fu.is_finite() || !ft.is_finite() {
            return Err(Error::NonFinite {
                what: "nonlinear forcing",
                time: state.time,
            });
        }
        Ok((fu, ft))
    }

    /// Everything except diffusion and damping: the quadratic terms plus the
    /// coupling `(kappa P div tau, alpha D u)`.
    pub fn nonlinear_rhs(&self, state: &FlowState) -> Result<(VectorField, SymTensorField)> {
        let (mut fu, mut ft) = self.forcing(state)?;
        let mut div = leray_project(&tensor_divergence(&state.tau, &self.grid), &self.grid);
        div.scale(self.params.kappa);
        fu.add_scaled(&div, 1.0);
        let (du, _) = velocity_gradient_parts(&state.u, &self.grid);
        ft.add_scaled(&du, self.params.alpha);
        fu.dealias(&self.grid);
        ft.dealias(&self.grid);
        Ok((fu, ft))
    }

    /// Exact linear flow over `t`.
    pub fn linear_propagate(&self, state: &FlowState, t: f64) -> FlowState {
        let mut out = state.clone();
        self.linear.apply(&self.grid, &self.linear.table(t), &mut out.u, &mut out.tau);
        out.time += t;
        out
    }

    pub fn step(&self, state: &FlowState, dt: f64) -> Result<FlowState> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
        }
        let full = self.linear.table(dt);
        let mut next = state.clone();
        if self.nonlinear {
            let half = self.linear.table(0.5 * dt);
            let (k1u, k1t) = self.forcing(state)?;
            let mut mid = state.clone();
            mid.axpy(0.5 * dt, &k1u, &k1t);
            self.linear.apply(&self.grid, &half, &mut mid.u, &mut mid.tau);
            mid.time = state.time + 0.5 * dt;
            let (mut k2u, mut k2t) = self.forcing(&mid)?;
            self.linear.apply(&self.grid, &half, &mut k2u, &mut k2t);
            self.linear.apply(&self.grid, &full, &mut next.u, &mut next.tau);
            next.axpy(dt, &k2u, &k2t);
        } else {
            self.linear.apply(&self.grid, &full, &mut next.u, &mut next.tau);
        }
        next.clean(&self.grid);
        next.time = state.time + dt;
        if !next.is_finite() {
            return Err(Error::NonFinite {
                what: "state",
                time: next.time,
            });
        }
        Ok(next)
    }

    /// `cfl / (k_max max|u| + k_max (kappa + alpha) / 2 + tiny)`, `k_max = pi n / L`.
    pub fn adaptive_dt(&self, state: &FlowState, cfl: f64) -> f64 {
        let k_max = self.grid.k_max();
        let umax = if state.u.max_abs() == 0.0 {
            0.0
        } else {
            let (a, b) = self.plan.to_physical_pair(&state.u.comps[0], &state.u.comps[1]);
            let c = self.plan.to_physical(&state.u.comps[2]);
            a.iter()
                .zip(&b)
                .zip(&c)
                .map(|((x, y), z)| x.abs().max(y.abs()).max(z.abs()))
                .fold(0.0, f64::max)
        };
        cfl / (k_max * umax + 0.5 * k_max * (self.params.kappa + self.params.alpha) + 1e-12)
    }

    /// Low-mode record of `(u, sigma)` and their forcing at `state`.
    pub fn forcing_record(&self, state: &FlowState, coarse: &SpectralGrid, radius: f64) -> Result<ForcingRecord> {
        let (fu, ft) = self.forcing(state)?;
        let g = &self.grid;
        Ok(ForcingRecord {
            time: state.time,
            u: restrict_vector(&state.u, g, coarse, radius),
            sigma: restrict_vector(&sigma_from_tau(&state.tau, g), g, coarse, radius),
            f_u: restrict_vector(&fu, g, coarse, radius),
            f_sigma: restrict_vector(&sigma_from_tau(&ft, g), g, coarse, radius),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub n: usize,
    pub box_length: f64,
    pub params: ModelParams,
    pub initial: InitialSpec,
    pub cfl: f64,
    pub t_end: f64,
    pub cadence: f64,
    pub nonlinear: bool,
    pub record_forcing: bool,
    /// Keep the state at every output time in [`RunOutput::snapshots`].
    pub snapshots: bool,
    /// Overrides the adaptive step (still capped by the output cadence).
    pub fixed_dt: Option<f64>,
    /// Cutoff radius `R`; defaults to [`default_cutoff_radius`].
    pub cutoff_radius: Option<f64>,
    /// Defaults to [`default_eta1`].
    pub eta1: Option<f64>,
}

impl SolverConfig {
    pub fn new(n: usize, box_length: f64, params: ModelParams) -> Self {
        Self {
            n,
            box_length,
            params,
            initial: InitialSpec::default_for(box_length),
            cfl: 0.5,
            t_end: 1.0,
            cadence: 0.1,
            nonlinear: true,
            record_forcing: false,
            snapshots: false,
            fixed_dt: None,
            cutoff_radius: None,
            eta1: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidArgument(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidArgument(format!("t_end must be positive, got {}", self.t_end)));
        }
        if !(self.cadence > 0.0) || !self.cadence.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "output cadence must be positive, got {}",
                self.cadence
            )));
        }
        if let Some(dt) = self.fixed_dt {
            if !(dt > 0.0) || !dt.is_finite() {
                return Err(Error::InvalidArgument(format!("fixed dt must be positive, got {dt}")));
            }
        }
        if let Some(eta) = self.eta1 {
            if !(eta >= 0.0) || !eta.is_finite() {
                return Err(Error::InvalidArgument(format!("eta1 must be >= 0, got {eta}")));
            }
        }
        Ok(())
    }

    pub fn resolved_cutoff(&self) -> Result<CutoffSpec> {
        CutoffSpec::new(
            self.cutoff_radius
                .unwrap_or_else(|| default_cutoff_radius(&self.params)),
        )
    }

    pub fn resolved_eta1(&self) -> f64 {
        self.eta1.unwrap_or_else(|| default_eta1(&self.params))
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub grid: SpectralGrid,
    pub cutoff: CutoffSpec,
    pub eta1: f64,
    pub samples: Vec<EnergySample>,
    pub snapshots: Vec<FlowState>,
    pub forcing: Option<ForcingSeries>,
    pub steps: usize,
    pub final_state: FlowState,
    /// Set when the run stopped early (non-finite values or the blow-up guard).
    pub aborted: Option<Error>,
}

impl RunOutput {
    /// Time of the last state that passed every guard.
    pub fn last_good_time(&self) -> f64 {
        self.final_state.time
    }
}

/// Runs from the configured initial data.
pub fn run(config: &SolverConfig) -> Result<RunOutput> {
    run_with(config, |_| Ok(()))
}

/// Like [`run`], calling `observer` with the state at every output time.
pub fn run_with(config: &SolverConfig, observer: impl FnMut(&FlowState) -> Result<()>) -> Result<RunOutput> {
    config.validate()?;
    let grid = SpectralGrid::new(config.n, config.box_length)?;
    let state = init_state(&config.initial, &grid)?;
    run_from(config, state, observer)
}

/// Runs from an explicit initial state on the configured grid.
pub fn run_from(
    config: &SolverConfig,
    initial: FlowState,
    mut observer: impl FnMut(&FlowState) -> Result<()>,
) -> Result<RunOutput> {
    config.validate()?;
    let grid = SpectralGrid::new(config.n, config.box_length)?;
    if initial.n() != grid.n() {
        return Err(Error::GridMismatch {
            field: initial.n(),
            grid: grid.n(),
        });
    }
    let cutoff = config.resolved_cutoff()?;
    let eta1 = config.resolved_eta1();
    let solver = Solver::new(grid.clone(), config.params, config.nonlinear);
    let coarse = if config.record_forcing {
        Some(coarse_grid(&grid, cutoff.radius())?)
    } else {
        None
    };

    let mut state = initial;
    let mut samples = Vec::new();
    let mut snapshots = Vec::new();
    let mut records = Vec::new();
    let mut aborted = None;
    let mut steps = 0;

    let mut emit = |s: &FlowState,
                    samples: &mut Vec<EnergySample>,
                    snapshots: &mut Vec<FlowState>,
                    records: &mut Vec<ForcingRecord>|
     -> Result<()> {
        samples.push(energy_functionals(s, &config.params, eta1, &cutoff, &grid));
        if let Some(c) = &coarse {
            records.push(solver.forcing_record(s, c, cutoff.radius())?);
        }
        if config.snapshots {
            snapshots.push(s.clone());
        }
        observer(s)
    };

    let h3_0 = h3_norm(&state, &grid);
    let limit = BLOW_UP_FACTOR * h3_0;
    if let Err(e) = emit(&state, &mut samples, &mut snapshots, &mut records) {
        match e {
            Error::NonFinite { .. } => aborted = Some(e),
            other => return Err(other),
        }
    }

    let t_end = config.t_end;
    let tol = 1e-12 * t_end.max(config.cadence);
    let mut j: u64 = 1;
    while aborted.is_none() && state.time < t_end - tol {
        let next_out = j as f64 * config.cadence;
        let stop = next_out.min(t_end);
        let remaining = stop - state.time;
        let mut dt = config
            .fixed_dt
            .unwrap_or_else(|| solver.adaptive_dt(&state, config.cfl))
            .min(config.cadence);
        let landing = dt >= remaining * (1.0 - 1e-9);
        if landing {
            dt = remaining;
        }
        let next = match solver.step(&state, dt) {
            Ok(s) => s,
            Err(e @ Error::NonFinite { .. }) => {
                aborted = Some(e);
                break;
            }
            Err(e) => return Err(e),
        };
        steps += 1;
        let norm = h3_norm(&next, &grid);
        if norm > limit {
            log::warn!("blow-up guard at t={}: H3 {norm:e} > {limit:e}", next.time);
            aborted = Some(Error::BlowUp {
                time: next.time,
                last_good_time: state.time,
                norm,
                limit,
            });
            break;
        }
        state = next;
        if landing {
            state.time = stop;
            if stop == next_out {
                j += 1;
                log::debug!("output at t={} after {steps} steps", state.time);
                if let Err(e) = emit(&state, &mut samples, &mut snapshots, &mut records) {
                    match e {
                        Error::NonFinite { .. } => aborted = Some(e),
                        other => return Err(other),
                    }
                }
            }
        }
    }

    let forcing = coarse.map(|c| ForcingSeries {
        grid: c,
        radius: cutoff.radius(),
        records,
    });
    Ok(RunOutput {
        grid,
        cutoff,
        eta1,
        samples,
        snapshots,
        forcing,
        steps,
        final_state: state,
        aborted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::divergence_defect;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn small_state(g: &SpectralGrid, seed: u64, amp: f64) -> FlowState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = FlowState {
            u: VectorField::random(g, &mut rng, 3),
            tau: SymTensorField::random(g, &mut rng, 3),
            time: 0.0,
        };
        s.u.scale(amp);
        s.tau.scale(amp);
        s.clean(g);
        s
    }

    #[test]
    fn zero_state_stays_zero() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let solver = Solver::new(g.clone(), ModelParams::default(), true);
        let z = FlowState::zeros(8);
        let (fu, ft) = solver.nonlinear_rhs(&z).unwrap();
        assert_eq!(fu.max_abs() + ft.max_abs(), 0.0);
        let s = solver.step(&z, 0.1).unwrap();
        assert_eq!(s.max_abs(), 0.0);
        assert_eq!(s.time, 0.1);
    }

    #[test]
    fn linear_toggle_reduces_to_coupling() {
        let g = SpectralGrid::new(8, 6.0).unwrap();
        let p = ModelParams::new(0.2, 1.0, 1.5, 0.7, 2.5, 0.3).unwrap();
        let solver = Solver::new(g.clone(), p, false);
        let s = small_state(&g, 3, 1.0);
        let (fu, ft) = solver.nonlinear_rhs(&s).unwrap();
        let mut eu = leray_project(&tensor_divergence(&s.tau, &g), &g);
        eu.scale(1.5);
        let (mut et, _) = velocity_gradient_parts(&s.u, &g);
        et.scale(2.5);
        let mut du = fu.clone();
        du.add_scaled(&eu, -1.0);
        let mut dt = ft.clone();
        dt.add_scaled(&et, -1.0);
        assert!(du.max_abs() < 1e-15 && dt.max_abs() < 1e-15);
    }

    #[test]
    fn step_keeps_invariants() {
        let g = SpectralGrid::new(12, 2.0 * PI).unwrap();
        let p = ModelParams::new(0.1, 0.5, 1.0, 0.5, 1.0, 0.8).unwrap();
        let solver = Solver::new(g.clone(), p, true);
        let mut s = small_state(&g, 4, 0.5);
        for _ in 0..5 {
            s = solver.step(&s, 0.02).unwrap();
            assert!(divergence_defect(&s.u, &g) <= 1e-11 * s.u.max_abs());
            assert!(s.u.conjugate_symmetry_defect(&g) == 0.0);
            assert!(s.tau.conjugate_symmetry_defect(&g) == 0.0);
        }
        assert!((s.time - 0.1).abs() < 1e-15);
    }

    #[test]
    fn adaptive_dt_formula() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let p = ModelParams::default();
        let solver = Solver::new(g.clone(), p, true);
        let z = FlowState::zeros(8);
        let k_max = g.k_max();
        let expect = 0.5 / (k_max * (p.kappa + p.alpha) / 2.0 + 1e-12);
        assert_eq!(solver.adaptive_dt(&z, 0.5), expect);
        // advection dominated: doubling u halves dt asymptotically
        let mut s = small_state(&g, 5, 1e4);
        let d1 = solver.adaptive_dt(&s, 1.0);
        s.u.scale(2.0);
        let d2 = solver.adaptive_dt(&s, 1.0);
        assert!((d1 / d2 - 2.0).abs() < 1e-3);
    }

    #[test]
    fn richardson_local_error_is_third_order() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let p = ModelParams::new(0.05, 0.1, 1.0, 0.2, 1.0, 0.5).unwrap();
        let solver = Solver::new(g.clone(), p, true);
        let s0 = small_state(&g, 6, 2.0);
        let err = |h: f64| {
            let a = solver.step(&s0, h).unwrap();
            let b = solver.step(&solver.step(&s0, h / 2.0).unwrap(), h / 2.0).unwrap();
            let mut d = a.u.clone();
            d.add_scaled(&b.u, -1.0);
            let mut e = a.tau.clone();
            e.add_scaled(&b.tau, -1.0);
            d.norm_l2(&g) + e.norm_l2(&g)
        };
        let (e1, e2) = (err(0.02), err(0.01));
        let order = (e1 / e2).log2();
        assert!((order - 3.0).abs() < 0.2, "local order {order}");
    }

    #[test]
    fn short_run_emits_only_initial_row() {
        let mut cfg = SolverConfig::new(16, 16.0, ModelParams::default());
        cfg.initial.width = 4.0;
        cfg.t_end = 0.05;
        cfg.cadence = 0.1;
        let out = run(&cfg).unwrap();
        assert_eq!(out.samples.len(), 1);
        assert_eq!(out.samples[0].time, 0.0);
        assert!((out.final_state.time - 0.05).abs() < 1e-15);
    }

    #[test]
    fn outputs_land_on_the_cadence() {
        let mut cfg = SolverConfig::new(16, 16.0, ModelParams::default());
        cfg.initial.width = 4.0;
        cfg.t_end = 0.35;
        cfg.cadence = 0.1;
        cfg.record_forcing = true;
        cfg.snapshots = true;
        let out = run(&cfg).unwrap();
        let times: Vec<f64> = out.samples.iter().map(|s| s.time).collect();
        assert_eq!(times, vec![0.0, 0.1, 0.2, 0.30000000000000004]);
        assert_eq!(out.snapshots.len(), 4);
        assert_eq!(out.forcing.as_ref().unwrap().records.len(), 4);
        assert!(out.aborted.is_none());
    }

    #[test]
    fn non_finite_state_is_reported() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let solver = Solver::new(g.clone(), ModelParams::default(), true);
        let mut s = small_state(&g, 7, 1.0);
        s.u.comps[0].coeffs_mut()[1] = num_complex::Complex64::new(f64::NAN, 0.0);
        match solver.step(&s, 0.1) {
            Err(Error::NonFinite { .. }) => {}
            other => panic!("expected non-finite error, got {other:?}"),
        }
    }
}
