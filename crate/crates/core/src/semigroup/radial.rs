//! Whole-space `L^2` norms of the linear flow by radial quadrature.
//!
//! Radial data `u_hat_0(xi) = a(|xi|) e(xi)` and `sigma_hat_0(xi) = c(|xi|) e(xi)`
//! share the unit direction field `e`, so the propagated state at `xi` is
//! `M(|xi|, t) (a, c)` along `e` and
//! `||Lambda^k u(t)||^2 = 4 pi int_0^inf r^{2+2k} |M_00 a + M_01 c|^2 dr`.
//! Norms are taken in the unitary Fourier convention (no `(2 pi)^3` factors).

use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};

use super::green::propagator;
use super::quadrature::{integrate, QuadratureOptions};
use super::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialProfile {
    Zero,
    /// `amplitude * exp(-(r / scale)^2)`.
    Gaussian { amplitude: f64, scale: f64 },
}

impl RadialProfile {
    pub fn gaussian(amplitude: f64, scale: f64) -> Self {
        RadialProfile::Gaussian { amplitude, scale }
    }

    pub fn value(&self, r: f64) -> f64 {
        match *self {
            RadialProfile::Zero => 0.0,
            RadialProfile::Gaussian { amplitude, scale } => {
                let x = r / scale;
                amplitude * (-x * x).exp()
            }
        }
    }

    fn scale(&self) -> Option<f64> {
        match *self {
            RadialProfile::Zero => None,
            RadialProfile::Gaussian { scale, .. } => Some(scale),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    U,
    Sigma,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::U => "u",
            Component::Sigma => "sigma",
        }
    }
}

impl std::str::FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(Component::U),
            "sigma" => Ok(Component::Sigma),
            other => Err(Error::InvalidArgument(format!("unknown component {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialData {
    pub u0: RadialProfile,
    pub sigma0: RadialProfile,
}

impl RadialData {
    /// Gaussian velocity `exp(-r^2)` and vanishing stress.
    pub fn gaussian_velocity() -> Self {
        Self {
            u0: RadialProfile::gaussian(1.0, 1.0),
            sigma0: RadialProfile::Zero,
        }
    }

    /// Upper radius where the initial Gaussian tail is negligible for order `k`.
    fn cutoff_radius(&self, k: u32) -> Option<f64> {
        let s = match (self.u0.scale(), self.sigma0.scale()) {
            (None, None) => return None,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.max(b),
        };
        Some(s * (((k + 1) as f64 / 2.0).sqrt() + 6.0))
    }
}

fn quadrature_options() -> QuadratureOptions {
    QuadratureOptions {
        rel_tol: 1e-11,
        abs_tol: 0.0,
        max_intervals: 4000,
    }
}

/// `||Lambda^k component(t)||_{L^2(R^3)}` of the linear flow from radial data.
pub fn linear_norm_radial(
    data: &RadialData,
    component: Component,
    k: u32,
    t: f64,
    p: &ModelParams,
) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time must be >= 0, got {t}")));
    }
    let Some(r_max) = data.cutoff_radius(k) else {
        return Ok(0.0);
    };
    let row = match component {
        Component::U => 0,
        Component::Sigma => 1,
    };
    let integrand = |r: f64| {
        let m = propagator(r, t, p);
        let v = m[row][0] * data.u0.value(r) + m[row][1] * data.sigma0.value(r);
        4.0 * PI * r.powi(2 + 2 * k as i32) * v * v
    };
    // Heat-like concentration near r ~ t^{-1/2} gets its own panels.
    let mut breaks = vec![0.0];
    if t > 0.0 {
        let scale = 1.0 / t.sqrt();
        for c in [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
            let b = c * scale;
            if b < r_max && b > *breaks.last().unwrap() {
                breaks.push(b);
            }
        }
    }
    breaks.push(r_max);
    let est = integrate(integrand, &breaks, &quadrature_options())?;
    Ok(est.value.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub t: f64,
    pub component: Component,
    pub k: u32,
    pub norm: f64,
}

/// Norm table ordered by time, then component (`u`, `sigma`), then `k`.
pub fn linear_decay_series(
    data: &RadialData,
    k_list: &[u32],
    t_grid: &[f64],
    p: &ModelParams,
) -> Result<Vec<DecayRow>> {
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument("time grid must be increasing".into()));
    }
    let mut rows = Vec::with_capacity(t_grid.len() * k_list.len() * 2);
    for &t in t_grid {
        for component in [Component::U, Component::Sigma] {
            for &k in k_list {
                let norm = linear_norm_radial(data, component, k, t, p).map_err(|e| {
                    Error::SeriesQuadrature {
                        t,
                        k,
                        source: Box::new(e),
                    }
                })?;
                rows.push(DecayRow {
                    t,
                    component,
                    k,
                    norm,
                });
            }
        }
    }
    Ok(rows)
}

/// `n` log-spaced times on `[t0, t1]`.
pub fn log_spaced(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![t0];
    }
    let (a, b) = (t0.ln(), t1.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn write_decay_csv(rows: &[DecayRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "component", "k", "norm"])?;
    for row in rows {
        w.write_record([
            format!("{:e}", row.t),
            row.component.name().to_string(),
            row.k.to_string(),
            format!("{:e}", row.norm),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `(t, norm)` pairs for one `(component, k)` column of a decay table.
pub fn select_series(rows: &[DecayRow], component: Component, k: u32) -> Vec<(f64, f64)> {
    rows.iter()
        .filter(|r| r.component == component && r.k == k)
        .map(|r| (r.t, r.norm))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_gaussian_norm_matches_closed_form() {
        let p = ModelParams::default();
        let data = RadialData::gaussian_velocity();
        let got = linear_norm_radial(&data, Component::U, 0, 0.0, &p).unwrap();
        // 4 pi int r^2 e^{-2 r^2} dr = 4 pi sqrt(pi/2)/8
        let exact = (4.0 * PI * (PI / 2.0).sqrt() / 8.0).sqrt();
        assert!((got - exact).abs() <= 1e-10 * exact);
        assert_eq!(linear_norm_radial(&data, Component::Sigma, 0, 0.0, &p).unwrap(), 0.0);
        // k = 2: 4 pi int r^6 e^{-2 r^2} dr = 4 pi * 15 sqrt(pi/2) / 128
        let got = linear_norm_radial(&data, Component::U, 2, 0.0, &p).unwrap();
        let exact = (4.0 * PI * 15.0 * (PI / 2.0).sqrt() / 128.0).sqrt();
        assert!((got - exact).abs() <= 1e-10 * exact);
    }

    #[test]
    fn zero_data_gives_zero_rows() {
        let p = ModelParams::default();
        let data = RadialData {
            u0: RadialProfile::Zero,
            sigma0: RadialProfile::Zero,
        };
        let rows = linear_decay_series(&data, &[0, 1, 2, 3], &[1.0], &p).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.norm == 0.0));
    }

    #[test]
    fn series_consistent_with_direct_call_and_monotone() {
        let p = ModelParams::default();
        let data = RadialData::gaussian_velocity();
        let rows = linear_decay_series(&data, &[0], &[0.0], &p).unwrap();
        let direct = linear_norm_radial(&data, Component::U, 0, 0.0, &p).unwrap();
        assert_eq!(rows[0].norm, direct);

        let ts = log_spaced(1.0, 1e4, 25);
        let rows = linear_decay_series(&data, &[0, 1, 2, 3], &ts, &p).unwrap();
        for k in 0..4 {
            let s = select_series(&rows, Component::U, k);
            assert!(s.windows(2).all(|w| w[1].1 < w[0].1), "u k={k}");
            // sigma starts from zero and peaks near t = 1.5 before decaying
            let s: Vec<_> = select_series(&rows, Component::Sigma, k)
                .into_iter()
                .filter(|&(t, _)| t >= 2.0)
                .collect();
            assert!(s.windows(2).all(|w| w[1].1 < w[0].1), "sigma k={k}");
        }
    }

    #[test]
    fn csv_layout() {
        let rows = vec![DecayRow {
            t: 1.0,
            component: Component::Sigma,
            k: 2,
            norm: 0.5,
        }];
        let mut buf = Vec::new();
        write_decay_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,component,k,norm\n1e0,sigma,2,5e-1\n");
    }
}
