//! Low-frequency Duhamel check in `(u_hat, sigma_hat)` variables:
//! `y(t) = M(t - t0) y(t0) + int_{t0}^t M(t - s) F(s) ds` per mode with
//! `|xi| < R`, the integral by the trapezoidal rule over the recorded forcing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::SpectralGrid;
use crate::semigroup::green::{propagator, symbol_matrix};
use crate::semigroup::{Matrix2, ModelParams};
use crate::solver::ForcingSeries;

/// `A^{-1} (e^{A t} - I) f`, the exact Duhamel integral of a constant forcing.
pub fn constant_forcing_integral(r: f64, t: f64, f: [f64; 2], p: &ModelParams) -> Result<[f64; 2]> {
    let a = symbol_matrix(r, p);
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det == 0.0 {
        return Err(Error::InvalidArgument(format!("symbol matrix is singular at r={r}")));
    }
    let m = propagator(r, t, p);
    let v = [
        (m[0][0] - 1.0) * f[0] + m[0][1] * f[1],
        m[1][0] * f[0] + (m[1][1] - 1.0) * f[1],
    ];
    Ok([
        (a[1][1] * v[0] - a[0][1] * v[1]) / det,
        (-a[1][0] * v[0] + a[0][0] * v[1]) / det,
    ])
}

/// Trapezoidal `int_{t0}^{t} M(t - s) f(s) ds` on the nodes `times`
/// (`times` increasing, last node equal to `t`).
pub fn trapezoid_integral(r: f64, times: &[f64], f: &[[f64; 2]], p: &ModelParams) -> [f64; 2] {
    let t = *times.last().expect("at least one node");
    let mut acc = [0.0; 2];
    for i in 0..times.len() {
        let left = if i > 0 { times[i] - times[i - 1] } else { 0.0 };
        let right = if i + 1 < times.len() { times[i + 1] - times[i] } else { 0.0 };
        let w = 0.5 * (left + right);
        let m = propagator(r, t - times[i], p);
        acc[0] += w * (m[0][0] * f[i][0] + m[0][1] * f[i][1]);
        acc[1] += w * (m[1][0] * f[i][0] + m[1][1] * f[i][1]);
    }
    acc
}

fn apply(m: &Matrix2, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    (m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b)
}

fn mode_m2(grid: &SpectralGrid, idx: usize) -> usize {
    let (i, j, k) = grid.unflat(idx);
    [i, j, k].iter().map(|&a| grid.mode_number(a).pow(2)).sum::<i64>() as usize
}

/// Relative discrepancy `||y_pred - y|| / ||y||` over the recorded low modes
/// at each record after the first. `y` stacks `u_hat` and `sigma_hat`.
pub fn duhamel_low_freq_residual(series: &ForcingSeries, p: &ModelParams) -> Result<Vec<(f64, f64)>> {
    let recs = &series.records;
    if recs.len() < 2 {
        return Err(Error::MissingForcing(format!(
            "need at least 2 forcing records, found {}",
            recs.len()
        )));
    }
    if recs.windows(2).any(|w| !(w[1].time > w[0].time)) {
        return Err(Error::MissingForcing("forcing record times must increase".into()));
    }
    let g = &series.grid;
    let modes: Vec<(usize, usize)> = (0..g.mode_count())
        .filter(|&idx| idx != 0 && !g.is_nyquist(idx) && g.radius(idx) < series.radius)
        .map(|idx| (idx, mode_m2(g, idx)))
        .collect();
    let max_m2 = modes.iter().map(|m| m.1).max().unwrap_or(0);
    let unit = g.k_min();
    let table = |dt: f64| -> Vec<Matrix2> {
        (0..=max_m2)
            .map(|s| propagator(unit * (s as f64).sqrt(), dt, p))
            .collect()
    };

    let t0 = recs[0].time;
    let mut out = Vec::with_capacity(recs.len() - 1);
    for j in 1..recs.len() {
        let tj = recs[j].time;
        let free = table(tj - t0);
        let kernels: Vec<(f64, Vec<Matrix2>)> = (0..=j)
            .map(|i| {
                let left = if i > 0 { recs[i].time - recs[i - 1].time } else { 0.0 };
                let right = if i < j { recs[i + 1].time - recs[i].time } else { 0.0 };
                (0.5 * (left + right), table(tj - recs[i].time))
            })
            .collect();
        let (mut err2, mut norm2) = (0.0, 0.0);
        for &(idx, s) in &modes {
            for c in 0..3 {
                let (mut pu, mut ps) = apply(
                    &free[s],
                    recs[0].u.comps[c].coeffs()[idx],
                    recs[0].sigma.comps[c].coeffs()[idx],
                );
                for (i, (w, k)) in kernels.iter().enumerate() {
                    let (a, b) = apply(
                        &k[s],
                        recs[i].f_u.comps[c].coeffs()[idx],
                        recs[i].f_sigma.comps[c].coeffs()[idx],
                    );
                    pu += a * *w;
                    ps += b * *w;
                }
                let au = recs[j].u.comps[c].coeffs()[idx];
                let asg = recs[j].sigma.comps[c].coeffs()[idx];
                err2 += (pu - au).norm_sqr() + (ps - asg).norm_sqr();
                norm2 += au.norm_sqr() + asg.norm_sqr();
            }
        }
        let r = if norm2 == 0.0 {
            err2.sqrt()
        } else {
            (err2 / norm2).sqrt()
        };
        out.push((tj, r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_forcing_matches_trapezoid_at_second_order() {
        let p = ModelParams::new(0.2, 1.0, 1.5, 0.8, 2.0, 0.0).unwrap();
        let (r, t, f) = (0.7, 2.0, [0.3, -1.1]);
        let exact = constant_forcing_integral(r, t, f, &p).unwrap();
        let err = |n: usize| {
            let times: Vec<f64> = (0..=n).map(|i| t * i as f64 / n as f64).collect();
            let fs = vec![f; n + 1];
            let got = trapezoid_integral(r, &times, &fs, &p);
            ((got[0] - exact[0]).powi(2) + (got[1] - exact[1]).powi(2)).sqrt()
        };
        let (e1, e2) = (err(40), err(80));
        assert!(((e1 / e2).log2() - 2.0).abs() < 0.05);
        assert!(e2 < 1e-4);
    }

    #[test]
    fn zero_time_integral_vanishes() {
        let p = ModelParams::default();
        assert_eq!(constant_forcing_integral(0.5, 0.0, [1.0, 2.0], &p).unwrap(), [0.0, 0.0]);
    }
}
