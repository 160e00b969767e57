//! Exact flow of the full linear operator, mode by mode.
//!
//! For `xi != 0` the stress splits as `tau = tau_r - i S(sigma)` with
//! `sigma = i P(e . tau)`, `S(v) = e v^T + v e^T` and `e = xi / |xi|`. The pair
//! `(u_hat, sigma_hat)` evolves under the `2x2` propagator, while the
//! remainder `tau_r` (invisible to `sigma`) only feels `exp(-(mu r^2 + beta) t)`.

use num_complex::Complex64;

use crate::field::{SymTensorField, VectorField};
use crate::grid::SpectralGrid;
use crate::semigroup::green::propagator;
use crate::semigroup::{Matrix2, ModelParams};
use crate::spectral::project_mode;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone)]
pub struct LinearFlow {
    params: ModelParams,
    unit: f64,
    /// `|m|^2` per mode, `None` outside the dealiased band.
    m2: Vec<Option<u32>>,
    max_m2: usize,
}

/// Propagators for one step length, indexed by `|m|^2`.
#[derive(Debug, Clone)]
pub struct LinearTable {
    mats: Vec<Matrix2>,
    damp: Vec<f64>,
}

impl LinearFlow {
    pub fn new(grid: &SpectralGrid, params: &ModelParams) -> Self {
        let mut max_m2 = 0;
        let m2 = (0..grid.mode_count())
            .map(|idx| {
                if !grid.retained(idx) || grid.is_nyquist(idx) {
                    return None;
                }
                let (i, j, k) = grid.unflat(idx);
                let s: i64 = [i, j, k].iter().map(|&a| grid.mode_number(a).pow(2)).sum();
                max_m2 = max_m2.max(s as usize);
                Some(s as u32)
            })
            .collect();
        Self {
            params: *params,
            unit: grid.k_min(),
            m2,
            max_m2,
        }
    }

    pub fn table(&self, h: f64) -> LinearTable {
        let p = &self.params;
        let mut mats = Vec::with_capacity(self.max_m2 + 1);
        let mut damp = Vec::with_capacity(self.max_m2 + 1);
        for s in 0..=self.max_m2 {
            let r = self.unit * (s as f64).sqrt();
            mats.push(propagator(r, h, p));
            damp.push((-(p.mu * r * r + p.beta) * h).exp());
        }
        LinearTable { mats, damp }
    }

    /// Advances `(u, tau)` by the step encoded in `table`.
    pub fn apply(
        &self,
        grid: &SpectralGrid,
        table: &LinearTable,
        u: &mut VectorField,
        tau: &mut SymTensorField,
    ) {
        for idx in 0..grid.mode_count() {
            let Some(s) = self.m2[idx] else { continue };
            let s = s as usize;
            let m = &table.mats[s];
            let damp = table.damp[s];
            if s == 0 {
                // mean velocity is conserved, mean stress damped
                let t = tau.at(idx);
                tau.set_symmetric_part(idx, scale3(&t, damp));
                continue;
            }
            let xi = grid.wavevector(idx);
            let r = grid.radius(idx);
            let e = [xi[0] / r, xi[1] / r, xi[2] / r];
            let uu = u.at(idx);
            let t = tau.at(idx);
            let et: [Complex64; 3] =
                std::array::from_fn(|k| e[0] * t[0][k] + e[1] * t[1][k] + e[2] * t[2][k]);
            let pe = project_mode(xi, et);
            let sigma = [I * pe[0], I * pe[1], I * pe[2]];
            let u_new: [Complex64; 3] =
                std::array::from_fn(|c| m[0][0] * uu[c] + m[0][1] * sigma[c]);
            let s_new: [Complex64; 3] =
                std::array::from_fn(|c| m[1][0] * uu[c] + m[1][1] * sigma[c]);
            let t_new: [[Complex64; 3]; 3] = std::array::from_fn(|a| {
                std::array::from_fn(|b| {
                    let old_part = e[a] * sigma[b] + sigma[a] * e[b];
                    let new_part = e[a] * s_new[b] + s_new[a] * e[b];
                    damp * (t[a][b] + I * old_part) - I * new_part
                })
            });
            u.set(idx, u_new);
            tau.set_symmetric_part(idx, t_new);
        }
    }
}

fn scale3(t: &[[Complex64; 3]; 3], s: f64) -> [[Complex64; 3]; 3] {
    std::array::from_fn(|a| std::array::from_fn(|b| t[a][b] * s))
}
