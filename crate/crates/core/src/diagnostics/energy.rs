//! Sobolev norms and the third-order energy functionals.
//!
//! `||grad^k f||` is standardized as `||Lambda^k f||` throughout.

use std::io::{Read, Write};

use crate::cutoff::{high_part, CutoffSpec};
use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::SpectralGrid;
use crate::semigroup::ModelParams;
use crate::solver::FlowState;
use crate::spectral::{lambda_power, sigma_from_tau};

/// `||Lambda^k f||_{L^2}`.
pub fn sobolev_norm<F: SpectralField>(f: &F, k: u32, grid: &SpectralGrid) -> f64 {
    let radii = grid.radii();
    f.weighted_norm_sq(grid, |idx| radii[idx].powi(2 * k as i32))
        .max(0.0)
        .sqrt()
}

/// `(sum_{k <= 3} ||Lambda^k u||^2 + ||Lambda^k tau||^2)^{1/2}`.
pub fn h3_norm(state: &FlowState, grid: &SpectralGrid) -> f64 {
    let radii = grid.radii();
    let w = |idx: usize| {
        let r2 = radii[idx] * radii[idx];
        1.0 + r2 + r2 * r2 + r2 * r2 * r2
    };
    (state.u.weighted_norm_sq(grid, w) + state.tau.weighted_norm_sq(grid, w))
        .max(0.0)
        .sqrt()
}

/// `0.1 min(alpha, kappa)`.
pub fn default_eta1(p: &ModelParams) -> f64 {
    0.1 * p.alpha.min(p.kappa)
}

/// Largest `eta1` for which `H3 / 2 <= H3_tilde <= 2 H3` is guaranteed at
/// cutoff radius `R`: `sqrt(alpha kappa) R / 2`.
///
/// Follows from `||Lambda^2 sigma^h|| <= (2/R) ||Lambda^3 tau||`.
pub fn sandwich_eta_limit(p: &ModelParams, cutoff: &CutoffSpec) -> f64 {
    0.5 * (p.alpha * p.kappa).sqrt() * cutoff.radius()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    pub time: f64,
    pub norm_u: [f64; 4],
    pub norm_tau: [f64; 5],
    pub h3: f64,
    pub h3_tilde: f64,
    pub h3_high: f64,
    pub h3_tilde_high: f64,
    /// `<Lambda^3 u^h, Lambda^2 sigma^h>`.
    pub cross_term: f64,
    pub eta1: f64,
}

impl EnergySample {
    /// The `H^3` norm of `(u, tau)` rebuilt from the stored norms.
    pub fn h3_norm(&self) -> f64 {
        let s: f64 = self.norm_u.iter().map(|x| x * x).sum::<f64>()
            + self.norm_tau[..4].iter().map(|x| x * x).sum::<f64>();
        s.sqrt()
    }
}

pub fn energy_functionals(
    state: &FlowState,
    p: &ModelParams,
    eta1: f64,
    cutoff: &CutoffSpec,
    grid: &SpectralGrid,
) -> EnergySample {
    let norm_u = std::array::from_fn(|k| sobolev_norm(&state.u, k as u32, grid));
    let norm_tau = std::array::from_fn(|k| sobolev_norm(&state.tau, k as u32, grid));
    let uh = high_part(&state.u, cutoff, grid);
    let th = high_part(&state.tau, cutoff, grid);
    let sh = sigma_from_tau(&th, grid);
    let cross_term = lambda_power(&uh, 3.0, grid).inner(&lambda_power(&sh, 2.0, grid), grid);
    let h3: f64 = p.alpha * norm_u[3] * norm_u[3] + p.kappa * norm_tau[3] * norm_tau[3];
    let (a, b) = (sobolev_norm(&uh, 3, grid), sobolev_norm(&th, 3, grid));
    let h3_high = p.alpha * a * a + p.kappa * b * b;
    EnergySample {
        time: state.time,
        norm_u,
        norm_tau,
        h3,
        h3_tilde: h3 + eta1 * cross_term,
        h3_high,
        h3_tilde_high: h3_high + eta1 * cross_term,
        cross_term,
        eta1,
    }
}

pub const DIAGNOSTICS_HEADER: [&str; 15] = [
    "t",
    "norm_u_0",
    "norm_u_1",
    "norm_u_2",
    "norm_u_3",
    "norm_tau_0",
    "norm_tau_1",
    "norm_tau_2",
    "norm_tau_3",
    "norm_tau_4",
    "H3",
    "H3_tilde",
    "H3_high",
    "H3_tilde_high",
    "cross_term",
];

pub fn write_diagnostics_csv(samples: &[EnergySample], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DIAGNOSTICS_HEADER)?;
    for s in samples {
        let mut row = vec![s.time];
        row.extend(s.norm_u);
        row.extend(s.norm_tau);
        row.extend([s.h3, s.h3_tilde, s.h3_high, s.h3_tilde_high, s.cross_term]);
        w.write_record(row.iter().map(|v| format!("{v:e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Header and raw cells of a CSV file; cells are parsed on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn read(input: impl Read) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let header: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
        if header.is_empty() || header.iter().all(String::is_empty) {
            return Err(Error::Format("CSV has no header".into()));
        }
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            rows.push(rec.iter().map(|c| c.trim().to_string()).collect());
        }
        Ok(Self { header, rows })
    }

    fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// `(t, value)` pairs for `column`. A decay table (`t,component,k,norm`)
    /// is addressed as `<component>_<k>`, e.g. `u_1`.
    pub fn series(&self, column: &str) -> Result<Vec<(f64, f64)>> {
        let t = self
            .column("t")
            .ok_or_else(|| Error::Format("CSV has no `t` column".into()))?;
        let parse = |s: &str, line: usize, what: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| {
                Error::Format(format!("row {line}: {what} value {s:?} is not a number"))
            })
        };
        let cell = |row: &[String], i: usize, line: usize| -> Result<String> {
            row.get(i)
                .cloned()
                .ok_or_else(|| Error::Format(format!("row {line}: missing cell {i}")))
        };
        if let Some(c) = self.column(column) {
            return self
                .rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let line = i + 2;
                    Ok((
                        parse(&cell(row, t, line)?, line, "t")?,
                        parse(&cell(row, c, line)?, line, column)?,
                    ))
                })
                .collect();
        }
        let (Some(ci), Some(ki), Some(ni)) = (self.column("component"), self.column("k"), self.column("norm")) else {
            return Err(Error::Format(format!("no column named {column:?}")));
        };
        let (comp, k) = column
            .rsplit_once('_')
            .ok_or_else(|| Error::Format(format!("decay column must look like <component>_<k>, got {column:?}")))?;
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let line = i + 2;
            if cell(row, ci, line)? == comp && cell(row, ki, line)? == k {
                out.push((
                    parse(&cell(row, t, line)?, line, "t")?,
                    parse(&cell(row, ni, line)?, line, "norm")?,
                ));
            }
        }
        if out.is_empty() {
            return Err(Error::Format(format!("no rows for {column:?}")));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ScalarField, SymTensorField, VectorField};
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn single_mode_norm() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let a = 0.3;
        let f = ScalarField::single_mode(&g, g.flat(2, 0, 0), Complex64::new(a, 0.0));
        // two coefficients of size a, volume (2 pi)^3
        let vol = g.volume();
        let got = sobolev_norm(&f, 3, &g);
        assert!((got - 8.0 * a * (2.0 * vol).sqrt()).abs() < 1e-12 * got);
        assert!((sobolev_norm(&f, 0, &g) - f.norm_l2(&g)).abs() < 1e-15);
    }

    #[test]
    fn gaussian_second_moment() {
        // g = exp(-|x - c|^2 / w^2): ||Lambda^2 g||^2 = int |xi|^4 |g_hat|^2 dxi / (2 pi)^3
        // = 15 pi^{3/2} / (2 sqrt(2) w)
        let n = 48;
        let g = SpectralGrid::new(n, 10.0).unwrap();
        let w = 1.0;
        let f = crate::solver::gaussian_bump(&g, w);
        let got = sobolev_norm(&f, 2, &g).powi(2);
        let exact = 15.0 * PI.powf(1.5) / (2.0 * 2f64.sqrt() * w);
        assert!((got - exact).abs() < 1e-9 * exact, "{got} vs {exact}");
        let l2 = sobolev_norm(&f, 0, &g).powi(2);
        let exact0 = (PI / 2.0).powf(1.5) * w.powi(3);
        assert!((l2 - exact0).abs() < 1e-9 * exact0);
    }

    fn random_state(g: &SpectralGrid, seed: u64) -> FlowState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = FlowState {
            u: VectorField::random(g, &mut rng, 4),
            tau: SymTensorField::random(g, &mut rng, 4),
            time: 0.0,
        };
        s.clean(g);
        s
    }

    #[test]
    fn zero_state_and_zero_eta() {
        let g = SpectralGrid::new(8, 4.0).unwrap();
        let p = ModelParams::default();
        let c = CutoffSpec::new(1.0).unwrap();
        let z = energy_functionals(&FlowState::zeros(8), &p, 0.3, &c, &g);
        assert_eq!(z.h3 + z.h3_tilde + z.h3_high + z.h3_tilde_high + z.cross_term, 0.0);
        let s = energy_functionals(&random_state(&g, 1), &p, 0.0, &c, &g);
        assert_eq!(s.h3_tilde, s.h3);
        assert_eq!(s.h3_tilde_high, s.h3_high);
    }

    #[test]
    fn norm_consistency() {
        let g = SpectralGrid::new(12, 7.0).unwrap();
        let s = random_state(&g, 2);
        for k in 1..=4 {
            let a = sobolev_norm(&s.tau, k, &g);
            let b = sobolev_norm(&lambda_power(&s.tau, 1.0, &g), k - 1, &g);
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn sandwich_holds_below_the_limit() {
        let g = SpectralGrid::new(12, 12.0).unwrap();
        let p = ModelParams::new(0.0, 1.0, 1.3, 1.0, 0.8, 0.0).unwrap();
        let c = CutoffSpec::new(2.0).unwrap();
        let eta = sandwich_eta_limit(&p, &c);
        for seed in 0..20 {
            let e = energy_functionals(&random_state(&g, seed), &p, eta, &c, &g);
            assert!(0.5 * e.h3 <= e.h3_tilde && e.h3_tilde <= 2.0 * e.h3);
            assert!(0.5 * e.h3_high <= e.h3_tilde_high && e.h3_tilde_high <= 2.0 * e.h3_high);
        }
    }

    #[test]
    fn csv_round_trip_through_table() {
        let g = SpectralGrid::new(8, 4.0).unwrap();
        let p = ModelParams::default();
        let c = CutoffSpec::new(1.0).unwrap();
        let mut s = random_state(&g, 3);
        let mut samples = Vec::new();
        for i in 0..3 {
            s.time = i as f64;
            samples.push(energy_functionals(&s, &p, 0.1, &c, &g));
        }
        let mut buf = Vec::new();
        write_diagnostics_csv(&samples, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,norm_u_0,norm_u_1,norm_u_2,norm_u_3,norm_tau_0,"));
        let table = CsvTable::read(&buf[..]).unwrap();
        let series = table.series("norm_u_2").unwrap();
        assert_eq!(series.len(), 3);
        for (row, smp) in series.iter().zip(&samples) {
            assert_eq!(row.0, smp.time);
            assert_eq!(row.1, smp.norm_u[2]);
        }
        assert!(table.series("nope").is_err());
    }

    #[test]
    fn decay_table_columns() {
        let text = "t,component,k,norm\n1e0,u,0,2e0\n1e0,sigma,0,3e0\n2e0,u,0,1e0\n";
        let table = CsvTable::read(text.as_bytes()).unwrap();
        assert_eq!(table.series("u_0").unwrap(), vec![(1.0, 2.0), (2.0, 1.0)]);
        assert_eq!(table.series("sigma_0").unwrap(), vec![(1.0, 3.0)]);
        assert!(table.series("sigma_3").is_err());
        let bad = "t,x\n1,abc\n";
        assert!(CsvTable::read(bad.as_bytes()).unwrap().series("x").is_err());
    }
}
