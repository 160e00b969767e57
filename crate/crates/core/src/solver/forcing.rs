//! Low-frequency forcing records in `(u_hat, sigma_hat)` variables.
//!
//! Only modes with `|xi| < R` are kept, stored on the smallest even grid of
//! the same box that holds them.

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::SpectralGrid;
use crate::snapshot::{Snapshot, SnapshotKind};

#[derive(Debug, Clone, PartialEq)]
pub struct ForcingRecord {
    pub time: f64,
    pub u: VectorField,
    pub sigma: VectorField,
    pub f_u: VectorField,
    pub f_sigma: VectorField,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForcingSeries {
    /// Coarse grid holding the recorded modes.
    pub grid: SpectralGrid,
    /// Cutoff radius `R`; modes with `|xi| >= R` are zero.
    pub radius: f64,
    pub records: Vec<ForcingRecord>,
}

/// Coarse grid covering every fine-grid mode with `|xi| < radius` that
/// survives dealiasing.
pub fn coarse_grid(fine: &SpectralGrid, radius: f64) -> Result<SpectralGrid> {
    let unit = fine.k_min();
    let ratio = radius / unit;
    let m = (ratio.ceil() as i64 - 1).clamp(0, (2 * fine.n() as i64) / 6);
    let n = (2 * (m as usize + 1)).max(4);
    SpectralGrid::new(n, fine.box_length())
}

/// Copies the modes with `|xi| < radius` from `fine` onto `coarse`.
pub fn restrict(field: &ScalarField, fine: &SpectralGrid, coarse: &SpectralGrid, radius: f64) -> ScalarField {
    let nf = fine.n() as i64;
    ScalarField::from_fn(coarse, |idx| {
        if coarse.is_nyquist(idx) || coarse.radius(idx) >= radius {
            return Default::default();
        }
        let (i, j, k) = coarse.unflat(idx);
        let map = |a: usize| coarse.mode_number(a).rem_euclid(nf) as usize;
        let fidx = fine.flat(map(i), map(j), map(k));
        if fine.retained(fidx) {
            field.coeffs()[fidx]
        } else {
            Default::default()
        }
    })
}

pub fn restrict_vector(v: &VectorField, fine: &SpectralGrid, coarse: &SpectralGrid, radius: f64) -> VectorField {
    VectorField {
        comps: std::array::from_fn(|c| restrict(&v.comps[c], fine, coarse, radius)),
    }
}

impl ForcingSeries {
    /// One `FRC1` frame per record: `u`, `sigma`, `F_u`, `F_sigma` (12 components).
    pub fn to_snapshots(&self) -> Vec<Snapshot> {
        self.records
            .iter()
            .map(|r| Snapshot {
                kind: SnapshotKind::Forcing,
                n: self.grid.n(),
                box_length: self.grid.box_length(),
                time: r.time,
                components: [&r.u, &r.sigma, &r.f_u, &r.f_sigma]
                    .iter()
                    .flat_map(|v| v.comps.iter().cloned())
                    .collect(),
            })
            .collect()
    }

    pub fn from_snapshots(frames: &[Snapshot], radius: f64) -> Result<Self> {
        let first = frames
            .first()
            .ok_or_else(|| Error::MissingForcing("no forcing frames".into()))?;
        let grid = SpectralGrid::new(first.n, first.box_length)?;
        let mut records = Vec::with_capacity(frames.len());
        for f in frames {
            if f.kind != SnapshotKind::Forcing || f.components.len() != 12 || f.n != first.n {
                return Err(Error::Format(format!(
                    "forcing frames hold 12 components on one grid, found {} at n={} ({:?})",
                    f.components.len(),
                    f.n,
                    f.kind
                )));
            }
            let v = |o: usize| VectorField {
                comps: std::array::from_fn(|c| f.components[o + c].clone()),
            };
            records.push(ForcingRecord {
                time: f.time,
                u: v(0),
                sigma: v(3),
                f_u: v(6),
                f_sigma: v(9),
            });
        }
        Ok(Self {
            grid,
            radius,
            records,
        })
    }
}
