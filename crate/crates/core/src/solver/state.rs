use crate::error::{Error, Result};
use crate::field::{ScalarField, SpectralField, SymTensorField, VectorField};
use crate::grid::SpectralGrid;
use crate::snapshot::{Snapshot, SnapshotKind};
use crate::spectral::{divergence_defect, leray_project_in_place};

#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub u: VectorField,
    pub tau: SymTensorField,
    pub time: f64,
}

impl FlowState {
    pub fn zeros(n: usize) -> Self {
        Self {
            u: VectorField::zeros(n),
            tau: SymTensorField::zeros(n),
            time: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.tau.is_finite()
    }

    pub fn max_abs(&self) -> f64 {
        self.u.max_abs().max(self.tau.max_abs())
    }

    /// `max |xi . u_hat(xi)|` relative to the largest velocity coefficient.
    pub fn relative_divergence(&self, grid: &SpectralGrid) -> f64 {
        let m = self.u.max_abs();
        if m == 0.0 {
            0.0
        } else {
            divergence_defect(&self.u, grid) / m
        }
    }

    /// Re-projection, conjugate symmetrization and dealiasing.
    pub fn clean(&mut self, grid: &SpectralGrid) {
        leray_project_in_place(&mut self.u, grid);
        self.u.symmetrize_conjugate(grid);
        self.tau.symmetrize_conjugate(grid);
        self.u.dealias(grid);
        self.tau.dealias(grid);
    }

    /// `self += s * other` on both fields; time is untouched.
    pub fn axpy(&mut self, s: f64, du: &VectorField, dtau: &SymTensorField) {
        self.u.add_scaled(du, s);
        self.tau.add_scaled(dtau, s);
    }

    pub fn to_snapshot(&self, grid: &SpectralGrid) -> Snapshot {
        let components = self
            .u
            .comps
            .iter()
            .chain(self.tau.comps.iter())
            .cloned()
            .collect();
        Snapshot {
            kind: SnapshotKind::Field,
            n: grid.n(),
            box_length: grid.box_length(),
            time: self.time,
            components,
        }
    }

    pub fn from_snapshot(s: &Snapshot) -> Result<Self> {
        if s.kind != SnapshotKind::Field || s.components.len() != 9 {
            return Err(Error::Format(format!(
                "flow snapshots hold 9 field components, found {} ({:?})",
                s.components.len(),
                s.kind
            )));
        }
        let c: Vec<ScalarField> = s.components.clone();
        let mut it = c.into_iter();
        let mut next = || it.next().expect("component count checked");
        let u = VectorField {
            comps: [next(), next(), next()],
        };
        let tau = SymTensorField {
            comps: [next(), next(), next(), next(), next(), next()],
        };
        Ok(Self {
            u,
            tau,
            time: s.time,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn snapshot_round_trip() {
        let g = SpectralGrid::new(6, 4.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = FlowState {
            u: VectorField::random(&g, &mut rng, 2),
            tau: SymTensorField::random(&g, &mut rng, 2),
            time: 3.5,
        };
        let bytes = s.to_snapshot(&g).to_bytes().unwrap();
        let (snap, _) = Snapshot::decode(&bytes).unwrap();
        assert_eq!(FlowState::from_snapshot(&snap).unwrap(), s);
    }

    #[test]
    fn clean_projects_and_dealiases() {
        let g = SpectralGrid::new(8, 4.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut s = FlowState {
            u: VectorField::random(&g, &mut rng, 3),
            tau: SymTensorField::random(&g, &mut rng, 3),
            time: 0.0,
        };
        s.clean(&g);
        assert!(s.relative_divergence(&g) < 1e-14);
        for idx in 0..g.mode_count() {
            if !g.retained(idx) {
                assert_eq!(s.u.at(idx), [Default::default(); 3]);
            }
        }
    }
}
