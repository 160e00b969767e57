//! Periodic-box Fourier discretization.
//!
//! Modes are stored row-major over the index triple `(i, j, k)` with flat
//! index `(i * n + j) * n + k`. Index `i` maps to the centered integer
//! `m = i` for `i < n/2` and `m = i - n` otherwise, so the Nyquist index
//! carries `m = -n/2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    n: usize,
    box_length: f64,
    axis_wavenumbers: Vec<f64>,
    axis_retained: Vec<bool>,
    radius: Vec<f64>,
}

impl SpectralGrid {
    /// Builds an `n`^3 grid on the box `[0, box_length)^3`.
    pub fn new(n: usize, box_length: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "modes per axis must be an even integer >= 4, got {n}"
            )));
        }
        if !(box_length > 0.0) || !box_length.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "box length must be positive and finite, got {box_length}"
            )));
        }
        let unit = 2.0 * PI / box_length;
        let axis_wavenumbers: Vec<f64> = (0..n).map(|i| centered(i, n) as f64 * unit).collect();
        // 2/3 rule: |m| <= floor(n/3), equivalently |xi| <= (2/3) * pi n / L.
        let cutoff = (2 * n) / 6;
        let axis_retained = (0..n)
            .map(|i| centered(i, n).unsigned_abs() as usize <= cutoff)
            .collect();
        let mut radius = Vec::with_capacity(n * n * n);
        for &kx in &axis_wavenumbers {
            for &ky in &axis_wavenumbers {
                for &kz in &axis_wavenumbers {
                    radius.push((kx * kx + ky * ky + kz * kz).sqrt());
                }
            }
        }
        Ok(Self {
            n,
            box_length,
            axis_wavenumbers,
            axis_retained,
            radius,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn mode_count(&self) -> usize {
        self.n * self.n * self.n
    }

    /// Box volume `L^3`.
    pub fn volume(&self) -> f64 {
        self.box_length.powi(3)
    }

    /// Physical grid spacing `L / n`.
    pub fn spacing(&self) -> f64 {
        self.box_length / self.n as f64
    }

    /// Smallest nonzero wavenumber `2 pi / L`.
    pub fn k_min(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    /// Largest representable wavenumber per axis, `pi n / L`.
    pub fn k_max(&self) -> f64 {
        PI * self.n as f64 / self.box_length
    }

    pub fn axis_wavenumbers(&self) -> &[f64] {
        &self.axis_wavenumbers
    }

    /// Centered integer mode number for an axis index.
    pub fn mode_number(&self, i: usize) -> i64 {
        centered(i, self.n)
    }

    #[inline]
    pub fn flat(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    #[inline]
    pub fn unflat(&self, idx: usize) -> (usize, usize, usize) {
        let n = self.n;
        (idx / (n * n), (idx / n) % n, idx % n)
    }

    #[inline]
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let (i, j, k) = self.unflat(idx);
        [
            self.axis_wavenumbers[i],
            self.axis_wavenumbers[j],
            self.axis_wavenumbers[k],
        ]
    }

    /// `|xi|` for every mode, in storage order.
    pub fn radii(&self) -> &[f64] {
        &self.radius
    }

    #[inline]
    pub fn radius(&self, idx: usize) -> f64 {
        self.radius[idx]
    }

    /// Index of the mode carrying `-xi` (modulo the Nyquist alias).
    #[inline]
    pub fn negated(&self, idx: usize) -> usize {
        let n = self.n;
        let (i, j, k) = self.unflat(idx);
        self.flat((n - i) % n, (n - j) % n, (n - k) % n)
    }

    /// True if any axis index sits on the Nyquist plane `m = -n/2`.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let (i, j, k) = self.unflat(idx);
        let h = self.n / 2;
        i == h || j == h || k == h
    }

    /// 2/3-rule dealias mask: true when every `|xi_i| <= (2/3) pi n / L`.
    #[inline]
    pub fn retained(&self, idx: usize) -> bool {
        let (i, j, k) = self.unflat(idx);
        self.axis_retained[i] && self.axis_retained[j] && self.axis_retained[k]
    }

    pub fn dealias_mask(&self) -> Vec<bool> {
        (0..self.mode_count()).map(|idx| self.retained(idx)).collect()
    }

    /// Physical coordinate of grid point index `i` along an axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }
}

fn centered(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(SpectralGrid::new(3, 1.0).is_err());
        assert!(SpectralGrid::new(5, 1.0).is_err());
        assert!(SpectralGrid::new(2, 1.0).is_err());
        assert!(SpectralGrid::new(8, 0.0).is_err());
        assert!(SpectralGrid::new(8, -1.0).is_err());
        assert!(SpectralGrid::new(8, f64::NAN).is_err());
    }

    #[test]
    fn centered_wavenumbers_unit_box() {
        let g = SpectralGrid::new(4, 2.0 * PI).unwrap();
        assert_eq!(g.axis_wavenumbers(), &[0.0, 1.0, -2.0, -1.0]);
    }

    #[test]
    fn smallest_wavenumber_scales_with_box() {
        let g = SpectralGrid::new(4, 4.0 * PI).unwrap();
        assert!((g.axis_wavenumbers()[1] - 0.5).abs() < 1e-15);
        assert!((g.k_min() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_thirds_rule_n6() {
        let g = SpectralGrid::new(6, 2.0 * PI).unwrap();
        let kept: Vec<i64> = (0..6)
            .filter(|&i| g.retained(g.flat(i, 0, 0)))
            .map(|i| g.mode_number(i))
            .collect();
        assert_eq!(kept, vec![0, 1, 2, -2, -1]);
    }

    #[test]
    fn zero_mode_and_negation() {
        let g = SpectralGrid::new(8, 3.0).unwrap();
        assert_eq!(g.wavevector(0), [0.0, 0.0, 0.0]);
        for idx in 0..g.mode_count() {
            let m = g.negated(idx);
            assert_eq!(g.negated(m), idx);
            if !g.is_nyquist(idx) {
                let a = g.wavevector(idx);
                let b = g.wavevector(m);
                for c in 0..3 {
                    assert_eq!(a[c], -b[c]);
                }
            }
        }
    }

    #[test]
    fn dealias_mask_matches_wavenumber_rule() {
        for n in [4, 6, 8, 10, 16] {
            let g = SpectralGrid::new(n, 7.0).unwrap();
            let limit = 2.0 / 3.0 * g.k_max();
            for idx in 0..g.mode_count() {
                let xi = g.wavevector(idx);
                let expect = xi.iter().all(|x| x.abs() <= limit + 1e-12);
                assert_eq!(g.retained(idx), expect, "n={n} idx={idx}");
            }
        }
    }
}
