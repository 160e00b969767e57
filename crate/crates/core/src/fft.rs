//! Three-dimensional complex FFTs on the cubic grid.
//!
//! Forward transforms are normalized by `1/n^3` so that coefficients are
//! Fourier-series amplitudes: `f(x) = sum_m c_m exp(i xi_m . x)`. With that
//! convention `||f||_{L^2}^2 = L^3 sum_m |c_m|^2`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::field::ScalarField;

#[derive(Clone)]
pub struct FftPlan {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FftPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FftPlan").field("n", &self.n).finish()
    }
}

impl FftPlan {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// In-place forward transform with `1/n^3` normalization.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, &self.forward);
        let scale = 1.0 / (self.n * self.n * self.n) as f64;
        data.iter_mut().for_each(|c| *c *= scale);
    }

    /// In-place inverse transform (no normalization).
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inverse);
    }

    fn transform(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        assert_eq!(data.len(), n * n * n, "buffer does not match plan size");
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

        // innermost axis is contiguous
        fft.process_with_scratch(data, &mut scratch);

        // middle axis: transpose each plane, transform rows, transpose back
        for plane in data.chunks_exact_mut(n * n) {
            transpose_square(plane, n);
            fft.process_with_scratch(plane, &mut scratch);
            transpose_square(plane, n);
        }

        // outer axis: swap (i, j, k) <-> (k, j, i)
        swap_outer_inner(data, n);
        fft.process_with_scratch(data, &mut scratch);
        swap_outer_inner(data, n);
    }

    /// Physical-space samples of a real field.
    pub fn to_physical(&self, field: &ScalarField) -> Vec<f64> {
        let mut buf = field.coeffs().to_vec();
        self.inverse(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Two real fields for the price of one transform.
    pub fn to_physical_pair(&self, a: &ScalarField, b: &ScalarField) -> (Vec<f64>, Vec<f64>) {
        let i = Complex64::new(0.0, 1.0);
        let mut buf: Vec<Complex64> = a
            .coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(&x, &y)| x + i * y)
            .collect();
        self.inverse(&mut buf);
        buf.into_iter().map(|c| (c.re, c.im)).unzip()
    }

    /// Coefficients of real physical samples.
    pub fn from_physical(&self, values: &[f64]) -> ScalarField {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward(&mut buf);
        ScalarField::from_coeffs(self.n, buf)
    }

    /// Forward transform of two real fields packed as `a + i b`.
    pub fn from_physical_pair(&self, a: &[f64], b: &[f64]) -> (ScalarField, ScalarField) {
        let n = self.n;
        let mut buf: Vec<Complex64> = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| Complex64::new(x, y))
            .collect();
        self.forward(&mut buf);
        let mut fa = vec![Complex64::default(); buf.len()];
        let mut fb = vec![Complex64::default(); buf.len()];
        let half = Complex64::new(0.5, 0.0);
        let minus_half_i = Complex64::new(0.0, -0.5);
        for i in 0..n {
            let ni = (n - i) % n;
            for j in 0..n {
                let nj = (n - j) % n;
                for k in 0..n {
                    let nk = (n - k) % n;
                    let idx = (i * n + j) * n + k;
                    let z = buf[idx];
                    let zc = buf[(ni * n + nj) * n + nk].conj();
                    fa[idx] = half * (z + zc);
                    fb[idx] = minus_half_i * (z - zc);
                }
            }
        }
        (
            ScalarField::from_coeffs(n, fa),
            ScalarField::from_coeffs(n, fb),
        )
    }
}

fn transpose_square(plane: &mut [Complex64], n: usize) {
    for r in 0..n {
        for c in (r + 1)..n {
            plane.swap(r * n + c, c * n + r);
        }
    }
}

fn swap_outer_inner(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in 0..n {
            for k in (i + 1)..n {
                data.swap((i * n + j) * n + k, (k * n + j) * n + i);
            }
        }
    }
}
