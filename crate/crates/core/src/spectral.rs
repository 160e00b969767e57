//! Fourier multipliers: derivatives, Leray projection, fractional powers of
//! `Lambda = sqrt(-Laplacian)` and the `sigma = Lambda^{-1} P div tau` map.
//!
//! Zero-mode conventions: `P` is the identity at `xi = 0`, negative powers
//! of `Lambda` and `sigma` vanish there. First-order multipliers `i xi_a`
//! are zero on the Nyquist plane of axis `a`, where no real derivative
//! exists.

use num_complex::Complex64;

use crate::field::{
    sym_index, AntiSymTensorField, ScalarField, SpectralField, SymTensorField, TensorField,
    VectorField,
};
use crate::grid::SpectralGrid;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Wavevector used by first-order operators (Nyquist components zeroed).
#[inline]
pub fn derivative_wavevector(grid: &SpectralGrid, idx: usize) -> [f64; 3] {
    let (i, j, k) = grid.unflat(idx);
    let h = grid.n() / 2;
    let xi = grid.wavevector(idx);
    [
        if i == h { 0.0 } else { xi[0] },
        if j == h { 0.0 } else { xi[1] },
        if k == h { 0.0 } else { xi[2] },
    ]
}

/// Per-mode Leray projection of one complex vector.
#[inline]
pub fn project_mode(xi: [f64; 3], v: [Complex64; 3]) -> [Complex64; 3] {
    let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if r2 == 0.0 {
        return v;
    }
    let dot = (v[0] * xi[0] + v[1] * xi[1] + v[2] * xi[2]) / r2;
    [v[0] - dot * xi[0], v[1] - dot * xi[1], v[2] - dot * xi[2]]
}

pub fn leray_project(v: &VectorField, grid: &SpectralGrid) -> VectorField {
    let mut out = v.clone();
    leray_project_in_place(&mut out, grid);
    out
}

pub fn leray_project_in_place(v: &mut VectorField, grid: &SpectralGrid) {
    for idx in 0..grid.mode_count() {
        let p = project_mode(grid.wavevector(idx), v.at(idx));
        v.set(idx, p);
    }
}

/// `Lambda^s f`: every coefficient times `|xi|^s`, with `|0|^0 = 1` and the
/// zero mode cleared for `s < 0`.
pub fn lambda_power<F: SpectralField>(f: &F, s: f64, grid: &SpectralGrid) -> F {
    let mut out = f.clone();
    if s == 0.0 {
        return out;
    }
    let radii = grid.radii();
    out.apply_all(|idx| {
        let r = radii[idx];
        if r == 0.0 {
            ZERO
        } else {
            Complex64::new(r.powf(s), 0.0)
        }
    });
    out
}

pub fn gradient(f: &ScalarField, grid: &SpectralGrid) -> VectorField {
    let mut out = VectorField::zeros(grid.n());
    for idx in 0..grid.mode_count() {
        let xi = derivative_wavevector(grid, idx);
        let c = f.coeffs()[idx];
        out.set(idx, [I * xi[0] * c, I * xi[1] * c, I * xi[2] * c]);
    }
    out
}

pub fn divergence(v: &VectorField, grid: &SpectralGrid) -> ScalarField {
    ScalarField::from_fn(grid, |idx| {
        let xi = derivative_wavevector(grid, idx);
        let a = v.at(idx);
        I * (xi[0] * a[0] + xi[1] * a[1] + xi[2] * a[2])
    })
}

pub fn curl(a: &VectorField, grid: &SpectralGrid) -> VectorField {
    let mut out = VectorField::zeros(grid.n());
    for idx in 0..grid.mode_count() {
        let xi = derivative_wavevector(grid, idx);
        let v = a.at(idx);
        out.set(
            idx,
            [
                I * (xi[1] * v[2] - xi[2] * v[1]),
                I * (xi[2] * v[0] - xi[0] * v[2]),
                I * (xi[0] * v[1] - xi[1] * v[0]),
            ],
        );
    }
    out
}

/// Full velocity gradient with `(grad u)_{ij} = d_i u_j`.
pub fn velocity_gradient(u: &VectorField, grid: &SpectralGrid) -> TensorField {
    let mut g = TensorField::zeros(grid.n());
    for idx in 0..grid.mode_count() {
        let xi = derivative_wavevector(grid, idx);
        let v = u.at(idx);
        for i in 0..3 {
            for j in 0..3 {
                g.comps[3 * i + j].coeffs_mut()[idx] = I * xi[i] * v[j];
            }
        }
    }
    g
}

/// Splits `grad u` into its symmetric part `D u` and antisymmetric part `Omega`.
pub fn velocity_gradient_parts(
    u: &VectorField,
    grid: &SpectralGrid,
) -> (SymTensorField, AntiSymTensorField) {
    let n = grid.n();
    let mut d = SymTensorField::zeros(n);
    let mut w = AntiSymTensorField::zeros(n);
    for idx in 0..grid.mode_count() {
        let xi = derivative_wavevector(grid, idx);
        let v = u.at(idx);
        let g = |i: usize, j: usize| I * xi[i] * v[j];
        for i in 0..3 {
            for j in i..3 {
                d.comps[sym_index(i, j)].coeffs_mut()[idx] = 0.5 * (g(i, j) + g(j, i));
            }
        }
        w.comps[0].coeffs_mut()[idx] = 0.5 * (g(0, 1) - g(1, 0));
        w.comps[1].coeffs_mut()[idx] = 0.5 * (g(0, 2) - g(2, 0));
        w.comps[2].coeffs_mut()[idx] = 0.5 * (g(1, 2) - g(2, 1));
    }
    (d, w)
}

/// `(div tau)_k = sum_l d_l tau_{lk}`.
pub fn tensor_divergence(tau: &SymTensorField, grid: &SpectralGrid) -> VectorField {
    let mut out = VectorField::zeros(grid.n());
    for idx in 0..grid.mode_count() {
        let xi = derivative_wavevector(grid, idx);
        let t = tau.at(idx);
        out.set(idx, div_mode(xi, &t));
    }
    out
}

pub fn tensor_divergence_general(tau: &TensorField, grid: &SpectralGrid) -> VectorField {
    let mut out = VectorField::zeros(grid.n());
    for idx in 0..grid.mode_count() {
        let xi = derivative_wavevector(grid, idx);
        let t = tau.at(idx);
        out.set(idx, div_mode(xi, &t));
    }
    out
}

#[inline]
fn div_mode(xi: [f64; 3], t: &[[Complex64; 3]; 3]) -> [Complex64; 3] {
    std::array::from_fn(|k| I * (xi[0] * t[0][k] + xi[1] * t[1][k] + xi[2] * t[2][k]))
}

/// Per-mode `sigma = i (I - e e^T) (e . tau)` with `e = xi / |xi|`.
#[inline]
pub fn sigma_mode(xi: [f64; 3], r: f64, t: &[[Complex64; 3]; 3]) -> [Complex64; 3] {
    if r == 0.0 {
        return [ZERO; 3];
    }
    let e = [xi[0] / r, xi[1] / r, xi[2] / r];
    let et: [Complex64; 3] = std::array::from_fn(|k| e[0] * t[0][k] + e[1] * t[1][k] + e[2] * t[2][k]);
    let p = project_mode(xi, et);
    [I * p[0], I * p[1], I * p[2]]
}

/// `sigma = Lambda^{-1} P div tau`.
pub fn sigma_from_tau(tau: &SymTensorField, grid: &SpectralGrid) -> VectorField {
    let mut out = VectorField::zeros(grid.n());
    for idx in 0..grid.mode_count() {
        if grid.is_nyquist(idx) {
            continue;
        }
        let s = sigma_mode(grid.wavevector(idx), grid.radius(idx), &tau.at(idx));
        out.set(idx, s);
    }
    out
}

/// Largest `|xi . v(xi)|` over all modes.
pub fn divergence_defect(v: &VectorField, grid: &SpectralGrid) -> f64 {
    (0..grid.mode_count())
        .map(|idx| {
            let xi = grid.wavevector(idx);
            let a = v.at(idx);
            (a[0] * xi[0] + a[1] * xi[1] + a[2] * xi[2]).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fft::FftPlan;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn grid8() -> SpectralGrid {
        SpectralGrid::new(8, 2.0 * PI).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn leray_single_modes() {
        let g = grid8();
        let one = [c(1.0, 0.0), ZERO, ZERO];
        let along_y = project_mode([0.0, 1.0, 0.0], one);
        assert_eq!(along_y, one);
        let along_x = project_mode([1.0, 0.0, 0.0], one);
        assert_eq!(along_x, [ZERO; 3]);
        // zero mode passes through
        let mut v = VectorField::zeros(8);
        v.set(0, [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(leray_project(&v, &g).at(0), v.at(0));
    }

    #[test]
    fn leray_annihilates_gradients() {
        let g = grid8();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let phi = ScalarField::random(&g, &mut rng, 3);
        let p = leray_project(&gradient(&phi, &g), &g);
        assert!(p.max_abs() < 1e-14);
    }

    #[test]
    fn leray_is_idempotent_and_self_adjoint() {
        let g = grid8();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let v = VectorField::random(&g, &mut rng, 3);
            let w = VectorField::random(&g, &mut rng, 3);
            let pv = leray_project(&v, &g);
            let ppv = leray_project(&pv, &g);
            let mut d = ppv.clone();
            d.add_scaled(&pv, -1.0);
            assert!(d.norm_l2(&g) <= 1e-12 * pv.norm_l2(&g));
            let a = pv.inner(&w, &g);
            let b = v.inner(&leray_project(&w, &g), &g);
            assert!((a - b).abs() <= 1e-12 * v.norm_l2(&g) * w.norm_l2(&g));
            assert!(divergence_defect(&pv, &g) <= 1e-13 * pv.max_abs());
        }
    }

    #[test]
    fn lambda_power_examples() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        // |xi| = 3 at m = (3,0,0)... n=8 allows m up to 3
        let idx = g.flat(3, 0, 0);
        let f = ScalarField::single_mode(&g, idx, c(1.0, 0.0));
        assert_eq!(lambda_power(&f, 0.0, &g), f);
        let f2 = lambda_power(&f, 2.0, &g);
        assert!((f2.coeffs()[idx] - c(9.0, 0.0)).norm() < 1e-13);
        let idx2 = g.flat(2, 0, 0);
        let h = ScalarField::single_mode(&g, idx2, c(4.0, 0.0));
        let hm = lambda_power(&h, -1.0, &g);
        assert!((hm.coeffs()[idx2] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn lambda_power_zero_mode_convention() {
        let g = grid8();
        let mut f = ScalarField::zeros(8);
        f.coeffs_mut()[0] = c(5.0, 0.0);
        assert_eq!(lambda_power(&f, 0.0, &g).coeffs()[0], c(5.0, 0.0));
        assert_eq!(lambda_power(&f, -1.0, &g).coeffs()[0], ZERO);
    }

    #[test]
    fn gradient_parts_single_mode() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let k = 2.0;
        let a = 0.7;
        let idx = g.flat(2, 0, 0);
        let mut u = VectorField::zeros(8);
        u.comps[1] = ScalarField::single_mode(&g, idx, c(a, 0.0));
        let full = velocity_gradient(&u, &g);
        assert!((full.get(0, 1).coeffs()[idx] - c(0.0, k * a)).norm() < 1e-14);
        let (d, w) = velocity_gradient_parts(&u, &g);
        assert!((d.get(0, 1).coeffs()[idx] - c(0.0, k * a / 2.0)).norm() < 1e-14);
        assert!((w.at(idx)[0][1] - c(0.0, k * a / 2.0)).norm() < 1e-14);
    }

    #[test]
    fn gradient_parts_reconstruct_and_trace() {
        let g = grid8();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = VectorField::random(&g, &mut rng, 3);
        let full = velocity_gradient(&u, &g);
        let (d, w) = velocity_gradient_parts(&u, &g);
        let div = divergence(&u, &g);
        for idx in 0..g.mode_count() {
            let dm = d.at(idx);
            let wm = w.at(idx);
            let fm = full.at(idx);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((dm[i][j] + wm[i][j] - fm[i][j]).norm() < 1e-13);
                }
            }
            let tr = dm[0][0] + dm[1][1] + dm[2][2];
            assert!((tr - div.coeffs()[idx]).norm() < 1e-13);
        }
        let zero = velocity_gradient_parts(&VectorField::zeros(8), &g);
        assert_eq!(zero.0.max_abs(), 0.0);
        assert_eq!(zero.1.max_abs(), 0.0);
    }

    #[test]
    fn sigma_examples() {
        let g = SpectralGrid::new(8, 2.0 * PI).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phi = ScalarField::random(&g, &mut rng, 3);
        let s = sigma_from_tau(&SymTensorField::isotropic(&phi), &g);
        assert!(s.max_abs() < 1e-14);
        assert_eq!(sigma_from_tau(&SymTensorField::zeros(8), &g).max_abs(), 0.0);

        let s = sigma_mode(
            [0.0, 0.0, 1.0],
            1.0,
            &[
                [ZERO, ZERO, c(1.0, 0.0)],
                [ZERO, ZERO, ZERO],
                [c(1.0, 0.0), ZERO, ZERO],
            ],
        );
        assert_eq!(s, [c(0.0, 1.0), ZERO, ZERO]);
    }

    #[test]
    fn sigma_is_divergence_free_with_zero_mean() {
        let g = grid8();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut tau = SymTensorField::random(&g, &mut rng, 3);
        for comp in tau.comps.iter_mut() {
            comp.coeffs_mut()[0] = c(1.0, 0.0);
        }
        let s = sigma_from_tau(&tau, &g);
        assert!(divergence_defect(&s, &g) <= 1e-13 * s.max_abs());
        assert_eq!(s.at(0), [ZERO; 3]);
        assert!(s.conjugate_symmetry_defect(&g) < 1e-14);
    }

    #[test]
    fn plancherel_matches_physical_quadrature() {
        let g = SpectralGrid::new(16, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let plan = FftPlan::new(16);
        for _ in 0..3 {
            let f = ScalarField::random(&g, &mut rng, 7);
            let phys = plan.to_physical(&f);
            let dv = g.spacing().powi(3);
            let quad: f64 = phys.iter().map(|x| x * x).sum::<f64>() * dv;
            let spec = f.norm_l2(&g).powi(2);
            assert!((quad - spec).abs() <= 1e-12 * spec);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn lambda_powers_compose(a in -2.0f64..3.0, b in -2.0f64..3.0, seed in 0u64..1000) {
            let g = SpectralGrid::new(8, 5.0).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut f = ScalarField::random(&g, &mut rng, 3);
            f.coeffs_mut()[0] = ZERO;
            let lhs = lambda_power(&lambda_power(&f, b, &g), a, &g);
            let rhs = lambda_power(&f, a + b, &g);
            let mut d = lhs.clone();
            d.add_scaled(&rhs, -1.0);
            prop_assert!(d.norm_l2(&g) <= 1e-12 * rhs.norm_l2(&g));
        }
    }
}
