//! Pseudo-spectral quadratic terms.
//!
//! Products are formed on the physical grid from dealiased fields and the
//! results are truncated back to the 2/3 band. The velocity gradient uses
//! `(grad u)_{ij} = d_i u_j`.

use num_complex::Complex64;

use crate::field::{sym_index, AntiSymTensorField, ScalarField, SpectralField, SymTensorField, VectorField};
use crate::fft::FftPlan;
use crate::grid::SpectralGrid;
use crate::spectral::{derivative_wavevector, leray_project_in_place};

const I: Complex64 = Complex64::new(0.0, 1.0);
const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// `Q = W t - t W + b (D t + t D)` for one point.
#[inline]
pub fn q_point(d: &[[f64; 3]; 3], w: &[[f64; 3]; 3], t: &[[f64; 3]; 3], b: f64) -> [[f64; 3]; 3] {
    let mut q = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += w[i][k] * t[k][j] - t[i][k] * w[k][j] + b * (d[i][k] * t[k][j] + t[i][k] * d[k][j]);
            }
            q[i][j] = acc;
            q[j][i] = acc;
        }
    }
    q
}

/// `d_axis f`.
pub fn partial(f: &ScalarField, axis: usize, grid: &SpectralGrid) -> ScalarField {
    ScalarField::from_fn(grid, |idx| I * derivative_wavevector(grid, idx)[axis] * f.coeffs()[idx])
}

/// Inverse transforms, two real fields per complex FFT.
pub fn to_physical_many(plan: &FftPlan, fields: &[&ScalarField]) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(fields.len());
    for chunk in fields.chunks(2) {
        match chunk {
            [a, b] => {
                let (pa, pb) = plan.to_physical_pair(a, b);
                out.push(pa);
                out.push(pb);
            }
            [a] => out.push(plan.to_physical(a)),
            _ => unreachable!(),
        }
    }
    out
}

/// Forward transforms of real samples followed by 2/3-rule truncation.
pub fn from_physical_many(plan: &FftPlan, grid: &SpectralGrid, values: &[Vec<f64>]) -> Vec<ScalarField> {
    let mut out = Vec::with_capacity(values.len());
    for chunk in values.chunks(2) {
        match chunk {
            [a, b] => {
                let (fa, fb) = plan.from_physical_pair(a, b);
                out.push(fa);
                out.push(fb);
            }
            // paired with zeros so the result is exactly Hermitian
            [a] => out.push(plan.from_physical_pair(a, &vec![0.0; a.len()]).0),
            _ => unreachable!(),
        }
    }
    for f in out.iter_mut() {
        f.dealias(grid);
    }
    out
}

fn sym_at(t: &[Vec<f64>], p: usize) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for (c, &(i, j)) in PAIRS.iter().enumerate() {
        m[i][j] = t[c][p];
        m[j][i] = t[c][p];
    }
    m
}

/// `Q(grad u, tau)` from the symmetric and antisymmetric gradient parts,
/// evaluated pointwise and truncated to the 2/3 band.
pub fn q_bilinear(
    plan: &FftPlan,
    grid: &SpectralGrid,
    du: &SymTensorField,
    omega: &AntiSymTensorField,
    tau: &SymTensorField,
    b: f64,
) -> SymTensorField {
    let d_phys = to_physical_many(plan, &du.comps.iter().collect::<Vec<_>>());
    let w_phys = to_physical_many(plan, &omega.comps.iter().collect::<Vec<_>>());
    let t_phys = to_physical_many(plan, &tau.comps.iter().collect::<Vec<_>>());
    let npts = grid.mode_count();
    let mut q_phys = vec![vec![0.0; npts]; 6];
    for p in 0..npts {
        let d = sym_at(&d_phys, p);
        let (a, bb, c) = (w_phys[0][p], w_phys[1][p], w_phys[2][p]);
        let w = [[0.0, a, bb], [-a, 0.0, c], [-bb, -c, 0.0]];
        let t = sym_at(&t_phys, p);
        let q = q_point(&d, &w, &t, b);
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            q_phys[k][p] = q[i][j];
        }
    }
    let comps = from_physical_many(plan, grid, &q_phys);
    let mut out = SymTensorField::zeros(grid.n());
    for (k, c) in comps.into_iter().enumerate() {
        out.comps[k] = c;
    }
    out
}

/// Quadratic tendencies `(-P(u . grad u), -u . grad tau + Q(grad u, tau))`.
pub fn quadratic_terms(
    plan: &FftPlan,
    grid: &SpectralGrid,
    u: &VectorField,
    tau: &SymTensorField,
    b: f64,
) -> (VectorField, SymTensorField) {
    let npts = grid.mode_count();
    let grads: Vec<ScalarField> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| partial(&u.comps[j], i, grid))
        .collect();
    let mut list: Vec<&ScalarField> = u.comps.iter().collect();
    list.extend(grads.iter());
    let phys = to_physical_many(plan, &list);
    let (uph, gph) = phys.split_at(3);

    // velocity advection
    let mut adv_u = vec![vec![0.0; npts]; 3];
    for (j, out) in adv_u.iter_mut().enumerate() {
        for p in 0..npts {
            out[p] = -(uph[0][p] * gph[j][p] + uph[1][p] * gph[3 + j][p] + uph[2][p] * gph[6 + j][p]);
        }
    }

    // stress advection, one component at a time
    let mut stress = vec![vec![0.0; npts]; 6];
    let mut tph = Vec::with_capacity(6);
    for (c, out) in stress.iter_mut().enumerate() {
        let f = &tau.comps[c];
        let d: Vec<ScalarField> = (0..3).map(|a| partial(f, a, grid)).collect();
        let mut ph = to_physical_many(plan, &[f, &d[0], &d[1], &d[2]]).into_iter();
        let val = ph.next().unwrap();
        let (d0, d1, d2) = (ph.next().unwrap(), ph.next().unwrap(), ph.next().unwrap());
        for p in 0..npts {
            out[p] = -(uph[0][p] * d0[p] + uph[1][p] * d1[p] + uph[2][p] * d2[p]);
        }
        tph.push(val);
    }

    // Q(grad u, tau)
    for p in 0..npts {
        let g = |i: usize, j: usize| gph[3 * i + j][p];
        let mut d = [[0.0; 3]; 3];
        let mut w = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                d[i][j] = 0.5 * (g(i, j) + g(j, i));
                w[i][j] = 0.5 * (g(i, j) - g(j, i));
            }
        }
        let t = sym_at(&tph, p);
        let q = q_point(&d, &w, &t, b);
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            stress[k][p] += q[i][j];
        }
    }

    let mut fu = VectorField::zeros(grid.n());
    for (c, f) in from_physical_many(plan, grid, &adv_u).into_iter().enumerate() {
        fu.comps[c] = f;
    }
    leray_project_in_place(&mut fu, grid);
    let mut ft = SymTensorField::zeros(grid.n());
    for (c, f) in from_physical_many(plan, grid, &stress).into_iter().enumerate() {
        ft.comps[c] = f;
    }
    debug_assert_eq!(sym_index(1, 2), 4);
    (fu, ft)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{divergence_defect, leray_project, velocity_gradient_parts};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn matmul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut c = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    }

    #[test]
    fn q_point_matches_dense_products() {
        let d = [[0.1, 0.2, -0.3], [0.2, 0.5, 0.7], [-0.3, 0.7, -0.6]];
        let w = [[0.0, 0.4, -0.1], [-0.4, 0.0, 0.9], [0.1, -0.9, 0.0]];
        let t = [[1.0, -0.2, 0.3], [-0.2, 2.0, 0.1], [0.3, 0.1, -1.5]];
        let b = 0.6;
        let q = q_point(&d, &w, &t, b);
        let (wt, tw, dt, td) = (matmul(&w, &t), matmul(&t, &w), matmul(&d, &t), matmul(&t, &d));
        for i in 0..3 {
            for j in 0..3 {
                let e = wt[i][j] - tw[i][j] + b * (dt[i][j] + td[i][j]);
                assert!((q[i][j] - e).abs() < 1e-15);
                assert_eq!(q[i][j], q[j][i]);
            }
        }
        let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let q = q_point(&d, &w, &id, b);
        for i in 0..3 {
            for j in 0..3 {
                assert!((q[i][j] - 2.0 * b * d[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn q_bilinear_identity_and_zero() {
        let g = SpectralGrid::new(12, 2.0 * PI).unwrap();
        let plan = FftPlan::new(12);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut u = leray_project(&VectorField::random(&g, &mut rng, 2), &g);
        u.dealias(&g);
        let (du, om) = velocity_gradient_parts(&u, &g);
        let mut one = ScalarField::zeros(12);
        one.coeffs_mut()[0] = Complex64::new(1.0, 0.0);
        let id = SymTensorField::isotropic(&one);
        let b = 0.35;
        let q = q_bilinear(&plan, &g, &du, &om, &id, b);
        let mut expect = du.clone();
        expect.scale(2.0 * b);
        let mut diff = q.clone();
        diff.add_scaled(&expect, -1.0);
        assert!(diff.max_abs() < 1e-14);

        let zero = VectorField::zeros(12);
        let (dz, oz) = velocity_gradient_parts(&zero, &g);
        let tau = SymTensorField::random(&g, &mut rng, 2);
        assert!(q_bilinear(&plan, &g, &dz, &oz, &tau, b).max_abs() == 0.0);
    }

    #[test]
    fn commutator_part_matches_pointwise_oracle() {
        // single-mode u and tau, b = 0: compare with dense products on the grid
        let n = 8;
        let g = SpectralGrid::new(n, 2.0 * PI).unwrap();
        let plan = FftPlan::new(n);
        let mut u = VectorField::zeros(n);
        u.comps[1] = ScalarField::single_mode(&g, g.flat(1, 0, 0), Complex64::new(0.3, 0.1));
        let mut tau = SymTensorField::zeros(n);
        tau.comps[sym_index(0, 1)] = ScalarField::single_mode(&g, g.flat(0, 1, 0), Complex64::new(0.5, 0.0));
        tau.comps[sym_index(2, 2)] = ScalarField::single_mode(&g, g.flat(1, 0, 0), Complex64::new(0.0, 0.2));
        let (du, om) = velocity_gradient_parts(&u, &g);
        let q = q_bilinear(&plan, &g, &du, &om, &tau, 0.0);
        let qp = to_physical_many(&plan, &q.comps.iter().collect::<Vec<_>>());
        let wp = to_physical_many(&plan, &om.comps.iter().collect::<Vec<_>>());
        let tp = to_physical_many(&plan, &tau.comps.iter().collect::<Vec<_>>());
        for p in 0..g.mode_count() {
            let (a, b, c) = (wp[0][p], wp[1][p], wp[2][p]);
            let w = [[0.0, a, b], [-a, 0.0, c], [-b, -c, 0.0]];
            let t = sym_at(&tp, p);
            let (wt, tw) = (matmul(&w, &t), matmul(&t, &w));
            for (k, &(i, j)) in PAIRS.iter().enumerate() {
                assert!((qp[k][p] - (wt[i][j] - tw[i][j])).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn advection_of_single_modes_is_exact() {
        // u = a sin(y) e_x, tau = cos(x) e_x e_x: -u . grad tau_xx = a sin(x) sin(y), Q = 0
        let n = 16;
        let g = SpectralGrid::new(n, 2.0 * PI).unwrap();
        let plan = FftPlan::new(n);
        let a = 0.4;
        let mut u = VectorField::zeros(n);
        u.comps[0] = ScalarField::single_mode(&g, g.flat(0, 1, 0), Complex64::new(0.0, -0.5 * a));
        let mut tau = SymTensorField::zeros(n);
        tau.comps[0] = ScalarField::single_mode(&g, g.flat(1, 0, 0), Complex64::new(0.5, 0.0));
        let (fu, ft) = quadratic_terms(&plan, &g, &u, &tau, 0.7);
        let got = plan.to_physical(&ft.comps[0]);
        for i in 0..n {
            for j in 0..n {
                let exact = a * g.coordinate(i).sin() * g.coordinate(j).sin();
                for k in 0..n {
                    assert!((got[(i * n + j) * n + k] - exact).abs() < 1e-14);
                }
            }
        }
        // shear flow u . grad u = 0
        assert!(fu.max_abs() < 1e-16);
    }

    #[test]
    fn projected_advection_is_divergence_free() {
        let g = SpectralGrid::new(12, 5.0).unwrap();
        let plan = FftPlan::new(12);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut u = leray_project(&VectorField::random(&g, &mut rng, 3), &g);
        u.dealias(&g);
        let tau = SymTensorField::random(&g, &mut rng, 3);
        let (fu, ft) = quadratic_terms(&plan, &g, &u, &tau, 0.5);
        assert!(divergence_defect(&fu, &g) <= 1e-13 * fu.max_abs());
        assert!(fu.conjugate_symmetry_defect(&g) < 1e-15);
        assert!(ft.conjugate_symmetry_defect(&g) < 1e-15);
    }
}
