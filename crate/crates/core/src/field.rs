//! Fourier-coefficient fields on a [`SpectralGrid`].
//!
//! All fields represent real physical quantities, so coefficients obey
//! conjugate symmetry `c(-xi) = conj(c(xi))`. Constructors that produce
//! random data enforce it; spectral operators preserve it.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::grid::SpectralGrid;

/// Complex coefficients of one real scalar field.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl ScalarField {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            coeffs: vec![Complex64::default(); n * n * n],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), n * n * n, "coefficient count must be n^3");
        Self { n, coeffs }
    }

    /// A field built mode by mode from `f(idx)`.
    pub fn from_fn(grid: &SpectralGrid, f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            n: grid.n(),
            coeffs: (0..grid.mode_count()).map(f).collect(),
        }
    }

    /// A single real Fourier mode: amplitude `a` at `idx` and `conj(a)` at `-idx`.
    pub fn single_mode(grid: &SpectralGrid, idx: usize, a: Complex64) -> Self {
        let mut f = Self::zeros(grid.n());
        let neg = grid.negated(idx);
        if neg == idx {
            f.coeffs[idx] = Complex64::new(a.re, 0.0);
        } else {
            f.coeffs[idx] = a;
            f.coeffs[neg] = a.conj();
        }
        f
    }

    /// Random real field with Gaussian coefficients on modes with every
    /// `|m_i| <= max_mode` (Nyquist planes excluded).
    pub fn random<R: Rng + ?Sized>(grid: &SpectralGrid, rng: &mut R, max_mode: usize) -> Self {
        let mut f = Self::zeros(grid.n());
        let h = grid.n() / 2;
        for idx in 0..grid.mode_count() {
            let neg = grid.negated(idx);
            if neg < idx || grid.is_nyquist(idx) {
                continue;
            }
            let (i, j, k) = grid.unflat(idx);
            let within = [i, j, k]
                .iter()
                .all(|&a| grid.mode_number(a).unsigned_abs() as usize <= max_mode.min(h - 1));
            if !within {
                continue;
            }
            let re: f64 = StandardNormal.sample(rng);
            if neg == idx {
                f.coeffs[idx] = Complex64::new(re, 0.0);
            } else {
                let z = Complex64::new(re, StandardNormal.sample(rng));
                f.coeffs[idx] = z;
                f.coeffs[neg] = z.conj();
            }
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Multiplies each coefficient by `m(idx)`.
    pub fn apply(&mut self, mut m: impl FnMut(usize) -> Complex64) {
        self.coeffs
            .iter_mut()
            .enumerate()
            .for_each(|(idx, c)| *c *= m(idx));
    }

    pub fn scale(&mut self, s: f64) {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
    }

    pub fn add_scaled_complex(&mut self, other: &ScalarField, s: Complex64) {
        self.coeffs
            .iter_mut()
            .zip(&other.coeffs)
            .for_each(|(a, &b)| *a += s * b);
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest violation of `c(-xi) = conj(c(xi))`.
    pub fn conjugate_symmetry_defect(&self, grid: &SpectralGrid) -> f64 {
        (0..self.coeffs.len())
            .map(|idx| (self.coeffs[grid.negated(idx)] - self.coeffs[idx].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Replaces each pair with its Hermitian average.
    pub fn symmetrize_conjugate(&mut self, grid: &SpectralGrid) {
        for idx in 0..self.coeffs.len() {
            let neg = grid.negated(idx);
            if neg < idx {
                continue;
            }
            if neg == idx {
                self.coeffs[idx].im = 0.0;
            } else {
                let avg = 0.5 * (self.coeffs[idx] + self.coeffs[neg].conj());
                self.coeffs[idx] = avg;
                self.coeffs[neg] = avg.conj();
            }
        }
    }

    /// `sum_m conj(a_m) b_m` without the volume factor.
    pub fn dot_raw(&self, other: &ScalarField) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Behaviour shared by every coefficient field kind.
pub trait SpectralField: Clone {
    fn components(&self) -> &[ScalarField];
    fn components_mut(&mut self) -> &mut [ScalarField];

    /// Multiplicity of each stored component in the full tensor contraction.
    fn weights(&self) -> &'static [f64];

    fn n(&self) -> usize {
        self.components()[0].n()
    }

    /// `L^2` inner product `<f, g> = L^3 Re sum conj(f_m) g_m`.
    fn inner(&self, other: &Self, grid: &SpectralGrid) -> f64 {
        let raw: f64 = self
            .components()
            .iter()
            .zip(other.components())
            .zip(self.weights())
            .map(|((a, b), w)| w * a.dot_raw(b).re)
            .sum();
        raw * grid.volume()
    }

    fn norm_l2(&self, grid: &SpectralGrid) -> f64 {
        self.inner(self, grid).max(0.0).sqrt()
    }

    /// Squared `L^2` norm weighted mode-by-mode with `w(idx)`.
    fn weighted_norm_sq(&self, grid: &SpectralGrid, w: impl Fn(usize) -> f64) -> f64 {
        let mut acc = 0.0;
        for (comp, cw) in self.components().iter().zip(self.weights()) {
            let s: f64 = comp
                .coeffs()
                .iter()
                .enumerate()
                .map(|(idx, c)| w(idx) * c.norm_sqr())
                .sum();
            acc += cw * s;
        }
        acc * grid.volume()
    }

    fn apply_all(&mut self, m: impl Fn(usize) -> Complex64) {
        for c in self.components_mut() {
            c.apply(&m);
        }
    }

    fn scale(&mut self, s: f64) {
        for c in self.components_mut() {
            c.scale(s);
        }
    }

    fn add_scaled(&mut self, other: &Self, s: f64) {
        let s = Complex64::new(s, 0.0);
        for (a, b) in self.components_mut().iter_mut().zip(other.components()) {
            a.add_scaled_complex(b, s);
        }
    }

    fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .map(ScalarField::max_abs)
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        self.components()
            .iter()
            .all(|c| c.coeffs().iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }

    fn conjugate_symmetry_defect(&self, grid: &SpectralGrid) -> f64 {
        self.components()
            .iter()
            .map(|c| c.conjugate_symmetry_defect(grid))
            .fold(0.0, f64::max)
    }

    fn symmetrize_conjugate(&mut self, grid: &SpectralGrid) {
        for c in self.components_mut() {
            c.symmetrize_conjugate(grid);
        }
    }

    /// Zeroes every mode outside the 2/3-rule band.
    fn dealias(&mut self, grid: &SpectralGrid) {
        self.apply_all(|idx| {
            if grid.retained(idx) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::default()
            }
        });
    }
}

impl SpectralField for ScalarField {
    fn components(&self) -> &[ScalarField] {
        std::slice::from_ref(self)
    }
    fn components_mut(&mut self) -> &mut [ScalarField] {
        std::slice::from_mut(self)
    }
    fn weights(&self) -> &'static [f64] {
        &[1.0]
    }
}

/// Three scalar components of a real vector field.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub comps: [ScalarField; 3],
}

impl VectorField {
    pub fn zeros(n: usize) -> Self {
        Self {
            comps: std::array::from_fn(|_| ScalarField::zeros(n)),
        }
    }

    pub fn random<R: Rng + ?Sized>(grid: &SpectralGrid, rng: &mut R, max_mode: usize) -> Self {
        Self {
            comps: std::array::from_fn(|_| ScalarField::random(grid, rng, max_mode)),
        }
    }

    /// The complex 3-vector stored at one mode.
    #[inline]
    pub fn at(&self, idx: usize) -> [Complex64; 3] {
        std::array::from_fn(|c| self.comps[c].coeffs()[idx])
    }

    #[inline]
    pub fn set(&mut self, idx: usize, v: [Complex64; 3]) {
        for c in 0..3 {
            self.comps[c].coeffs_mut()[idx] = v[c];
        }
    }
}

impl SpectralField for VectorField {
    fn components(&self) -> &[ScalarField] {
        &self.comps
    }
    fn components_mut(&mut self) -> &mut [ScalarField] {
        &mut self.comps
    }
    fn weights(&self) -> &'static [f64] {
        &[1.0, 1.0, 1.0]
    }
}

/// Storage slot of the `(i, j)` entry of a symmetric 3x3 tensor.
///
/// Order: `xx, xy, xz, yy, yz, zz`.
#[inline]
pub const fn sym_index(i: usize, j: usize) -> usize {
    const TABLE: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
    TABLE[i][j]
}

/// Six independent components of a real symmetric tensor field.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensorField {
    pub comps: [ScalarField; 6],
}

impl SymTensorField {
    pub fn zeros(n: usize) -> Self {
        Self {
            comps: std::array::from_fn(|_| ScalarField::zeros(n)),
        }
    }

    pub fn random<R: Rng + ?Sized>(grid: &SpectralGrid, rng: &mut R, max_mode: usize) -> Self {
        Self {
            comps: std::array::from_fn(|_| ScalarField::random(grid, rng, max_mode)),
        }
    }

    /// `phi * I` for a scalar field `phi`.
    pub fn isotropic(phi: &ScalarField) -> Self {
        let mut t = Self::zeros(phi.n());
        for d in 0..3 {
            t.comps[sym_index(d, d)] = phi.clone();
        }
        t
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarField {
        &self.comps[sym_index(i, j)]
    }

    /// Full 3x3 matrix of coefficients at one mode (exactly symmetric).
    #[inline]
    pub fn at(&self, idx: usize) -> [[Complex64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.comps[sym_index(i, j)].coeffs()[idx]))
    }

    /// Stores the symmetric part of `m` at one mode.
    #[inline]
    pub fn set_symmetric_part(&mut self, idx: usize, m: [[Complex64; 3]; 3]) {
        for i in 0..3 {
            for j in i..3 {
                self.comps[sym_index(i, j)].coeffs_mut()[idx] = 0.5 * (m[i][j] + m[j][i]);
            }
        }
    }

    pub fn to_full(&self) -> TensorField {
        TensorField {
            comps: std::array::from_fn(|c| self.comps[sym_index(c / 3, c % 3)].clone()),
        }
    }
}

impl SpectralField for SymTensorField {
    fn components(&self) -> &[ScalarField] {
        &self.comps
    }
    fn components_mut(&mut self) -> &mut [ScalarField] {
        &mut self.comps
    }
    fn weights(&self) -> &'static [f64] {
        &[1.0, 2.0, 2.0, 1.0, 2.0, 1.0]
    }
}

/// Three independent components `(xy, xz, yz)` of an antisymmetric tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiSymTensorField {
    pub comps: [ScalarField; 3],
}

impl AntiSymTensorField {
    pub fn zeros(n: usize) -> Self {
        Self {
            comps: std::array::from_fn(|_| ScalarField::zeros(n)),
        }
    }

    /// Full matrix at one mode; the diagonal is zero and `(j, i) = -(i, j)`.
    #[inline]
    pub fn at(&self, idx: usize) -> [[Complex64; 3]; 3] {
        let xy = self.comps[0].coeffs()[idx];
        let xz = self.comps[1].coeffs()[idx];
        let yz = self.comps[2].coeffs()[idx];
        let z = Complex64::default();
        [[z, xy, xz], [-xy, z, yz], [-xz, -yz, z]]
    }
}

impl SpectralField for AntiSymTensorField {
    fn components(&self) -> &[ScalarField] {
        &self.comps
    }
    fn components_mut(&mut self) -> &mut [ScalarField] {
        &mut self.comps
    }
    fn weights(&self) -> &'static [f64] {
        &[2.0, 2.0, 2.0]
    }
}

/// General 3x3 tensor field, row-major components.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    pub comps: [ScalarField; 9],
}

impl TensorField {
    pub fn zeros(n: usize) -> Self {
        Self {
            comps: std::array::from_fn(|_| ScalarField::zeros(n)),
        }
    }

    pub fn random<R: Rng + ?Sized>(grid: &SpectralGrid, rng: &mut R, max_mode: usize) -> Self {
        Self {
            comps: std::array::from_fn(|_| ScalarField::random(grid, rng, max_mode)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarField {
        &self.comps[3 * i + j]
    }

    #[inline]
    pub fn at(&self, idx: usize) -> [[Complex64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.comps[3 * i + j].coeffs()[idx]))
    }
}

impl SpectralField for TensorField {
    fn components(&self) -> &[ScalarField] {
        &self.comps
    }
    fn components_mut(&mut self) -> &mut [ScalarField] {
        &mut self.comps
    }
    fn weights(&self) -> &'static [f64] {
        &[1.0; 9]
    }
}
