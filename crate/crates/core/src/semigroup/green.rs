//! Per-mode linear theory: symbol matrix, eigenvalues, Green functions and
//! the `2x2` propagator acting on `(u_hat, sigma_hat)`.

use num_complex::Complex64;

use super::ModelParams;

pub type Matrix2 = [[f64; 2]; 2];

/// `A(r) = [[-eps r^2, kappa r], [-(alpha/2) r, -mu r^2 - beta]]`.
pub fn symbol_matrix(r: f64, p: &ModelParams) -> Matrix2 {
    let r2 = r * r;
    [
        [-p.epsilon * r2, p.kappa * r],
        [-0.5 * p.alpha * r, -p.mu * r2 - p.beta],
    ]
}

pub fn trace(r: f64, p: &ModelParams) -> f64 {
    -(p.epsilon + p.mu) * r * r - p.beta
}

pub fn determinant(r: f64, p: &ModelParams) -> f64 {
    let r2 = r * r;
    p.epsilon * r2 * (p.mu * r2 + p.beta) + 0.5 * p.alpha * p.kappa * r2
}

/// `Delta(r) = ((mu - eps) r^2 + beta)^2 - 2 alpha kappa r^2`.
pub fn discriminant(r: f64, p: &ModelParams) -> f64 {
    let r2 = r * r;
    let a = (p.mu - p.epsilon) * r2 + p.beta;
    a * a - 2.0 * p.alpha * p.kappa * r2
}

/// `(lambda_plus, lambda_minus)`; `lambda_plus` has the larger real part,
/// ties broken by the larger imaginary part.
pub fn eigenvalues(r: f64, p: &ModelParams) -> (Complex64, Complex64) {
    let t = trace(r, p);
    let d = discriminant(r, p);
    if d >= 0.0 {
        let (lp, lm) = real_eigenvalues(r, p, d.sqrt());
        (Complex64::new(lp, 0.0), Complex64::new(lm, 0.0))
    } else {
        let w = 0.5 * (-d).sqrt();
        (Complex64::new(0.5 * t, w), Complex64::new(0.5 * t, -w))
    }
}

// lambda_minus = (T - s)/2 never cancels; lambda_plus comes from the product
// of the roots so that it stays accurate when |lambda_plus| << |lambda_minus|.
fn real_eigenvalues(r: f64, p: &ModelParams, s: f64) -> (f64, f64) {
    let lm = 0.5 * (trace(r, p) - s);
    let lp = if lm != 0.0 { determinant(r, p) / lm } else { 0.0 };
    (lp, lm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenTriple {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

/// `(1 - exp(-x)) / x` for `x >= 0`, equal to 1 at 0.
fn one_minus_exp_ratio(x: f64) -> f64 {
    if x < 1e-8 {
        1.0 - 0.5 * x
    } else {
        -(-x).exp_m1() / x
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Green functions at `(r, t)`.
///
/// Real branch (`Delta >= 0`, `s = sqrt(Delta)`):
/// `G1 = e^{lp t} t (1 - e^{-s t})/(s t)`, `G3 = e^{lp t} - lp G1`,
/// `G2 = e^{lm t} + lp G1`. Every term is smooth through `s = 0`.
/// Oscillatory branch (`Delta < 0`, `lambda = c +- i w`):
/// `G1 = e^{ct} t sinc(w t)`, `G2,3 = e^{ct} cos(w t) +- c G1`.
pub fn green_functions(r: f64, t: f64, p: &ModelParams) -> GreenTriple {
    let d = discriminant(r, p);
    if d >= 0.0 {
        let s = d.sqrt();
        let (lp, lm) = real_eigenvalues(r, p, s);
        let ep = (lp * t).exp();
        let em = ep * (-s * t).exp();
        let g1 = ep * t * one_minus_exp_ratio(s * t);
        GreenTriple {
            g1,
            g2: em + lp * g1,
            g3: ep - lp * g1,
            lambda_plus: Complex64::new(lp, 0.0),
            lambda_minus: Complex64::new(lm, 0.0),
        }
    } else {
        let c = 0.5 * trace(r, p);
        let w = 0.5 * (-d).sqrt();
        let e = (c * t).exp();
        let g1 = e * t * sinc(w * t);
        let cs = e * (w * t).cos();
        GreenTriple {
            g1,
            g2: cs + c * g1,
            g3: cs - c * g1,
            lambda_plus: Complex64::new(c, w),
            lambda_minus: Complex64::new(c, -w),
        }
    }
}

/// `exp(A(r) t) = [[G3 - eps r^2 G1, kappa r G1], [-(alpha/2) r G1, G2 + eps r^2 G1]]`.
pub fn propagator(r: f64, t: f64, p: &ModelParams) -> Matrix2 {
    let g = green_functions(r, t, p);
    propagator_from(&g, r, p)
}

pub fn propagator_from(g: &GreenTriple, r: f64, p: &ModelParams) -> Matrix2 {
    let er2 = p.epsilon * r * r;
    [
        [g.g3 - er2 * g.g1, p.kappa * r * g.g1],
        [-0.5 * p.alpha * r * g.g1, g.g2 + er2 * g.g1],
    ]
}

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Largest absolute entry.
pub fn mat_norm(a: &Matrix2) -> f64 {
    a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
}
