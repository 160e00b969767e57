//! Sampled verification of the low-frequency Green-function bounds
//! `|G1| + |G3| <= K e^{-theta r^2 t}` and
//! `|G2| <= K (r^2 e^{-theta r^2 t} + e^{-beta t / 2})` on `(0, R]`.

use std::fmt;

use crate::error::{Error, Result};

use super::green::{discriminant, eigenvalues, green_functions, GreenTriple};
use super::ModelParams;

/// Sampling lattice: `r_count` uniform radii `R i / r_count` and `t_count`
/// times, the first at `t = 0` when `include_zero`, the rest log-spaced on
/// `[t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub r_count: usize,
    pub t_count: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub include_zero: bool,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            r_count: 200,
            t_count: 200,
            t_min: 1e-3,
            t_max: 1e3,
            include_zero: true,
        }
    }
}

impl SampleSpec {
    /// Doubles the sample count along both axes.
    pub fn densified(&self) -> Self {
        Self {
            r_count: 2 * self.r_count,
            t_count: 2 * self.t_count,
            ..*self
        }
    }

    pub fn radii(&self, radius: f64) -> Vec<f64> {
        (1..=self.r_count)
            .map(|i| radius * i as f64 / self.r_count as f64)
            .collect()
    }

    pub fn times(&self) -> Vec<f64> {
        let mut ts = Vec::with_capacity(self.t_count);
        let logs = if self.include_zero {
            ts.push(0.0);
            self.t_count.saturating_sub(1)
        } else {
            self.t_count
        };
        if logs == 1 {
            ts.push(self.t_min);
        } else if logs > 1 {
            let (a, b) = (self.t_min.ln(), self.t_max.ln());
            ts.extend((0..logs).map(|i| (a + (b - a) * i as f64 / (logs - 1) as f64).exp()));
        }
        ts
    }

    fn validate(&self) -> Result<()> {
        if self.r_count == 0 || self.t_count == 0 {
            return Err(Error::InvalidArgument("empty bound sample grid".into()));
        }
        let logs = self.t_count - usize::from(self.include_zero);
        if logs > 0 && !(self.t_min > 0.0 && self.t_max >= self.t_min && self.t_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "sample times need 0 < t_min <= t_max, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub radius: f64,
    pub theta: f64,
    pub k: f64,
    pub worst_ratio: f64,
    pub worst_r: f64,
    pub worst_t: f64,
    pub pass: bool,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "radius={}", self.radius)?;
        writeln!(f, "theta={}", self.theta)?;
        writeln!(f, "K={}", self.k)?;
        writeln!(f, "worst_ratio={}", self.worst_ratio)?;
        writeln!(f, "worst_r={}", self.worst_r)?;
        writeln!(f, "worst_t={}", self.worst_t)?;
        writeln!(f, "pass={}", self.pass)
    }
}

/// Both bound ratios with `K = 1`.
fn ratios(g: &GreenTriple, r: f64, t: f64, theta: f64, beta: f64) -> (f64, f64) {
    let heat = (-theta * r * r * t).exp();
    let first = (g.g1.abs() + g.g3.abs()) / heat;
    let second = g.g2.abs() / (r * r * heat + (-0.5 * beta * t).exp());
    (first, second)
}

struct Sweep {
    worst: f64,
    r: f64,
    t: f64,
}

fn sweep(radius: f64, theta: f64, spec: &SampleSpec, p: &ModelParams) -> Sweep {
    let ts = spec.times();
    let mut out = Sweep {
        worst: 0.0,
        r: f64::NAN,
        t: f64::NAN,
    };
    for r in spec.radii(radius) {
        for &t in &ts {
            let g = green_functions(r, t, p);
            let (a, b) = ratios(&g, r, t, theta, p.beta);
            let m = a.max(b);
            if m > out.worst || out.r.is_nan() || m.is_nan() {
                out = Sweep { worst: m, r, t };
                if m.is_nan() {
                    return out;
                }
            }
        }
    }
    out
}

pub fn verify_green_bounds(
    radius: f64,
    theta: f64,
    k: f64,
    spec: &SampleSpec,
    p: &ModelParams,
) -> Result<BoundReport> {
    spec.validate()?;
    for (name, v) in [("radius", radius), ("theta", theta), ("K", k)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    let s = sweep(radius, theta, spec, p);
    let worst_ratio = s.worst / k;
    Ok(BoundReport {
        radius,
        theta,
        k,
        worst_ratio,
        worst_r: s.r,
        worst_t: s.t,
        pass: worst_ratio <= 1.0,
    })
}

/// Fails unless `Delta(r) > 0` on all of `(0, R]`.
pub fn check_real_branch(radius: f64, p: &ModelParams) -> Result<()> {
    // Delta is a quadratic in x = r^2; check the endpoint and the vertex.
    let a = (p.mu - p.epsilon).powi(2);
    let bq = 2.0 * p.beta * (p.mu - p.epsilon) - 2.0 * p.alpha * p.kappa;
    let mut candidates = vec![radius];
    if a > 0.0 {
        let xv = -bq / (2.0 * a);
        if xv > 0.0 && xv < radius * radius {
            candidates.push(xv.sqrt());
        }
    }
    for r in candidates {
        let d = discriminant(r, p);
        if !(d > 0.0) {
            return Err(Error::ComplexBranch {
                radius: r,
                discriminant: d,
            });
        }
    }
    Ok(())
}

/// First positive radius where `Delta` vanishes, if any.
pub fn real_branch_radius(p: &ModelParams) -> Option<f64> {
    let a = (p.mu - p.epsilon).powi(2);
    let bq = 2.0 * p.beta * (p.mu - p.epsilon) - 2.0 * p.alpha * p.kappa;
    let c = p.beta * p.beta;
    let x = if a == 0.0 {
        (bq < 0.0).then(|| -c / bq)?
    } else {
        let disc = bq * bq - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        // smaller positive root, written to avoid cancellation
        let q = -0.5 * (bq + bq.signum() * sq);
        let roots = [q / a, c / q];
        roots
            .into_iter()
            .filter(|x| *x > 0.0 && x.is_finite())
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))))?
    };
    Some(x.sqrt())
}

/// Default low-frequency radius: half the smaller of the real-branch radius
/// and the diffusion/damping crossover `sqrt(beta / mu)`.
pub fn default_cutoff_radius(p: &ModelParams) -> f64 {
    let crossover = (p.beta / p.mu).sqrt();
    0.5 * real_branch_radius(p).map_or(crossover, |r| r.min(crossover))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub theta: f64,
    pub k: f64,
}

/// Upper end of the theta search: `min_r -lambda_plus(r) / r^2` over the samples.
pub fn theta_ceiling(radius: f64, spec: &SampleSpec, p: &ModelParams) -> f64 {
    spec.radii(radius)
        .into_iter()
        .map(|r| -eigenvalues(r, p).0.re / (r * r))
        .fold(f64::INFINITY, f64::min)
}

pub const DEFAULT_K_CAP: f64 = 1e3;

/// Largest `theta` in `(0, theta_ceiling]` whose sampled `K(theta)` stays
/// finite and below `k_cap`, found by bisection; `K` is the observed supremum.
pub fn find_bound_constants(
    radius: f64,
    spec: &SampleSpec,
    p: &ModelParams,
    k_cap: f64,
) -> Result<BoundConstants> {
    spec.validate()?;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    check_real_branch(radius, p)?;
    let k_of = |theta: f64| sweep(radius, theta, spec, p).worst;
    let accept = |k: f64| k.is_finite() && k <= k_cap;
    let hi = theta_ceiling(radius, spec, p);
    let k_hi = k_of(hi);
    if accept(k_hi) {
        return Ok(BoundConstants { theta: hi, k: k_hi });
    }
    let mut lo = 0.0;
    let mut k_lo = k_of(0.0);
    if !accept(k_lo) {
        return Err(Error::InvalidArgument(format!(
            "no theta keeps K below the cap {k_cap} (K(0) = {k_lo})"
        )));
    }
    let mut hi = hi;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let k_mid = k_of(mid);
        if accept(k_mid) {
            lo = mid;
            k_lo = k_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-10 * hi {
            break;
        }
    }
    if lo == 0.0 {
        return Err(Error::InvalidArgument(
            "bound search collapsed to theta = 0".into(),
        ));
    }
    Ok(BoundConstants { theta: lo, k: k_lo })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p11111() -> ModelParams {
        ModelParams::new(0.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn sample_grid_shape() {
        let s = SampleSpec {
            r_count: 4,
            t_count: 3,
            t_min: 1.0,
            t_max: 100.0,
            include_zero: true,
        };
        assert_eq!(s.radii(2.0), vec![0.5, 1.0, 1.5, 2.0]);
        let ts = s.times();
        assert_eq!(ts.len(), 3);
        assert_eq!(ts[0], 0.0);
        assert!((ts[1] - 1.0).abs() < 1e-14 && (ts[2] - 100.0).abs() < 1e-12);
        let empty = SampleSpec { r_count: 0, ..s };
        assert!(verify_green_bounds(1.0, 1.0, 1.0, &empty, &p11111()).is_err());
    }

    #[test]
    fn zero_time_forces_unit_constant() {
        let s = SampleSpec {
            t_count: 1,
            include_zero: true,
            ..Default::default()
        };
        let p = p11111();
        let rep = verify_green_bounds(0.5, 3.0, 1.0, &s, &p).unwrap();
        assert!((rep.worst_ratio - 1.0).abs() < 1e-15);
        assert!(rep.pass);
        assert!(!verify_green_bounds(0.5, 3.0, 0.99, &s, &p).unwrap().pass);
        // any theta passes at t = 0 only, so the search returns its ceiling
        let c = find_bound_constants(0.5, &s, &p, DEFAULT_K_CAP).unwrap();
        assert_eq!(c.k, 1.0);
        assert_eq!(c.theta, theta_ceiling(0.5, &s, &p));
    }

    #[test]
    fn default_radius_rule() {
        // Delta = r^4 + 1 never vanishes; crossover sqrt(beta/mu) = 1.
        let p = p11111();
        assert_eq!(real_branch_radius(&p), None);
        assert_eq!(default_cutoff_radius(&p), 0.5);
        // (1,1,2,1,2): Delta = 1 - 8 r^2 vanishes at r^2 = 1/8.
        let q = ModelParams::new(1.0, 1.0, 2.0, 1.0, 2.0, 0.0).unwrap();
        let r = real_branch_radius(&q).unwrap();
        assert!((r - (0.125f64).sqrt()).abs() < 1e-15);
        assert!((default_cutoff_radius(&q) - 0.5 * r).abs() < 1e-15);
        // generic quadratic case
        let w = ModelParams::new(0.0, 1.0, 1.0, 1.0, 4.0, 0.0).unwrap();
        let r = real_branch_radius(&w).unwrap();
        assert!(discriminant(r, &w).abs() < 1e-12);
        assert!(discriminant(0.99 * r, &w) > 0.0);
    }

    #[test]
    fn search_finds_passing_constants() {
        let p = p11111();
        let radius = default_cutoff_radius(&p);
        let spec = SampleSpec {
            r_count: 60,
            t_count: 60,
            ..Default::default()
        };
        let c = find_bound_constants(radius, &spec, &p, DEFAULT_K_CAP).unwrap();
        assert!(c.theta > 0.0 && c.k >= 1.0);
        let rep = verify_green_bounds(radius, c.theta, c.k, &spec, &p).unwrap();
        assert!(rep.pass);
        assert!((rep.worst_ratio - 1.0).abs() < 1e-12);
        let rep = verify_green_bounds(radius, 2.0 * c.theta, c.k, &spec, &p).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn complex_branch_is_rejected() {
        let p = ModelParams::new(0.0, 1.0, 1.0, 1.0, 4.0, 0.0).unwrap();
        let r = real_branch_radius(&p).unwrap();
        let spec = SampleSpec::default();
        let err = find_bound_constants(1.5 * r, &spec, &p, DEFAULT_K_CAP).unwrap_err();
        assert!(matches!(err, Error::ComplexBranch { .. }));
        assert!(check_real_branch(0.9 * r, &p).is_ok());
    }

    #[test]
    fn report_is_key_value_text() {
        let rep = BoundReport {
            radius: 0.5,
            theta: 0.25,
            k: 1.5,
            worst_ratio: 1.0,
            worst_r: 0.5,
            worst_t: 10.0,
            pass: true,
        };
        let text = rep.to_string();
        assert!(text.starts_with("radius=0.5\ntheta=0.25\nK=1.5\n"));
        assert!(text.ends_with("pass=true\n"));
    }
}
