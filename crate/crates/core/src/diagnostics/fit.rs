//! Power-law decay fits `value ~ C (1 + t)^p` by least squares in log-log.

use std::fmt;

use crate::error::{Error, Result};

pub const MIN_FIT_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub exponent: f64,
    /// `ln C`.
    pub intercept: f64,
    pub stderr: f64,
    pub t1: f64,
    pub t2: f64,
    pub n: usize,
}

impl fmt::Display for DecayFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exponent={},stderr={},t1={},t2={},n={}",
            self.exponent, self.stderr, self.t1, self.t2, self.n
        )
    }
}

/// Fits the samples with `t1 <= t <= t2` (all samples when `window` is `None`).
pub fn fit_decay(series: &[(f64, f64)], window: Option<(f64, f64)>) -> Result<DecayFit> {
    let (lo, hi) = window.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    if lo >= hi {
        return Err(Error::Fit(format!("empty window [{lo}, {hi}]")));
    }
    let pts: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|&(t, _)| t >= lo && t <= hi)
        .collect();
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!(
            "{} samples in window, need at least {MIN_FIT_SAMPLES}",
            pts.len()
        )));
    }
    if let Some(&(t, v)) = pts.iter().find(|&&(t, v)| !(v > 0.0) || !v.is_finite() || !(t > -1.0)) {
        return Err(Error::Fit(format!(
            "value {v} at t={t} is not positive (saturation or underflow); shrink the window"
        )));
    }
    let n = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|&(t, _)| t.ln_1p()).collect();
    let ys: Vec<f64> = pts.iter().map(|&(_, v)| v.ln()).collect();
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Fit("all samples share one time".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(DecayFit {
        exponent: slope,
        intercept,
        stderr,
        t1: pts.first().unwrap().0,
        t2: pts.last().unwrap().0,
        n: pts.len(),
    })
}

/// Fit window for torus runs.
///
/// `t1` is the first time the reference series (the `k = 1` norm by
/// convention) has decayed by `decay_factor` from its initial value. `t2` is
/// the first later time where the local log-log slope of the saturation
/// series (the `k = 0` norm) differs from its value at `t1` by more than
/// `departure` times that value, or the last sample if it never does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowRule {
    pub decay_factor: f64,
    pub departure: f64,
}

impl Default for WindowRule {
    fn default() -> Self {
        Self {
            decay_factor: 10.0,
            departure: 0.5,
        }
    }
}

fn local_slopes(series: &[(f64, f64)]) -> Vec<(f64, f64)> {
    series
        .windows(3)
        .map(|w| {
            let dx = w[2].0.ln_1p() - w[0].0.ln_1p();
            (w[1].0, (w[2].1.ln() - w[0].1.ln()) / dx)
        })
        .collect()
}

pub fn detect_window(reference: &[(f64, f64)], saturation: &[(f64, f64)], rule: &WindowRule) -> Result<(f64, f64)> {
    let first = reference
        .first()
        .ok_or_else(|| Error::Fit("empty reference series".into()))?;
    let target = first.1 / rule.decay_factor;
    let t1 = reference
        .iter()
        .find(|&&(_, v)| v <= target)
        .map(|&(t, _)| t)
        .ok_or_else(|| {
            Error::Fit(format!(
                "reference series never decays by a factor {}",
                rule.decay_factor
            ))
        })?;
    let slopes = local_slopes(saturation);
    let s1 = slopes
        .iter()
        .find(|&&(t, _)| t >= t1)
        .map(|&(_, s)| s)
        .ok_or_else(|| Error::Fit("no samples after t1".into()))?;
    let t2 = slopes
        .iter()
        .filter(|&&(t, _)| t > t1)
        .find(|&&(_, s)| (s - s1).abs() > rule.departure * s1.abs())
        .map(|&(t, _)| t)
        .unwrap_or_else(|| saturation.last().unwrap().0);
    if !(t2 > t1) {
        return Err(Error::Fit(format!("degenerate window [{t1}, {t2}]")));
    }
    Ok((t1, t2))
}
