use crate::error::{Error, Result};

/// Physical constants of the diffusive Oldroyd-B system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub epsilon: f64,
    pub mu: f64,
    pub kappa: f64,
    pub beta: f64,
    pub alpha: f64,
    pub b: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            epsilon: 0.0,
            mu: 1.0,
            kappa: 1.0,
            beta: 1.0,
            alpha: 1.0,
            b: 0.0,
        }
    }
}

impl ModelParams {
    pub fn new(epsilon: f64, mu: f64, kappa: f64, beta: f64, alpha: f64, b: f64) -> Result<Self> {
        let p = Self {
            epsilon,
            mu,
            kappa,
            beta,
            alpha,
            b,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.epsilon, self.mu, self.kappa, self.beta, self.alpha, self.b];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(self.mu > 0.0) {
            return Err(Error::InvalidParams(format!(
                "diffusive model requires mu > 0, got {}",
                self.mu
            )));
        }
        if self.epsilon < 0.0 {
            return Err(Error::InvalidParams(format!(
                "epsilon must be >= 0, got {}",
                self.epsilon
            )));
        }
        for (name, v) in [("kappa", self.kappa), ("beta", self.beta), ("alpha", self.alpha)] {
            if !(v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.b.abs() > 1.0 {
            return Err(Error::InvalidParams(format!(
                "b must lie in [-1, 1], got {}",
                self.b
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ModelParams::default().validate().is_ok());
        assert!(ModelParams::new(0.0, 0.0, 1.0, 1.0, 1.0, 0.0)
            .unwrap_err()
            .to_string()
            .contains("diffusive model requires mu > 0"));
        assert!(ModelParams::new(-1.0, 1.0, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 1.0, 0.0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 1.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 1.0, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 1.0, 1.0, 1.0, 1.0, 1.5).is_err());
        assert!(ModelParams::new(0.0, 1.0, 1.0, 1.0, 1.0, -1.0).is_ok());
        assert!(ModelParams::new(f64::NAN, 1.0, 1.0, 1.0, 1.0, 0.0).is_err());
    }
}
