use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Shape and scale of the exponentiated xgamma law.
///
/// `alpha` is the (dimensionless) exponent applied to the xgamma CDF;
/// `theta` is the xgamma rate, in inverse units of the data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    alpha: f64,
    theta: f64,
}

impl Parameters {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!("alpha must be positive and finite, got {alpha}"));
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return domain(format!("theta must be positive and finite, got {theta}"));
        }
        Ok(Self { alpha, theta })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Common density prefactor αθ²/(1+θ).
    #[inline]
    pub(crate) fn prefactor(&self) -> f64 {
        self.alpha * self.theta * self.theta / (1.0 + self.theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        assert!(Parameters::new(0.0, 1.0).is_err());
        assert!(Parameters::new(1.0, -2.0).is_err());
        assert!(Parameters::new(f64::NAN, 1.0).is_err());
        assert!(Parameters::new(1.0, f64::INFINITY).is_err());
        let p = Parameters::new(0.4634, 0.00278).unwrap();
        assert_eq!((p.alpha(), p.theta()), (0.4634, 0.00278));
    }
}
