//! Moments, generating functions, conditional moments and mean deviation.
//!
//! Every quantity here is a combination of the two integrals
//! `∫ x^c e^{−δx} G^{α−1}` and `∫ x^{c+2} e^{−δx} G^{α−1}` (complete or over
//! a tail), since the EXGD density is
//! `αθ²/(1+θ) · G^{α−1} · (1 + θx²/2) · e^{−θx}`.

use serde::{Deserialize, Serialize};

use crate::distribution::{cdf_unchecked, ln_survival_unchecked};
use crate::error::{domain, ExgdError, Result};
use crate::params::Parameters;
use crate::series::{
    cdf_power_integral, cdf_power_integral_x2, cdf_power_tail, cdf_power_tail_x2, SeriesConfig,
};

/// Raw and central moments with the Pearson shape coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    /// E X^r for r = 1..4.
    pub raw: [f64; 4],
    /// Central moments μ2, μ3, μ4.
    pub central: [f64; 3],
    /// μ3² / μ2³ (the squared-skewness convention, β1).
    pub pearson_sk: f64,
    /// μ4 / μ2².
    pub pearson_kr: f64,
}

impl Moments {
    pub fn mean(&self) -> f64 {
        self.raw[0]
    }

    pub fn variance(&self) -> f64 {
        self.central[0]
    }
}

fn check_order(r: u32) -> Result<()> {
    if !(1..=4).contains(&r) {
        return domain(format!("moment order must be in 1..=4, got {r}"));
    }
    Ok(())
}

/// ∫ x^c e^{−δx} f-kernel over [0, ∞), scaled to a density integral.
fn full_integral(p: &Parameters, c: f64, delta: f64, cfg: &SeriesConfig) -> Result<f64> {
    let (a, t) = (p.alpha(), p.theta());
    let k1 = cdf_power_integral(a, t, c, delta, cfg)?;
    let k2 = cdf_power_integral_x2(a, t, c, delta, cfg)?;
    Ok(p.prefactor() * (k1 + 0.5 * t * k2))
}

/// ∫ₓ^∞ x^c f(x) dx.
pub fn partial_moment_tail(c: u32, x: f64, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("threshold must be finite and nonnegative, got {x}"));
    }
    let (a, t) = (p.alpha(), p.theta());
    let c = c as f64;
    let l1 = cdf_power_tail(a, t, c, t, x, cfg)?;
    let l2 = cdf_power_tail_x2(a, t, c, t, x, cfg)?;
    Ok(p.prefactor() * (l1 + 0.5 * t * l2))
}

/// E[X^r] for r in 1..=4.
pub fn raw_moment(r: u32, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    check_order(r)?;
    full_integral(p, r as f64, p.theta(), cfg)
}

pub fn moments(p: &Parameters, cfg: &SeriesConfig) -> Result<Moments> {
    let mut raw = [0.0; 4];
    for (r, slot) in raw.iter_mut().enumerate() {
        *slot = raw_moment(r as u32 + 1, p, cfg)?;
    }
    let [m1, m2, m3, m4] = raw;
    let mu2 = m2 - m1 * m1;
    let mu3 = m3 - 3.0 * m2 * m1 + 2.0 * m1.powi(3);
    let mu4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1.powi(4);
    Ok(Moments {
        raw,
        central: [mu2, mu3, mu4],
        pearson_sk: mu3 * mu3 / mu2.powi(3),
        pearson_kr: mu4 / (mu2 * mu2),
    })
}

/// Moment generating function E[e^{tX}] for t < θ.
///
/// The characteristic function is the formal substitution t → it and the
/// cumulant generating function is ln M(t) (see [`cgf`]); neither is
/// evaluated at complex argument.
pub fn mgf(t: f64, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    if !t.is_finite() || t >= p.theta() {
        return domain(format!(
            "mgf requires t < theta = {}, got {t}",
            p.theta()
        ));
    }
    full_integral(p, 0.0, p.theta() - t, cfg)
}

/// Cumulant generating function ln M(t) for t < θ.
pub fn cgf(t: f64, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    mgf(t, p, cfg).map(f64::ln)
}

/// E[X^n | X > x] for n in 1..=4.
pub fn conditional_moment(n: u32, x: f64, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    check_order(n)?;
    let tail = partial_moment_tail(n, x, p, cfg)?;
    let ln_s = ln_survival_unchecked(x, p);
    if ln_s == f64::NEG_INFINITY {
        return Err(ExgdError::ZeroSurvival { x });
    }
    Ok(tail / ln_s.exp())
}

/// Mean absolute deviation about the mean, E|X − μ|.
pub fn mean_deviation(p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    let mu = raw_moment(1, p, cfg)?;
    let tail = partial_moment_tail(1, mu, p, cfg)?;
    Ok(2.0 * mu * cdf_unchecked(mu, p) - 2.0 * mu + 2.0 * tail)
}
