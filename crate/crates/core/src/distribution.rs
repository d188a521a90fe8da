//! Densities, distribution functions, survival and hazard of the xgamma
//! baseline and its exponentiated generalization.
//!
//! The xgamma CDF is evaluated as
//! `G(x) = [θ(1 − e^{−u}) + P₃(u)] / (1 + θ)` with `u = θx` and `P₃` the
//! gamma(3) CDF, a sum of two nonnegative terms. The textbook form
//! `1 − (1+θ+u+u²/2)e^{−u}/(1+θ)` loses most of its digits near the
//! origin when θ is small, which is exactly where likelihoods for
//! day-scaled survival data live.

use crate::error::{domain, ExgdError, Result};
use crate::params::Parameters;

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("x must be finite and nonnegative, got {x}"));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0) || !theta.is_finite() {
        return domain(format!("theta must be positive and finite, got {theta}"));
    }
    Ok(())
}

/// Gamma(3, 1) CDF, accurate to full relative precision for small `u`.
fn gamma3_cdf(u: f64) -> f64 {
    if u < 1.0 {
        let mut term = u * u * u / 6.0;
        let mut sum = term;
        let mut k = 3.0;
        while term > sum * f64::EPSILON {
            k += 1.0;
            term *= u / k;
            sum += term;
        }
        sum * (-u).exp()
    } else {
        1.0 - (-u).exp() * (1.0 + u + 0.5 * u * u)
    }
}

/// Baseline CDF G(x; θ) without argument checks.
#[inline]
pub(crate) fn base_cdf(x: f64, theta: f64) -> f64 {
    let u = theta * x;
    (theta * (-(-u).exp_m1()) + gamma3_cdf(u)) / (1.0 + theta)
}

/// ln of the baseline survival 1 − G(x; θ); finite for every finite x.
#[inline]
pub(crate) fn base_ln_survival(x: f64, theta: f64) -> f64 {
    let u = theta * x;
    (1.0 + theta + u + 0.5 * u * u).ln() - u - theta.ln_1p()
}

/// Baseline survival 1 − G(x; θ).
#[inline]
pub(crate) fn base_survival(x: f64, theta: f64) -> f64 {
    base_ln_survival(x, theta).exp()
}

/// ln G(x; θ), choosing the complement form where G is close to one.
#[inline]
pub(crate) fn base_ln_cdf(x: f64, theta: f64) -> f64 {
    let g = base_cdf(x, theta);
    if g > 0.5 {
        (-base_survival(x, theta)).ln_1p()
    } else {
        g.ln()
    }
}

/// Density of the xgamma law, θ²/(1+θ)·(1 + θx²/2)·e^{−θx}.
pub fn xgamma_pdf(x: f64, theta: f64) -> Result<f64> {
    check_x(x)?;
    check_theta(theta)?;
    Ok(theta * theta / (1.0 + theta) * (1.0 + 0.5 * theta * x * x) * (-theta * x).exp())
}

/// CDF of the xgamma law.
pub fn xgamma_cdf(x: f64, theta: f64) -> Result<f64> {
    check_x(x)?;
    check_theta(theta)?;
    Ok(base_cdf(x, theta))
}

/// CDF of the exponentiated xgamma law, `G(x; θ)^α`.
pub fn exgd_cdf(x: f64, p: &Parameters) -> Result<f64> {
    check_x(x)?;
    Ok(cdf_unchecked(x, p))
}

#[inline]
pub(crate) fn cdf_unchecked(x: f64, p: &Parameters) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (p.alpha() * base_ln_cdf(x, p.theta())).exp()
}

/// Survival function 1 − F(x).
pub fn exgd_survival(x: f64, p: &Parameters) -> Result<f64> {
    check_x(x)?;
    Ok(ln_survival_unchecked(x, p).exp())
}

pub(crate) fn ln_survival_unchecked(x: f64, p: &Parameters) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ln_sb = base_ln_survival(x, p.theta());
    if ln_sb < -690.0 {
        // 1 − (1 − s)^α = α s (1 + O(s)) once s is far below machine epsilon
        return p.alpha().ln() + ln_sb;
    }
    // going through 1 − S_b would throw away the digits of a small G
    let ln_g = base_ln_cdf(x, p.theta());
    (-(p.alpha() * ln_g).exp_m1()).ln()
}

/// Density of the exponentiated xgamma law.
///
/// At the origin the density is 0 for α > 1 and θ²/(1+θ) for α = 1; for
/// α < 1 it is unbounded and [`ExgdError::Pole`] is returned.
pub fn exgd_pdf(x: f64, p: &Parameters) -> Result<f64> {
    exgd_ln_pdf(x, p).map(f64::exp)
}

/// Natural log of the density.
pub fn exgd_ln_pdf(x: f64, p: &Parameters) -> Result<f64> {
    check_x(x)?;
    if x == 0.0 {
        let a = p.alpha();
        if a < 1.0 {
            return Err(ExgdError::Pole { alpha: a });
        }
        if a > 1.0 {
            return Ok(f64::NEG_INFINITY);
        }
    }
    Ok(ln_pdf_unchecked(x, p))
}

#[inline]
pub(crate) fn ln_pdf_unchecked(x: f64, p: &Parameters) -> f64 {
    let (a, t) = (p.alpha(), p.theta());
    let ln_g = if x == 0.0 { 0.0 } else { base_ln_cdf(x, t) };
    let shape_term = if a == 1.0 { 0.0 } else { (a - 1.0) * ln_g };
    p.prefactor().ln() + shape_term + (0.5 * t * x * x).ln_1p() - t * x
}

/// Hazard rate f(x) / S(x), evaluated in log space so that it stays finite
/// far into the tail.
pub fn exgd_hazard(x: f64, p: &Parameters) -> Result<f64> {
    let ln_f = exgd_ln_pdf(x, p)?;
    let ln_s = ln_survival_unchecked(x, p);
    if ln_s == f64::NEG_INFINITY {
        return Err(ExgdError::ZeroSurvival { x });
    }
    Ok((ln_f - ln_s).exp())
}
