//! Lorenz and Bonferroni curves and the Gini and Bonferroni indices.
//!
//! With `q = Q(p)` and `μ = E X`,
//! `L(p) = (1/μ) ∫₀^q x f(x) dx = 1 − (1/μ) ∫_q^∞ x f(x) dx` and
//! `B(p) = L(p)/p`. The tail integral is the unnormalized partial moment,
//! so `L(1⁻) = 1` and `L(p) ≤ p`.
//!
//! In the lower half of the distribution `1 − T/μ` cancels badly and the
//! tail series converges slowly, so there the head integral `∫₀^q x f` is
//! integrated directly instead; the two forms are the same quantity.

use crate::distribution::{base_cdf, ln_pdf_unchecked};
use crate::error::{domain, Result};
use crate::moments::{partial_moment_tail, raw_moment};
use crate::params::Parameters;
use crate::quadrature::integrate;
use crate::quantile::quantile;
use crate::series::SeriesConfig;

const INDEX_TOL: f64 = 1e-9;

fn check_prob(prob: f64) -> Result<()> {
    if !(prob > 0.0 && prob < 1.0) {
        return domain(format!("probability must lie in (0, 1), got {prob}"));
    }
    Ok(())
}

fn lorenz_with_mean(prob: f64, mu: f64, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    let q = quantile(prob, p)?;
    let head = if prob <= 0.5 || base_cdf(q, p.theta()) < 0.5 {
        integrate(
            |x| Ok(x * ln_pdf_unchecked(x, p).exp()),
            0.0,
            q,
            0.0,
            1e-12,
        )?
    } else {
        mu - partial_moment_tail(1, q, p, cfg)?
    };
    Ok((head / mu).clamp(0.0, 1.0))
}

/// Lorenz curve L(p).
pub fn lorenz_curve(prob: f64, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    check_prob(prob)?;
    let mu = raw_moment(1, p, cfg)?;
    lorenz_with_mean(prob, mu, p, cfg)
}

/// Bonferroni curve B(p) = L(p) / p.
pub fn bonferroni_curve(prob: f64, p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    Ok(lorenz_curve(prob, p, cfg)? / prob)
}

/// Gini index 1 − 2∫₀¹ L(p) dp.
pub fn gini_index(p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    let mu = raw_moment(1, p, cfg)?;
    let area = integrate(|u| lorenz_with_mean(u, mu, p, cfg), 0.0, 1.0, INDEX_TOL, INDEX_TOL)?;
    Ok(1.0 - 2.0 * area)
}

/// Bonferroni index 1 − ∫₀¹ B(p) dp.
pub fn bonferroni_index(p: &Parameters, cfg: &SeriesConfig) -> Result<f64> {
    let mu = raw_moment(1, p, cfg)?;
    let area = integrate(
        |u| Ok(lorenz_with_mean(u, mu, p, cfg)? / u),
        0.0,
        1.0,
        INDEX_TOL,
        INDEX_TOL,
    )?;
    Ok(1.0 - area)
}
