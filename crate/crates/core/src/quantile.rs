//! Quantile function and quantile-based shape measures.
//!
//! `F(x) = G(x)^α`, so solving `F(x) = u` is the same as solving
//! `G(x) = u^{1/α}` for the baseline. The root is found on a log scale in
//! whichever of `G` or `1 − G` is the smaller number, which keeps full
//! relative precision in both tails.

use crate::distribution::{base_ln_cdf, base_ln_survival};
use crate::error::{domain, ExgdError, Result};
use crate::params::Parameters;

/// Default tolerance on the CDF scale.
pub const QUANTILE_TOL: f64 = 1e-10;

const MAX_ITER: usize = 400;

/// Value `x` with `F(x) = prob`, accurate to [`QUANTILE_TOL`] on the CDF
/// scale.
pub fn quantile(prob: f64, p: &Parameters) -> Result<f64> {
    quantile_with_tol(prob, p, QUANTILE_TOL)
}

/// [`quantile`] with an explicit CDF-scale tolerance.
///
/// The tolerance is applied relative to `min(prob, 1 − prob)`, so small and
/// large probabilities are resolved as finely as central ones.
pub fn quantile_with_tol(prob: f64, p: &Parameters, tol: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return domain(format!("probability must lie in (0, 1), got {prob}"));
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let theta = p.theta();
    let ln_u = prob.ln() / p.alpha();
    // baseline target u* = prob^{1/α}
    let lower_tail = ln_u < -std::f64::consts::LN_2;
    let target = if lower_tail { ln_u } else { (-ln_u.exp_m1()).ln() };
    // h is increasing in x in both branches
    let h = |x: f64| -> f64 {
        if lower_tail {
            base_ln_cdf(x, theta) - target
        } else {
            target - base_ln_survival(x, theta)
        }
    };
    // first-order map from an error in h to an error in F
    let scale = if lower_tail {
        p.alpha() * prob
    } else {
        2.0 * p.alpha() * target.exp()
    };
    let ln_tol = tol * prob.min(1.0 - prob) / scale;

    let (mut lo, mut hi) = bracket(&h, 1.0 / theta)?;
    let (mut h_lo, mut h_hi) = (h(lo), h(hi));
    let mut side = 0i8;
    for _ in 0..MAX_ITER {
        let x = if hi / lo > 4.0 {
            (lo * hi).sqrt()
        } else {
            // regula falsi with the Illinois modification
            let x = hi - h_hi * (hi - lo) / (h_hi - h_lo);
            if x > lo && x < hi {
                x
            } else {
                0.5 * (lo + hi)
            }
        };
        let hx = h(x);
        if hx.abs() <= ln_tol || (hi - lo) <= 4.0 * f64::EPSILON * hi {
            return Ok(x);
        }
        if hx < 0.0 {
            lo = x;
            h_lo = hx;
            if side == -1 {
                h_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            h_hi = hx;
            if side == 1 {
                h_lo *= 0.5;
            }
            side = 1;
        }
    }
    Err(ExgdError::Convergence(format!(
        "quantile search did not converge for prob = {prob}"
    )))
}

/// Positive bracket `[lo, hi]` with `h(lo) < 0 ≤ h(hi)`, grown or shrunk
/// geometrically from `start`.
fn bracket(h: &impl Fn(f64) -> f64, start: f64) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (start, start);
    for _ in 0..2000 {
        if h(hi) >= 0.0 {
            break;
        }
        hi *= 2.0;
    }
    for _ in 0..2000 {
        if h(lo) < 0.0 {
            break;
        }
        lo *= 0.5;
    }
    if !(h(lo) < 0.0 && h(hi) >= 0.0) || lo == 0.0 || !hi.is_finite() {
        return Err(ExgdError::Convergence("could not bracket quantile".into()));
    }
    Ok((lo.min(hi), hi))
}

/// Bowley skewness from the three quartiles.
pub fn bowley_from_quartiles(q1: f64, q2: f64, q3: f64) -> f64 {
    (q3 + q1 - 2.0 * q2) / (q3 - q1)
}

/// Moors kurtosis from the seven octiles `E1..E7`.
pub fn moors_from_octiles(e: [f64; 7]) -> f64 {
    (e[6] - e[4] + e[2] - e[0]) / (e[5] - e[1])
}

/// Quartile-based skewness [Q(3/4) + Q(1/4) − 2Q(1/2)] / [Q(3/4) − Q(1/4)].
pub fn bowley_skewness(p: &Parameters) -> Result<f64> {
    bowley_skewness_with_tol(p, QUANTILE_TOL)
}

pub fn bowley_skewness_with_tol(p: &Parameters, tol: f64) -> Result<f64> {
    let q = |u| quantile_with_tol(u, p, tol);
    Ok(bowley_from_quartiles(q(0.25)?, q(0.5)?, q(0.75)?))
}

/// Octile-based kurtosis
/// [Q(7/8) − Q(5/8) + Q(3/8) − Q(1/8)] / [Q(6/8) − Q(2/8)].
pub fn moors_kurtosis(p: &Parameters) -> Result<f64> {
    moors_kurtosis_with_tol(p, QUANTILE_TOL)
}

pub fn moors_kurtosis_with_tol(p: &Parameters, tol: f64) -> Result<f64> {
    let mut e = [0.0; 7];
    for (k, slot) in e.iter_mut().enumerate() {
        *slot = quantile_with_tol((k + 1) as f64 / 8.0, p, tol)?;
    }
    Ok(moors_from_octiles(e))
}
