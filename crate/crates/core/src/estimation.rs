//! Point estimation of (α, θ) from a complete sample.
//!
//! Five criteria are supported: maximum likelihood, ordinary and weighted
//! least squares on the CDF, the Cramér–von Mises distance and maximum
//! product of spacings. All are optimized by the same Nelder–Mead search
//! over (ln α, ln θ), which keeps both parameters positive without
//! constraints. The likelihood fit is finished with a Newton polish on the
//! analytic score.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::{
    base_cdf, base_ln_cdf, cdf_unchecked, exgd_hazard, exgd_survival, ln_pdf_unchecked,
    ln_survival_unchecked,
};
use crate::error::{domain, Result};
use crate::optim::{nelder_mead_restarted, newton_polish, SimplexOptions};
use crate::params::Parameters;
use crate::sample::Sample;

/// Estimation criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mle,
    Lse,
    Wlse,
    Cme,
    Mpse,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Mle, Method::Lse, Method::Wlse, Method::Cme, Method::Mpse];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Mle => "mle",
            Method::Lse => "lse",
            Method::Wlse => "wlse",
            Method::Cme => "cme",
            Method::Mpse => "mpse",
        }
    }

    /// True for criteria that are maximized (likelihood, spacings).
    pub fn maximizes(&self) -> bool {
        matches!(self, Method::Mle | Method::Mpse)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mle" => Ok(Method::Mle),
            "lse" => Ok(Method::Lse),
            "wlse" => Ok(Method::Wlse),
            "cme" => Ok(Method::Cme),
            "mpse" => Ok(Method::Mpse),
            other => Err(format!("unknown estimation method {other:?}")),
        }
    }
}

/// Outcome of a fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub method: Method,
    pub params: Parameters,
    /// The criterion at the optimum in its natural sign: the log-likelihood
    /// for MLE, the mean log spacing H for MPSE, the (nonnegative) distance
    /// for LSE, WLSE and CME.
    pub objective_at_optimum: f64,
    /// Whether the simplex met both its size and objective-spread
    /// tolerances.
    pub converged: bool,
    pub iterations: usize,
    /// −ℓ at `params`, whatever the method.
    pub neg_log_lik: f64,
}

/// Log-likelihood of the sample.
pub fn log_likelihood(s: &Sample, p: &Parameters) -> Result<f64> {
    check_sample(s, 1)?;
    Ok(log_likelihood_unchecked(s, p))
}

fn log_likelihood_unchecked(s: &Sample, p: &Parameters) -> f64 {
    s.values().iter().map(|&x| ln_pdf_unchecked(x, p)).sum()
}

/// Partial derivatives (∂ℓ/∂α, ∂ℓ/∂θ) of the log-likelihood.
pub fn score(s: &Sample, p: &Parameters) -> Result<(f64, f64)> {
    check_sample(s, 1)?;
    let (a, t) = (p.alpha(), p.theta());
    let n = s.n() as f64;
    let mut sum_ln_u = 0.0;
    let mut sum_x = 0.0;
    let mut sum_ratio = 0.0;
    let mut sum_quad = 0.0;
    for &x in s.values() {
        let u = base_cdf(x, t);
        sum_ln_u += base_ln_cdf(x, t);
        sum_x += x;
        // ∂G/∂θ = e^{−θx}(2θx + θ²x + θ²x²/2 + θ²x³/2 + θ³x³/2)/(1+θ)²
        let dg = (-t * x).exp()
            * (2.0 * t * x
                + t * t * x
                + 0.5 * t * t * x * x
                + 0.5 * t * t * x.powi(3)
                + 0.5 * t.powi(3) * x.powi(3))
            / (1.0 + t).powi(2);
        sum_ratio += dg / u;
        let h = 0.5 * x * x;
        sum_quad += h / (1.0 + t * h);
    }
    let d_alpha = n / a + sum_ln_u;
    let d_theta = n * (t + 2.0) / (t * (1.0 + t)) - sum_x + (a - 1.0) * sum_ratio + sum_quad;
    Ok((d_alpha, d_theta))
}

/// The n + 1 spacings F(x_(i)) − F(x_(i−1)) with F(x_(0)) = 0 and
/// F(x_(n+1)) = 1. Differences in the upper half are taken on the survival
/// scale. A spacing below 1e-300 (tied observations) is replaced by
/// f(x_(i))·x_(i)·ε so that its logarithm stays finite.
pub fn spacings(s: &Sample, p: &Parameters) -> Vec<f64> {
    let mut out = Vec::with_capacity(s.n() + 1);
    let (mut prev_f, mut prev_s) = (0.0, 1.0);
    for &x in s.values() {
        let f = cdf_unchecked(x, p);
        let surv = ln_survival_unchecked(x, p).exp();
        let d = if prev_f >= 0.5 { prev_s - surv } else { f - prev_f };
        let d = if d < 1e-300 {
            ln_pdf_unchecked(x, p).exp() * x * f64::EPSILON
        } else {
            d
        };
        out.push(d);
        prev_f = f;
        prev_s = surv;
    }
    out.push(prev_s);
    out
}

/// Σ [F(x_(i)) − i/(n+1)]²
pub fn lse_objective(s: &Sample, p: &Parameters) -> f64 {
    let n = s.n() as f64;
    s.values()
        .iter()
        .enumerate()
        .map(|(i, &x)| (cdf_unchecked(x, p) - (i + 1) as f64 / (n + 1.0)).powi(2))
        .sum()
}

/// Weight of the i-th (1-based) squared residual in the weighted
/// least-squares criterion, (n+1)²(n+2) / (i(n−i+1)).
pub fn wlse_weight(i: usize, n: usize) -> f64 {
    let (i, n) = (i as f64, n as f64);
    (n + 1.0).powi(2) * (n + 2.0) / (i * (n - i + 1.0))
}

/// Σ w_i [F(x_(i)) − i/(n+1)]²
pub fn wlse_objective(s: &Sample, p: &Parameters) -> f64 {
    let n = s.n();
    s.values()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            wlse_weight(i + 1, n) * (cdf_unchecked(x, p) - (i + 1) as f64 / (n as f64 + 1.0)).powi(2)
        })
        .sum()
}

/// 1/(12n) + Σ [F(x_(i)) − (2i−1)/(2n)]²
pub fn cme_objective(s: &Sample, p: &Parameters) -> f64 {
    let n = s.n() as f64;
    1.0 / (12.0 * n)
        + s.values()
            .iter()
            .enumerate()
            .map(|(i, &x)| (cdf_unchecked(x, p) - (2.0 * i as f64 + 1.0) / (2.0 * n)).powi(2))
            .sum::<f64>()
}

/// H = (1/(n+1)) Σ ln D_i
pub fn mpse_objective(s: &Sample, p: &Parameters) -> f64 {
    let d = spacings(s, p);
    d.iter().map(|v| v.ln()).sum::<f64>() / d.len() as f64
}

/// The criterion for `method` in its natural sign.
pub fn objective(method: Method, s: &Sample, p: &Parameters) -> f64 {
    match method {
        Method::Mle => log_likelihood_unchecked(s, p),
        Method::Lse => lse_objective(s, p),
        Method::Wlse => wlse_objective(s, p),
        Method::Cme => cme_objective(s, p),
        Method::Mpse => mpse_objective(s, p),
    }
}

fn check_sample(s: &Sample, min_n: usize) -> Result<()> {
    if s.n() < min_n {
        return domain(format!("at least {min_n} observations are required, got {}", s.n()));
    }
    Ok(())
}

fn to_params(z: &[f64]) -> Option<Parameters> {
    Parameters::new(z[0].exp(), z[1].exp()).ok()
}

/// Criterion as a quantity to minimize over (ln α, ln θ).
fn loss(method: Method, s: &Sample, z: &[f64]) -> f64 {
    match to_params(z) {
        Some(p) => {
            let v = objective(method, s, &p);
            if method.maximizes() {
                -v
            } else {
                v
            }
        }
        None => f64::INFINITY,
    }
}

/// Best point of an 8×8 logarithmic grid, θ spanning 0.1/x̄ to 30/x̄ and
/// α spanning 0.1 to 10.
fn grid_start(method: Method, s: &Sample) -> [f64; 2] {
    let mean = s.mean();
    let (t_lo, t_hi) = ((0.1 / mean).ln(), (30.0 / mean).ln());
    let (a_lo, a_hi) = (0.1f64.ln(), 10f64.ln());
    let mut best = ([0.0, (3.0 / mean).ln()], f64::INFINITY);
    for i in 0..8 {
        for j in 0..8 {
            let z = [
                a_lo + (a_hi - a_lo) * i as f64 / 7.0,
                t_lo + (t_hi - t_lo) * j as f64 / 7.0,
            ];
            let v = loss(method, s, &z);
            if v < best.1 {
                best = (z, v);
            }
        }
    }
    best.0
}

/// Fits the EXGD by `method`, starting from `init` or, if absent, from the
/// best point of a coarse grid. Failure to converge is reported in the
/// result rather than raised.
pub fn fit(method: Method, s: &Sample, init: Option<Parameters>) -> Result<FitResult> {
    check_sample(s, 2)?;
    let z0 = match init {
        Some(p) => [p.alpha().ln(), p.theta().ln()],
        None => grid_start(method, s),
    };
    let opts = SimplexOptions::default();
    let f = |z: &[f64]| loss(method, s, z);
    let min = nelder_mead_restarted(f, &z0, &opts);
    let mut z = min.x.clone();
    if method == Method::Mle {
        let grad = |z: &[f64]| {
            let p = to_params(z)?;
            let (da, dt) = score(s, &p).ok()?;
            Some(vec![-da * p.alpha(), -dt * p.theta()])
        };
        z = newton_polish(f, grad, &z, 4);
    }
    let params = to_params(&z)
        .ok_or_else(|| crate::error::ExgdError::Convergence("optimizer left the parameter space".into()))?;
    Ok(FitResult {
        method,
        params,
        objective_at_optimum: objective(method, s, &params),
        converged: min.converged,
        iterations: min.iterations,
        neg_log_lik: -log_likelihood_unchecked(s, &params),
    })
}

pub fn fit_mle(s: &Sample, init: Option<Parameters>) -> Result<FitResult> {
    fit(Method::Mle, s, init)
}

pub fn fit_lse(s: &Sample) -> Result<FitResult> {
    fit(Method::Lse, s, None)
}

pub fn fit_wlse(s: &Sample) -> Result<FitResult> {
    fit(Method::Wlse, s, None)
}

pub fn fit_cme(s: &Sample) -> Result<FitResult> {
    fit(Method::Cme, s, None)
}

pub fn fit_mpse(s: &Sample) -> Result<FitResult> {
    fit(Method::Mpse, s, None)
}

/// Survival function at the fitted parameters.
pub fn plugin_survival(x: f64, fit: &FitResult) -> Result<f64> {
    exgd_survival(x, &fit.params)
}

/// Hazard rate at the fitted parameters.
pub fn plugin_hazard(x: f64, fit: &FitResult) -> Result<f64> {
    exgd_hazard(x, &fit.params)
}
