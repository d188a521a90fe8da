//! Baseline lifetime models used for comparison with the EXGD.
//!
//! Parameter vectors follow the order in which estimates are usually
//! reported:
//!
//! | model | density | params |
//! |-------|---------|--------|
//! | ED    | θ e^{−θx} | [θ] |
//! | LD    | θ²/(1+θ) (1+x) e^{−θx} | [θ] |
//! | RD    | 2θx e^{−θx²} | [θ] |
//! | XGD   | θ²/(1+θ) (1+θx²/2) e^{−θx} | [θ] |
//! | GED   | αλ (1−e^{−λx})^{α−1} e^{−λx} | [α, λ] |
//! | WD    | kλ (λx)^{k−1} e^{−(λx)^k} | [k, λ] |
//! | GD    | r^k x^{k−1} e^{−rx} / Γ(k) | [k, r] |
//! | EXGD  | see [`crate::distribution`] | [α, θ] |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::{base_cdf, cdf_unchecked, ln_pdf_unchecked};
use crate::error::{domain, ExgdError, Result};
use crate::estimation::fit_mle;
use crate::optim::{nelder_mead_restarted, newton_polish, SimplexOptions};
use crate::params::Parameters;
use crate::sample::Sample;
use crate::special::{gamma_p, log_gamma_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelName {
    ED,
    LD,
    RD,
    XGD,
    GED,
    WD,
    GD,
    EXGD,
}

impl ModelName {
    /// All models in the customary table order.
    pub const ALL: [ModelName; 8] = [
        ModelName::ED,
        ModelName::LD,
        ModelName::RD,
        ModelName::XGD,
        ModelName::GED,
        ModelName::WD,
        ModelName::GD,
        ModelName::EXGD,
    ];

    /// Number of free parameters.
    pub fn k(&self) -> usize {
        match self {
            ModelName::ED | ModelName::LD | ModelName::RD | ModelName::XGD => 1,
            ModelName::GED | ModelName::WD | ModelName::GD | ModelName::EXGD => 2,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelName::ED => "ED",
            ModelName::LD => "LD",
            ModelName::RD => "RD",
            ModelName::XGD => "XGD",
            ModelName::GED => "GED",
            ModelName::WD => "WD",
            ModelName::GD => "GD",
            ModelName::EXGD => "EXGD",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            ModelName::ED => "exponential",
            ModelName::LD => "Lindley",
            ModelName::RD => "Rayleigh",
            ModelName::XGD => "xgamma",
            ModelName::GED => "generalized exponential",
            ModelName::WD => "Weibull",
            ModelName::GD => "gamma",
            ModelName::EXGD => "exponentiated xgamma",
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ModelName::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown model {s:?}"))
    }
}

/// A model together with a parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: ModelName,
    pub params: Vec<f64>,
}

impl ModelSpec {
    pub fn new(name: ModelName, params: Vec<f64>) -> Result<Self> {
        check_params(name, &params)?;
        Ok(Self { name, params })
    }

    pub fn k(&self) -> usize {
        self.name.k()
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        model_pdf(self.name, &self.params, x)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        model_cdf(self.name, &self.params, x)
    }
}

/// Maximum-likelihood fit of a comparison model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFit {
    pub spec: ModelSpec,
    pub neg_log_lik: f64,
    pub converged: bool,
    pub iterations: usize,
}

fn check_params(name: ModelName, params: &[f64]) -> Result<()> {
    if params.len() != name.k() {
        return domain(format!(
            "{name} takes {} parameter(s), got {}",
            name.k(),
            params.len()
        ));
    }
    if let Some(bad) = params.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return domain(format!("{name} parameters must be positive and finite, got {bad}"));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("x must be finite and nonnegative, got {x}"));
    }
    Ok(())
}

/// ln f(x) without argument checks; x > 0.
fn ln_pdf(name: ModelName, q: &[f64], x: f64) -> f64 {
    match name {
        ModelName::ED => q[0].ln() - q[0] * x,
        ModelName::LD => 2.0 * q[0].ln() - q[0].ln_1p() + x.ln_1p() - q[0] * x,
        ModelName::RD => (2.0 * q[0] * x).ln() - q[0] * x * x,
        ModelName::XGD => {
            let t = q[0];
            2.0 * t.ln() - t.ln_1p() + (0.5 * t * x * x).ln_1p() - t * x
        }
        ModelName::GED => {
            let (a, l) = (q[0], q[1]);
            (a * l).ln() + (a - 1.0) * (-(-l * x).exp_m1()).ln() - l * x
        }
        ModelName::WD => {
            let (k, l) = (q[0], q[1]);
            (k * l).ln() + (k - 1.0) * (l * x).ln() - (l * x).powf(k)
        }
        ModelName::GD => {
            let (k, r) = (q[0], q[1]);
            k * r.ln() + (k - 1.0) * x.ln() - r * x - log_gamma_unchecked(k)
        }
        ModelName::EXGD => match Parameters::new(q[0], q[1]) {
            Ok(p) => ln_pdf_unchecked(x, &p),
            Err(_) => f64::NAN,
        },
    }
}

/// Density of `name` at `x`.
pub fn model_pdf(name: ModelName, params: &[f64], x: f64) -> Result<f64> {
    check_params(name, params)?;
    check_x(x)?;
    if x == 0.0 {
        // limits at the origin
        return Ok(match name {
            ModelName::ED => params[0],
            ModelName::LD | ModelName::XGD => params[0] * params[0] / (1.0 + params[0]),
            ModelName::RD => 0.0,
            _ => {
                let shape = params[0];
                if shape > 1.0 {
                    0.0
                } else if shape < 1.0 {
                    return Err(ExgdError::Pole { alpha: shape });
                } else {
                    match name {
                        ModelName::EXGD => params[1] * params[1] / (1.0 + params[1]),
                        _ => params[1],
                    }
                }
            }
        });
    }
    Ok(ln_pdf(name, params, x).exp())
}

fn cdf_unchecked_model(name: ModelName, q: &[f64], x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    match name {
        ModelName::ED => -(-q[0] * x).exp_m1(),
        ModelName::LD => {
            let t = q[0];
            1.0 - (1.0 + t * x / (1.0 + t)) * (-t * x).exp()
        }
        ModelName::RD => -(-q[0] * x * x).exp_m1(),
        ModelName::XGD => base_cdf(x, q[0]),
        ModelName::GED => (-(-q[1] * x).exp_m1()).powf(q[0]),
        ModelName::WD => -(-(q[1] * x).powf(q[0])).exp_m1(),
        ModelName::GD => gamma_p(q[0], q[1] * x).unwrap_or(f64::NAN),
        ModelName::EXGD => match Parameters::new(q[0], q[1]) {
            Ok(p) => cdf_unchecked(x, &p),
            Err(_) => f64::NAN,
        },
    }
}

/// Distribution function of `name` at `x`.
pub fn model_cdf(name: ModelName, params: &[f64], x: f64) -> Result<f64> {
    check_params(name, params)?;
    check_x(x)?;
    Ok(cdf_unchecked_model(name, params, x))
}

/// Log-likelihood of `params` for model `name`.
pub fn model_log_likelihood(name: ModelName, params: &[f64], s: &Sample) -> Result<f64> {
    check_params(name, params)?;
    Ok(s.values().iter().map(|&x| ln_pdf(name, params, x)).sum())
}

/// Maximum-likelihood fit. ED, RD and LD have closed-form estimators; the
/// remaining models are fitted numerically.
pub fn model_fit_mle(name: ModelName, s: &Sample) -> Result<ModelFit> {
    if s.n() < 2 {
        return domain(format!("at least 2 observations are required, got {}", s.n()));
    }
    let n = s.n() as f64;
    let closed = match name {
        ModelName::ED => Some(n / s.values().iter().sum::<f64>()),
        ModelName::RD => Some(n / s.values().iter().map(|x| x * x).sum::<f64>()),
        ModelName::LD => {
            let m = s.mean();
            Some((-(m - 1.0) + ((m - 1.0).powi(2) + 8.0 * m).sqrt()) / (2.0 * m))
        }
        _ => None,
    };
    match (name, closed) {
        (_, Some(theta)) => {
            let params = vec![theta];
            Ok(ModelFit {
                neg_log_lik: -model_log_likelihood(name, &params, s)?,
                spec: ModelSpec { name, params },
                converged: true,
                iterations: 0,
            })
        }
        (ModelName::EXGD, None) => {
            let f = fit_mle(s, None)?;
            Ok(ModelFit {
                spec: ModelSpec {
                    name,
                    params: vec![f.params.alpha(), f.params.theta()],
                },
                neg_log_lik: f.neg_log_lik,
                converged: f.converged,
                iterations: f.iterations,
            })
        }
        _ => model_fit_mle_numeric(name, s),
    }
}

/// Maximum-likelihood fit by simplex search over the log-parameters,
/// whatever the model; used directly for models without a closed form.
pub fn model_fit_mle_numeric(name: ModelName, s: &Sample) -> Result<ModelFit> {
    if s.n() < 2 {
        return domain(format!("at least 2 observations are required, got {}", s.n()));
    }
    let nll = |z: &[f64]| -> f64 {
        let q: Vec<f64> = z.iter().map(|v| v.exp()).collect();
        if q.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return f64::INFINITY;
        }
        -s.values().iter().map(|&x| ln_pdf(name, &q, x)).sum::<f64>()
    };
    let starts = starting_points(name, s);
    let opts = SimplexOptions::default();
    let best = starts
        .iter()
        .map(|z0| nelder_mead_restarted(nll, z0, &opts))
        .min_by(|a, b| a.fx.total_cmp(&b.fx))
        .ok_or_else(|| ExgdError::Convergence("no starting point".into()))?;
    let grad = |z: &[f64]| {
        const H: f64 = 1e-4;
        let g: Vec<f64> = (0..z.len())
            .map(|j| {
                let mut zp = z.to_vec();
                let mut zm = z.to_vec();
                zp[j] += H;
                zm[j] -= H;
                (nll(&zp) - nll(&zm)) / (2.0 * H)
            })
            .collect();
        g.iter().all(|v| v.is_finite()).then_some(g)
    };
    let z = newton_polish(nll, grad, &best.x, 4);
    let params: Vec<f64> = z.iter().map(|v| v.exp()).collect();
    check_params(name, &params)?;
    Ok(ModelFit {
        neg_log_lik: nll(&z),
        spec: ModelSpec { name, params },
        converged: best.converged,
        iterations: best.iterations,
    })
}

/// Log-parameter starting points from the sample mean.
fn starting_points(name: ModelName, s: &Sample) -> Vec<Vec<f64>> {
    let mean = s.mean();
    let rate = (1.0 / mean).ln();
    match name {
        ModelName::ED => vec![vec![rate]],
        ModelName::LD | ModelName::XGD => vec![vec![(2.0 / mean).ln()], vec![rate]],
        ModelName::RD => {
            let m2 = s.values().iter().map(|x| x * x).sum::<f64>() / s.n() as f64;
            vec![vec![(1.0 / m2).ln()]]
        }
        ModelName::GED | ModelName::WD | ModelName::GD | ModelName::EXGD => {
            let mut v = Vec::new();
            for shape in [0.3f64, 1.0, 3.0] {
                let scale = match name {
                    ModelName::GD => shape / mean,
                    ModelName::EXGD => 3.0 * shape.sqrt() / mean,
                    _ => 1.0 / mean,
                };
                v.push(vec![shape.ln(), scale.ln()]);
            }
            v
        }
    }
}
