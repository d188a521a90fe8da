//! Random variate generation.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Open01};

use crate::error::{domain, ExgdError, Result};
use crate::params::Parameters;
use crate::quantile::quantile;
use crate::sample::Sample;

/// `n` EXGD variates by inversion of the CDF at uniform draws.
/// Deterministic for a given seed.
pub fn sample(n: usize, p: &Parameters, seed: u64) -> Result<Sample> {
    if n == 0 {
        return domain("sample size must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..n)
        .map(|_| {
            let u: f64 = Open01.sample(&mut rng);
            quantile(u, p).map(|x| x.max(f64::MIN_POSITIVE))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sample::from_positive(values, format!("exgd({}, {}) seed {seed}", p.alpha(), p.theta())))
}

/// Two-component gamma mixture: with probability θ/(1+θ) a Gamma(α, θ)
/// draw, otherwise a Gamma(α + 2, θ) draw (shape, rate).
///
/// At α = 1 this is exactly the xgamma law. For other α it is *not* the
/// exponentiated law (`G^α` is not a mixture of these two gammas), so it is
/// kept only for comparison; use [`sample`] for EXGD variates.
pub fn sample_paper_alg(n: usize, p: &Parameters, seed: u64) -> Result<Sample> {
    if n == 0 {
        return domain("sample size must be at least 1");
    }
    let (a, t) = (p.alpha(), p.theta());
    let gamma = |shape: f64| {
        Gamma::new(shape, 1.0 / t).map_err(|e| ExgdError::Domain(e.to_string()))
    };
    let v_dist = gamma(a)?;
    let w_dist = gamma(a + 2.0)?;
    let weight = t / (1.0 + t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            let v = v_dist.sample(&mut rng);
            let w = w_dist.sample(&mut rng);
            let x = if u <= weight { v } else { w };
            x.max(f64::MIN_POSITIVE)
        })
        .collect();
    Ok(Sample::from_positive(values, format!("gamma mixture({a}, {t}) seed {seed}")))
}
