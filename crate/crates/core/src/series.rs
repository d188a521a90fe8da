//! Series expansions for integrals of powers of the xgamma CDF.
//!
//! For `a > 0`, `b > 0`, `δ > 0`, `c ≥ 0` and `t ≥ 0` these compute
//!
//! ```text
//! T(a, b, c, δ, t) = ∫ₜ^∞ x^c e^{−δx} G_b(x)^{a−1} dx,
//! G_b(x) = 1 − (1 + b + bx + b²x²/2) e^{−bx} / (1 + b),
//! ```
//!
//! by expanding `G^{a−1} = Σ_i C(a−1, i) (−1)^i (1 − G)^i` and integrating
//! term by term:
//!
//! ```text
//! T = Σ_i Σ_{j≤i} Σ_{k≤j} Σ_{l≤k} C(a−1,i) C(i,j) C(j,k) C(k,l)
//!       (−1)^i b^j (b/2)^l Γ(c+k+l+1, t(bi+δ)) / [(1+b)^i (bi+δ)^{c+k+l+1}].
//! ```
//!
//! The three inner sums enumerate the monomials of
//! `(1 + b + bx + b²x²/2)^i`, so for each outer index they are evaluated as
//! the coefficients of that polynomial, kept in log space and updated by one
//! polynomial multiplication per step. Every inner contribution is positive,
//! so no cancellation happens inside an outer term.
//!
//! The outer sum stops once a term falls below `rel_tol` times the running
//! sum. For integer `a` it terminates exactly after `a` terms. For
//! non-integer `a` and `t = 0` the terms decay only algebraically, like
//! `i^{−(a+c+1)}`; when the term budget runs out the tail is extrapolated
//! from the partial sums with that known exponent (geometric decay
//! `G_b(t)`-rate is used instead when `t > 0`). The extrapolated value is
//! accepted only when two extrapolation orders agree to `sqrt(rel_tol)`;
//! otherwise [`ExgdError::NonConvergence`] is returned.

use crate::distribution::base_survival;
use crate::error::{domain, ExgdError, Result};
use crate::special::{ln_gamma_q, log_add_exp, log_gamma_unchecked};

/// Truncation policy for the outer sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Maximum number of outer terms.
    pub max_terms: usize,
    /// Relative size of the last outer term at which summation stops.
    pub rel_tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            max_terms: 200,
            rel_tol: 1e-12,
        }
    }
}

impl SeriesConfig {
    pub fn new(max_terms: usize, rel_tol: f64) -> Result<Self> {
        let cfg = Self { max_terms, rel_tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return domain("max_terms must be at least 1");
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return domain(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol));
        }
        Ok(())
    }

    /// Agreement required between two tail extrapolations.
    fn extrapolation_tol(&self) -> f64 {
        self.rel_tol.sqrt()
    }
}

/// ∫₀^∞ x^c e^{−δx} G_b(x)^{a−1} dx.
pub fn cdf_power_integral(a: f64, b: f64, c: f64, delta: f64, cfg: &SeriesConfig) -> Result<f64> {
    sum_series(a, b, c, delta, 0.0, cfg)
}

/// [`cdf_power_integral`] with the power of x raised by two.
pub fn cdf_power_integral_x2(a: f64, b: f64, c: f64, delta: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_c(c)?;
    sum_series(a, b, c + 2.0, delta, 0.0, cfg)
}

/// ∫ₜ^∞ x^c e^{−δx} G_b(x)^{a−1} dx.
pub fn cdf_power_tail(
    a: f64,
    b: f64,
    c: f64,
    delta: f64,
    t: f64,
    cfg: &SeriesConfig,
) -> Result<f64> {
    sum_series(a, b, c, delta, t, cfg)
}

/// [`cdf_power_tail`] with the power of x raised by two.
pub fn cdf_power_tail_x2(
    a: f64,
    b: f64,
    c: f64,
    delta: f64,
    t: f64,
    cfg: &SeriesConfig,
) -> Result<f64> {
    check_c(c)?;
    sum_series(a, b, c + 2.0, delta, t, cfg)
}

fn check_c(c: f64) -> Result<()> {
    if !(c >= 0.0) || !c.is_finite() {
        return domain(format!("power c must be finite and nonnegative, got {c}"));
    }
    Ok(())
}

fn check_args(a: f64, b: f64, c: f64, delta: f64, t: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return domain(format!("a must be positive, got {a}"));
    }
    if !(b > 0.0) || !b.is_finite() {
        return domain(format!("b must be positive, got {b}"));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return domain(format!("delta must be positive, got {delta}"));
    }
    check_c(c)?;
    if !(t >= 0.0) || !t.is_finite() {
        return domain(format!("t must be finite and nonnegative, got {t}"));
    }
    Ok(())
}

/// Generates the outer terms of the expansion one index at a time.
pub(crate) struct OuterTerms {
    a: f64,
    b: f64,
    c: f64,
    delta: f64,
    t: f64,
    i: usize,
    /// C(a−1, i)(−1)^i
    coef: f64,
    /// ln of the coefficients of (1 + u/(1+b) + u²/(2(1+b)))^i in u = bx.
    ln_poly: Vec<f64>,
    /// ln Γ(c + m + 1), grown on demand.
    ln_gammas: Vec<f64>,
    ln_step1: f64,
    ln_step2: f64,
}

impl OuterTerms {
    pub(crate) fn new(a: f64, b: f64, c: f64, delta: f64, t: f64) -> Self {
        Self {
            a,
            b,
            c,
            delta,
            t,
            i: 0,
            coef: 1.0,
            ln_poly: vec![0.0],
            ln_gammas: Vec::new(),
            ln_step1: -b.ln_1p(),
            ln_step2: -(2.0 * (1.0 + b)).ln(),
        }
    }

    /// True once every remaining coefficient C(a−1, i) is zero.
    pub(crate) fn exhausted(&self) -> bool {
        self.coef == 0.0
    }

    pub(crate) fn next_term(&mut self) -> Result<f64> {
        let inner = self.inner_sum()?;
        let term = self.coef * inner;
        self.advance();
        Ok(term)
    }

    /// Σ_m q_m b^m Γ(c+m+1, ts) / s^{c+m+1} with s = bi + δ, the (j, k, l)
    /// triple sum grouped by the power m = k + l of x.
    fn inner_sum(&mut self) -> Result<f64> {
        let degree = self.ln_poly.len();
        while self.ln_gammas.len() < degree {
            let m = self.ln_gammas.len() as f64;
            self.ln_gammas.push(log_gamma_unchecked(self.c + m + 1.0));
        }
        let s = self.b * self.i as f64 + self.delta;
        let ln_s = s.ln();
        let ln_b = self.b.ln();
        let z = self.t * s;
        let ln_z = z.ln();

        let mut ln_q = if z > 0.0 { ln_gamma_q(self.c + 1.0, z)? } else { 0.0 };
        let mut logs = Vec::with_capacity(degree);
        for m in 0..degree {
            let mf = m as f64;
            if m > 0 && z > 0.0 {
                // Q(s+1, z) = Q(s, z) + z^s e^{−z} / Γ(s+1), s = c + m
                let shape = self.c + mf;
                ln_q = log_add_exp(ln_q, shape * ln_z - z - self.ln_gammas[m]);
            }
            logs.push(
                self.ln_poly[m] + mf * ln_b + self.ln_gammas[m] + ln_q - (self.c + mf + 1.0) * ln_s,
            );
        }
        let hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi == f64::NEG_INFINITY {
            return Ok(0.0);
        }
        let sum: f64 = logs.iter().map(|l| (l - hi).exp()).sum();
        Ok(hi.exp() * sum)
    }

    fn advance(&mut self) {
        let i = self.i as f64;
        self.coef *= -(self.a - 1.0 - i) / (i + 1.0);
        let n = self.ln_poly.len();
        let mut next = vec![f64::NEG_INFINITY; n + 2];
        for (m, &lq) in self.ln_poly.iter().enumerate() {
            next[m] = log_add_exp(next[m], lq);
            next[m + 1] = log_add_exp(next[m + 1], lq + self.ln_step1);
            next[m + 2] = log_add_exp(next[m + 2], lq + self.ln_step2);
        }
        self.ln_poly = next;
        self.i += 1;
    }
}

fn sum_series(a: f64, b: f64, c: f64, delta: f64, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_args(a, b, c, delta, t)?;
    cfg.validate()?;

    let mut terms = OuterTerms::new(a, b, c, delta, t);
    let mut partial = Vec::with_capacity(cfg.max_terms);
    let mut sum = 0.0;
    for _ in 0..cfg.max_terms {
        if terms.exhausted() {
            return Ok(sum);
        }
        let term = terms.next_term()?;
        sum += term;
        partial.push(sum);
        if term.abs() <= cfg.rel_tol * sum.abs() {
            return Ok(sum);
        }
    }
    if terms.exhausted() {
        return Ok(sum);
    }

    let tol = cfg.extrapolation_tol();
    let power = TailModel::Power { exponent: a + c + 1.0 };
    let candidates: Vec<(f64, f64)> = if t == 0.0 {
        extrapolate(&partial, power).into_iter().collect()
    } else {
        let geometric = TailModel::Geometric {
            ratio: base_survival(t, b),
            exponent: a + 1.0,
        };
        [extrapolate(&partial, geometric), extrapolate(&partial, power)]
            .into_iter()
            .flatten()
            .collect()
    };
    let best = candidates
        .into_iter()
        .min_by(|x, y| x.1.total_cmp(&y.1));
    match best {
        Some((value, err)) if err <= tol => Ok(value),
        Some((_, err)) => Err(ExgdError::NonConvergence {
            terms: partial.len(),
            rel_error: err,
        }),
        None => Err(ExgdError::NonConvergence {
            terms: partial.len(),
            rel_error: f64::NAN,
        }),
    }
}

/// Asymptotic shape of the outer terms, used to model the truncated tail.
#[derive(Debug, Clone, Copy)]
enum TailModel {
    /// terms ~ i^{−exponent}, tail ~ n^{1−exponent}
    Power { exponent: f64 },
    /// terms ~ ratio^i i^{−exponent}, tail of the same order
    Geometric { ratio: f64, exponent: f64 },
}

impl TailModel {
    fn ln_weight(&self, n: f64) -> f64 {
        match *self {
            TailModel::Power { exponent } => (1.0 - exponent) * n.ln(),
            TailModel::Geometric { ratio, exponent } => n * ratio.ln() - exponent * n.ln(),
        }
    }
}

/// Richardson-type extrapolation of the partial sums `S_n` under
/// `S_n = S − w(n)·Σ_j B_j (N/n)^j`. Returns the order-5 estimate and its
/// relative disagreement with the order-4 estimate.
fn extrapolate(partial: &[f64], model: TailModel) -> Option<(f64, f64)> {
    let n_terms = partial.len();
    let spacing = n_terms / 8;
    if n_terms < 16 {
        return None;
    }
    let big_n = n_terms as f64;
    let ln_w_ref = model.ln_weight(big_n);
    let estimate = |order: usize| -> Option<f64> {
        let rows = order;
        let mut mat = vec![vec![0.0; rows + 1]; rows];
        for (r, row) in mat.iter_mut().enumerate() {
            let n = n_terms - r * spacing;
            let nf = n as f64;
            let w = (model.ln_weight(nf) - ln_w_ref).exp();
            row[0] = 1.0;
            for j in 1..rows {
                row[j] = -w * (big_n / nf).powi(j as i32 - 1);
            }
            row[rows] = partial[n - 1];
        }
        solve_first(mat)
    };
    let lo = estimate(4)?;
    let hi = estimate(5)?;
    if !hi.is_finite() || !lo.is_finite() {
        return None;
    }
    let err = if hi == 0.0 { (hi - lo).abs() } else { ((hi - lo) / hi).abs() };
    Some((hi, err))
}

/// Gaussian elimination with partial pivoting on an augmented matrix;
/// returns the first unknown.
fn solve_first(mut m: Vec<Vec<f64>>) -> Option<f64> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for k in col..=n {
                m[r][k] -= f * m[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = m[r][n];
        for k in r + 1..n {
            acc -= m[r][k] * x[k];
        }
        x[r] = acc / m[r][r];
    }
    Some(x[0])
}
