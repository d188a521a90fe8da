//! The exponentiated xgamma (EXGD) lifetime distribution.
//!
//! The crate covers the distribution itself (densities, distribution
//! functions, hazard, series expansions for moments and partial moments,
//! quantiles, order statistics, inequality curves and sampling), five
//! estimators for its two parameters, seven baseline lifetime models, and the
//! information criteria used to compare them.

// `!(x >= 0.0)` is used on purpose so that NaN is rejected too; tabulated
// coefficients keep their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod comparators;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod model_selection;
pub mod moments;
pub mod order_stats;
mod optim;
pub mod params;
mod quadrature;
pub mod quantile;
pub mod reliability;
pub mod sample;
pub mod sampling;
pub mod series;
pub mod special;

pub use distribution::{
    exgd_cdf, exgd_hazard, exgd_ln_pdf, exgd_pdf, exgd_survival, xgamma_cdf, xgamma_pdf,
};
pub use error::{ExgdError, Result};
pub use params::Parameters;
pub use series::{
    cdf_power_integral, cdf_power_integral_x2, cdf_power_tail, cdf_power_tail_x2, SeriesConfig,
};
pub use moments::{
    cgf, conditional_moment, mean_deviation, mgf, moments, partial_moment_tail, raw_moment, Moments,
};
pub use order_stats::{
    order_stat_cdf, order_stat_cdf_direct, order_stat_pdf, order_stat_pdf_direct,
};
pub use quantile::{bowley_skewness, moors_kurtosis, quantile};
pub use reliability::{bonferroni_curve, bonferroni_index, gini_index, lorenz_curve};
pub use estimation::{
    fit, fit_cme, fit_lse, fit_mle, fit_mpse, fit_wlse, log_likelihood, plugin_hazard,
    plugin_survival, score, spacings, FitResult, Method,
};
pub use sample::{gastric_cancer, DataError, Sample};
pub use sampling::{sample, sample_paper_alg};
pub use comparators::{
    model_cdf, model_fit_mle, model_fit_mle_numeric, model_pdf, ModelFit, ModelName, ModelSpec,
};
pub use model_selection::{
    compare_models, criteria, ks_components, ks_statistic, ComparisonRow, ComparisonTable,
    Criteria, Criterion,
};
