mod common;

use common::*;
use exgd::model_selection::{divergences, GASTRIC_REFERENCE};
use exgd::*;

#[test]
fn comparator_densities_normalized_at_reference_estimates() {
    let scale = gastric_cancer().mean();
    for r in GASTRIC_REFERENCE.iter() {
        let v = exp_sinh(|x| model_pdf(r.model, r.params, x).unwrap(), 0.0, scale);
        assert!((v - 1.0).abs() < 1e-8, "{}: {v}", r.model);
    }
}

#[test]
fn cdfs_are_monotone_and_pdfs_nonnegative() {
    let s = gastric_cancer();
    let table = compare_models(&s, &ModelName::ALL);
    for row in &table.rows {
        let mut prev = 0.0;
        for k in 0..200 {
            let x = 20.0 * k as f64;
            let f = model_cdf(row.model, &row.params, x).unwrap();
            assert!(f >= prev - 1e-15, "{} at {x}", row.model);
            prev = f;
            if x > 0.0 {
                assert!(model_pdf(row.model, &row.params, x).unwrap() >= 0.0);
            }
        }
    }
}

#[test]
fn xgamma_model_matches_exgd_at_unit_shape() {
    let p = Parameters::new(1.0, 0.7).unwrap();
    for k in 0..40 {
        let x = 0.25 * k as f64;
        let a = model_cdf(ModelName::XGD, &[0.7], x).unwrap();
        assert!((a - exgd_cdf(x, &p).unwrap()).abs() < 1e-15);
        assert!((a - ref_xgamma_cdf(x, 0.7)).abs() < 1e-12);
    }
}

#[test]
fn closed_form_estimators() {
    let s = gastric_cancer();
    let ed = model_fit_mle(ModelName::ED, &s).unwrap();
    assert!((ed.spec.params[0] * s.mean() - 1.0).abs() < 1e-15);
    assert!((ed.neg_log_lik - 340.9940).abs() < 5e-3);
    for m in [ModelName::ED, ModelName::RD, ModelName::LD] {
        let closed = model_fit_mle(m, &s).unwrap();
        let numeric = model_fit_mle_numeric(m, &s).unwrap();
        assert!(rel_err(numeric.spec.params[0], closed.spec.params[0]) < 1e-8, "{m}");
    }
}

#[test]
fn gamma_fit_on_gastric_data() {
    let s = gastric_cancer();
    let gd = model_fit_mle(ModelName::GD, &s).unwrap();
    assert!(gd.converged);
    assert!(rel_err(gd.spec.params[0], 1.2822) < 1e-2);
    assert!(rel_err(gd.spec.params[1], 0.00178) < 1e-2);
    assert!((gd.neg_log_lik - 340.1868).abs() < 5e-3);
}

#[test]
fn reference_criteria_arithmetic() {
    for r in GASTRIC_REFERENCE.iter() {
        let c = criteria(r.neg_log_lik, r.model.k(), 45).unwrap();
        assert!((c.aic - r.aic).abs() < 2e-3, "{} AIC", r.model);
        assert!((c.caic - r.caic).abs() < 2e-3, "{} CAIC", r.model);
        assert!((c.bic - r.bic).abs() < 2e-3, "{} BIC", r.model);
        if r.model != ModelName::RD {
            assert!((c.hqic - r.hqic).abs() < 2e-3, "{} HQIC", r.model);
        }
    }
}

#[test]
fn exgd_ranks_first_by_aic() {
    let s = gastric_cancer();
    let table = compare_models(&s, &ModelName::ALL);
    assert_eq!(table.best_by(Criterion::Aic), Some(ModelName::EXGD));
    assert_eq!(table.rows.len(), 8);
    assert!(table.rows.iter().all(|r| r.error.is_none()));
}

#[test]
fn criteria_orderings_agree_for_equal_k() {
    let s = gastric_cancer();
    let table = compare_models(&s, &[ModelName::GED, ModelName::WD, ModelName::GD, ModelName::EXGD]);
    let by_nll: Vec<_> = table.sorted_by(Criterion::NegLogLik).iter().map(|r| r.model).collect();
    for c in [Criterion::Aic, Criterion::Caic, Criterion::Hqic, Criterion::Bic] {
        let by_c: Vec<_> = table.sorted_by(c).iter().map(|r| r.model).collect();
        assert_eq!(by_nll, by_c);
    }
}

#[test]
fn single_model_table() {
    let s = gastric_cancer();
    let table = compare_models(&s, &[ModelName::ED]);
    assert_eq!(table.best_by(Criterion::Ks), Some(ModelName::ED));
}

#[test]
fn ks_invariant_under_monotone_transform() {
    let q = Parameters::new(2.0, 1.0).unwrap();
    let s = sample(200, &q, 12).unwrap();
    let d1 = ks_statistic(&s, |x| exgd_cdf(x, &q).unwrap());
    let logged = Sample::new(s.values().iter().map(|x| x.ln() + 10.0).collect(), "t").unwrap();
    let d2 = ks_statistic(&logged, |y| exgd_cdf((y - 10.0).exp(), &q).unwrap());
    assert!((d1 - d2).abs() < 1e-12);
}

#[test]
fn divergence_report_flags_typos() {
    let s = gastric_cancer();
    let table = compare_models(&s, &ModelName::ALL);
    let div = divergences(&table, &GASTRIC_REFERENCE);
    assert!(div
        .iter()
        .any(|d| d.model == ModelName::RD && d.column == "HQIC" && d.suspected_typo));
    assert!(div
        .iter()
        .any(|d| d.model == ModelName::WD && d.column == "KS" && d.suspected_typo));
}
