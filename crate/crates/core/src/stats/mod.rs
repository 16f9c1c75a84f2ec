//! Supporting statistics: correlation with Fisher-Z averaging, one-sample
//! t-test, Shapiro-Wilk, and the regression of H on discourse.

pub mod dist;
mod shapiro;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::Discourse;
use crate::ols::ols;

pub use shapiro::{shapiro_wilk, ShapiroWilk};

/// Pearson product-moment correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correlation {
    pub r: f64,
    /// Two-sided p-value from the t transform with n - 2 df.
    pub p: f64,
    pub n: usize,
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<Correlation> {
    let n = x.len();
    if n != y.len() {
        return Err(Error::InvalidArgument(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if n < 3 {
        return Err(Error::SeriesTooShort { needed: 3, got: n });
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxx += da * da;
        syy += db * db;
        sxy += da * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate("correlation of a constant series".into()));
    }
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    let df = (n - 2) as f64;
    let p = if r.abs() == 1.0 {
        0.0
    } else {
        dist::t_two_sided(r * (df / (1.0 - r * r)).sqrt(), df)
    };
    Ok(Correlation { r, p, n })
}

pub fn fisher_z(r: f64) -> Result<f64> {
    if !(r.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "Fisher Z needs |r| < 1, got {r}"
        )));
    }
    // atanh(-r) is not bit-exactly -atanh(r)
    Ok(r.signum() * r.abs().atanh())
}

pub fn fisher_z_inv(z: f64) -> f64 {
    z.tanh()
}

/// Average of correlations taken in Fisher-Z space.
pub fn mean_r(rs: &[f64]) -> Result<f64> {
    if rs.is_empty() {
        return Err(Error::InvalidArgument("no correlations to average".into()));
    }
    let zs = rs.iter().map(|&r| fisher_z(r)).collect::<Result<Vec<_>>>()?;
    Ok(fisher_z_inv(zs.iter().sum::<f64>() / zs.len() as f64))
}

/// Per-keyword correlations and their Fisher-Z average.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationSummary {
    pub pairwise_r: Vec<(String, Correlation)>,
    pub mean_r: f64,
    pub prop_significant: f64,
}

/// Summarizes correlations; a correlation counts as significant when its p
/// is below `alpha`. Perfect correlations (|r| = 1) cannot be averaged and
/// are rejected.
pub fn correlation_summary(
    pairwise: Vec<(String, Correlation)>,
    alpha: f64,
) -> Result<CorrelationSummary> {
    let rs: Vec<f64> = pairwise.iter().map(|(_, c)| c.r).collect();
    let mean = mean_r(&rs)?;
    let significant = pairwise.iter().filter(|(_, c)| c.p < alpha).count();
    Ok(CorrelationSummary {
        prop_significant: significant as f64 / pairwise.len() as f64,
        pairwise_r: pairwise,
        mean_r: mean,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TTest {
    pub t: f64,
    pub df: usize,
    pub p: f64,
}

/// Two-sided one-sample t-test of `values` against `mu0`.
pub fn one_sample_t(values: &[f64], mu0: f64) -> Result<TTest> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "one-sample t-test needs n >= 2, got {n}"
        )));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    if var == 0.0 {
        return Err(Error::Degenerate("zero sample variance".into()));
    }
    let t = (mean - mu0) / (var / n as f64).sqrt();
    let df = n - 1;
    Ok(TTest {
        t,
        df,
        p: dist::t_two_sided(t, df as f64),
    })
}

/// Regression of H on a discourse dummy (article = 1, advertisement is the
/// baseline), compared against the constant-only model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupRegressionResult {
    /// Advertisement mean.
    pub intercept: f64,
    /// Article mean minus advertisement mean.
    pub beta_group: f64,
    pub se_beta: f64,
    pub t_stat: f64,
    /// F statistic against the constant model, df (1, n - 2).
    pub f_stat: f64,
    pub df_resid: usize,
    /// Likelihood-ratio statistic n ln(RSS_0 / RSS_1), 1 df.
    pub chi2_vs_constant: f64,
    pub p: f64,
    pub p_chi2: f64,
}

pub fn group_h_regression(h: &[f64], group: &[Discourse]) -> Result<GroupRegressionResult> {
    let n = h.len();
    if n != group.len() {
        return Err(Error::InvalidArgument(format!(
            "{} H values but {} group labels",
            n,
            group.len()
        )));
    }
    let n_art = group.iter().filter(|g| **g == Discourse::Article).count();
    if n_art == 0 || n_art == n {
        return Err(Error::InvalidArgument(
            "both article and advertisement groups must be non-empty".into(),
        ));
    }
    if n < 3 {
        return Err(Error::SeriesTooShort { needed: 3, got: n });
    }
    let design = DMatrix::from_fn(n, 2, |i, j| match (j, group[i]) {
        (0, _) => 1.0,
        (_, Discourse::Article) => 1.0,
        (_, Discourse::Advertisement) => 0.0,
    });
    let full = ols(&design, h)?;
    let mean = h.iter().sum::<f64>() / n as f64;
    let rss0: f64 = h.iter().map(|v| (v - mean).powi(2)).sum();
    let se = full.std_errors()?;
    let se_beta = se[1];
    if !(se_beta > 0.0) {
        return Err(Error::Degenerate(
            "zero residual variance in group regression".into(),
        ));
    }
    let beta = full.coefficients[1];
    let df_resid = n - 2;
    let t_stat = beta / se_beta;
    let f_stat = ((rss0 - full.rss).max(0.0)) / (full.rss / df_resid as f64);
    let chi2 = n as f64 * (rss0 / full.rss).ln();
    Ok(GroupRegressionResult {
        intercept: full.coefficients[0],
        beta_group: beta,
        se_beta,
        t_stat,
        f_stat,
        df_resid,
        chi2_vs_constant: chi2,
        p: dist::f_sf(f_stat, 1.0, df_resid as f64),
        p_chi2: dist::chi2_sf(chi2, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pearson_examples() {
        let x = [1.0, 2.0, 4.0, 3.0, 7.0];
        assert!((pearson(&x, &x).unwrap().r - 1.0).abs() < 1e-15);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson(&x, &neg).unwrap().r + 1.0).abs() < 1e-15);
        let r = pearson(&[1.0, 0.0, -1.0, 0.0], &[0.0, 1.0, 0.0, -1.0]).unwrap();
        assert_eq!(r.r, 0.0);
        assert!((r.p - 1.0).abs() < 1e-12);
        assert!(pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(pearson(&[1.0, 2.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn fisher_examples() {
        assert_eq!(fisher_z(0.0).unwrap(), 0.0);
        assert!((fisher_z(0.5).unwrap() - 0.5493061443340549).abs() < 1e-15);
        assert!(fisher_z(1.0).is_err());
        assert!(fisher_z(-1.2).is_err());
    }

    #[test]
    fn mean_r_examples() {
        assert!((mean_r(&[0.3]).unwrap() - 0.3).abs() < 1e-15);
        assert!(mean_r(&[0.45, -0.45]).unwrap().abs() < 1e-15);
        // tanh((atanh .2 + atanh .6) / 2)
        assert!((mean_r(&[0.2, 0.6]).unwrap() - 0.420_204_102_886_728_75).abs() < 1e-14);
        assert!(mean_r(&[]).is_err());
    }

    #[test]
    fn t_test_examples() {
        let t = one_sample_t(&[0.6, 0.7, 0.8], 0.5).unwrap();
        assert!((t.t - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(t.df, 2);
        let t = one_sample_t(&[0.4, 0.5, 0.6], 0.5).unwrap();
        assert!(t.t.abs() < 1e-12);
        assert!(one_sample_t(&[0.5], 0.5).is_err());
        assert!(one_sample_t(&[0.5, 0.5], 0.0).is_err());
    }

    fn groups(n_each: usize) -> Vec<Discourse> {
        let mut g = vec![Discourse::Article; n_each];
        g.extend(vec![Discourse::Advertisement; n_each]);
        g
    }

    #[test]
    fn group_regression_recovers_shift() {
        let ads = [1.0, 1.2, 0.9, 1.15, 1.05, 0.95];
        let delta = -0.25;
        let mut h: Vec<f64> = ads.iter().map(|v| v + delta).collect();
        h.extend_from_slice(&ads);
        let res = group_h_regression(&h, &groups(6)).unwrap();
        assert!((res.beta_group - delta).abs() < 1e-12);
        assert!((res.f_stat - res.t_stat * res.t_stat).abs() < 1e-9 * res.f_stat);

        let mut same = ads.to_vec();
        same.extend_from_slice(&ads);
        let res = group_h_regression(&same, &groups(6)).unwrap();
        assert!(res.beta_group.abs() < 1e-12);
        assert!(res.p > 0.999);
    }

    #[test]
    fn group_regression_needs_both_groups() {
        assert!(group_h_regression(&[1.0, 2.0, 3.0], &[Discourse::Article; 3]).is_err());
    }

    proptest! {
        #[test]
        fn fisher_round_trip_and_oddness(r in -0.999f64..0.999) {
            let z = fisher_z(r).unwrap();
            prop_assert!((fisher_z_inv(z) - r).abs() < 1e-12);
            prop_assert_eq!(fisher_z(-r).unwrap(), -z);
        }

        #[test]
        fn pearson_affine_invariant(
            pts in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 4..30),
            a in 0.1f64..10.0, b in -10.0f64..10.0,
        ) {
            let x: Vec<f64> = pts.iter().map(|p| p.0).collect();
            let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
            if let Ok(r0) = pearson(&x, &y) {
                let xa: Vec<f64> = x.iter().map(|v| a * v + b).collect();
                let r1 = pearson(&xa, &y).unwrap();
                prop_assert!((r0.r - r1.r).abs() < 1e-9);
            }
        }

        #[test]
        fn f_equals_t_squared(h in proptest::collection::vec(0.0f64..2.0, 8..40)) {
            let n = h.len();
            let g: Vec<Discourse> = (0..n).map(|i| if i % 2 == 0 { Discourse::Article } else { Discourse::Advertisement }).collect();
            if let Ok(res) = group_h_regression(&h, &g) {
                prop_assert!((res.f_stat - res.t_stat.powi(2)).abs() <= 1e-8 * (1.0 + res.f_stat));
            }
        }
    }
}
