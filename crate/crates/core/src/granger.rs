//! Bidirectional Granger causality between two aligned series.
//!
//! For "x Granger-causes y" two nested regressions of `y_t` are compared:
//! the restricted model on an intercept and `k` own lags, and the full model
//! that adds `k` lags of `x`. The F statistic on the drop in residual sum of
//! squares tests that every lagged-x coefficient is zero.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ols::ols;
use crate::stats::dist::f_sf;

pub use crate::ols::OlsFit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LagSelection {
    Fixed(usize),
    Bic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrangerConfig {
    pub max_lag: usize,
    pub lag_selection: LagSelection,
    pub alpha: f64,
    /// Apply lag-1 differencing to both series before testing.
    pub difference: bool,
}

impl Default for GrangerConfig {
    fn default() -> Self {
        GrangerConfig {
            max_lag: 8,
            lag_selection: LagSelection::Bic,
            alpha: 0.005,
            difference: true,
        }
    }
}

impl GrangerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_lag == 0 {
            return Err(Error::Config("max_lag must be at least 1".into()));
        }
        if let LagSelection::Fixed(0) = self.lag_selection {
            return Err(Error::Config("fixed lag must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        Ok(())
    }
}

/// One-direction test outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrangerTest {
    pub f: f64,
    pub p: f64,
    pub df_num: usize,
    pub df_den: usize,
    pub rss_restricted: f64,
    pub rss_full: f64,
    pub n_obs: usize,
}

/// Both directions at a common lag. `xy` is "x Granger-causes y".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrangerResult {
    pub lag: usize,
    pub f_xy: f64,
    pub p_xy: f64,
    pub f_yx: f64,
    pub p_yx: f64,
    pub n_obs: usize,
}

impl GrangerResult {
    /// The same result with the roles of x and y exchanged.
    pub fn swapped(&self) -> GrangerResult {
        GrangerResult {
            f_xy: self.f_yx,
            p_xy: self.p_yx,
            f_yx: self.f_xy,
            p_yx: self.p_xy,
            ..*self
        }
    }
}

/// `d(i) = x(i + lag) - x(i)`.
pub fn difference(series: &[f64], lag: usize) -> Result<Vec<f64>> {
    if lag == 0 {
        return Err(Error::InvalidArgument("difference lag must be positive".into()));
    }
    if series.len() <= lag {
        return Err(Error::SeriesTooShort {
            needed: lag + 1,
            got: series.len(),
        });
    }
    Ok(series
        .iter()
        .skip(lag)
        .zip(series)
        .map(|(later, earlier)| later - earlier)
        .collect())
}

/// Design rows for targets `start..len`: intercept, `k` lags of `target`,
/// then (if given) `k` lags of `other`.
fn lagged_design(target: &[f64], other: Option<&[f64]>, k: usize, start: usize) -> DMatrix<f64> {
    let rows = target.len() - start;
    let cols = 1 + k + if other.is_some() { k } else { 0 };
    DMatrix::from_fn(rows, cols, |r, c| {
        let t = start + r;
        match c {
            0 => 1.0,
            c if c <= k => target[t - c],
            c => other.expect("column implies regressor")[t - (c - k)],
        }
    })
}

fn check_lengths(x: &[f64], y: &[f64], k: usize) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("lag must be at least 1".into()));
    }
    // T - k observations must exceed the 2k + 1 full-model parameters
    let needed = 3 * k + 2;
    if x.len() < needed {
        return Err(Error::SeriesTooShort {
            needed,
            got: x.len(),
        });
    }
    Ok(())
}

/// F-test of "x Granger-causes y" with `k` lags of each series.
pub fn granger_test(x: &[f64], y: &[f64], k: usize) -> Result<GrangerTest> {
    check_lengths(x, y, k)?;
    let target = &y[k..];
    let restricted = ols(&lagged_design(y, None, k, k), target)?;
    let full = ols(&lagged_design(y, Some(x), k, k), target)?;

    let n_obs = y.len() - k;
    let df_den = n_obs - 2 * k - 1;
    let rss_r = restricted.rss;
    let rss_f = full.rss.min(rss_r);
    let drop = rss_r - rss_f;
    let mean = target.iter().sum::<f64>() / n_obs as f64;
    let tss: f64 = target.iter().map(|v| (v - mean).powi(2)).sum();
    let negligible = 1e-14 * tss;

    let (f, p) = if rss_f <= negligible {
        if drop <= negligible {
            (0.0, 1.0)
        } else {
            (f64::INFINITY, 0.0)
        }
    } else {
        let f = (drop / k as f64) / (rss_f / df_den as f64);
        (f, f_sf(f, k as f64, df_den as f64))
    };
    Ok(GrangerTest {
        f,
        p,
        df_num: k,
        df_den,
        rss_restricted: rss_r,
        rss_full: rss_f,
        n_obs,
    })
}

/// BIC of the full model for `y` at lag `k`, fitted on targets
/// `start..len`.
fn full_model_bic(x: &[f64], y: &[f64], k: usize, start: usize) -> Result<f64> {
    let fit = ols(&lagged_design(y, Some(x), k, start), &y[start..])?;
    let n = (y.len() - start) as f64;
    let params = (1 + 2 * k) as f64;
    Ok(n * (fit.rss / n).ln() + params * n.ln())
}

fn check_max_lag(x: &[f64], y: &[f64], max_lag: usize) -> Result<()> {
    check_lengths(x, y, max_lag)
}

/// Lag in `1..=max_lag` minimizing the BIC of the full model for `y`, all
/// candidates scored on the same observations.
pub fn select_lag(x: &[f64], y: &[f64], max_lag: usize) -> Result<usize> {
    check_max_lag(x, y, max_lag)?;
    let mut best = (1, f64::INFINITY);
    for k in 1..=max_lag {
        let bic = full_model_bic(x, y, k, max_lag)?;
        if bic < best.1 {
            best = (k, bic);
        }
    }
    Ok(best.0)
}

/// Lag minimizing the summed BIC of both full-model equations. Symmetric in
/// its arguments, so swapping x and y selects the same lag.
pub fn select_lag_joint(x: &[f64], y: &[f64], max_lag: usize) -> Result<usize> {
    check_max_lag(x, y, max_lag)?;
    let mut best = (1, f64::INFINITY);
    for k in 1..=max_lag {
        let bic = full_model_bic(x, y, k, max_lag)? + full_model_bic(y, x, k, max_lag)?;
        if bic < best.1 {
            best = (k, bic);
        }
    }
    Ok(best.0)
}

/// Differences both series once (unless disabled in `cfg`), picks the lag
/// and tests both directions.
pub fn bidirectional(x: &[f64], y: &[f64], cfg: &GrangerConfig) -> Result<GrangerResult> {
    cfg.validate()?;
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let (dx, dy) = if cfg.difference {
        (difference(x, 1)?, difference(y, 1)?)
    } else {
        (x.to_vec(), y.to_vec())
    };
    let lag = match cfg.lag_selection {
        LagSelection::Fixed(k) => k,
        LagSelection::Bic => select_lag_joint(&dx, &dy, cfg.max_lag)?,
    };
    let xy = granger_test(&dx, &dy, lag)?;
    let yx = granger_test(&dy, &dx, lag)?;
    Ok(GrangerResult {
        lag,
        f_xy: xy.f,
        p_xy: xy.p,
        f_yx: yx.f,
        p_yx: yx.p,
        n_obs: xy.n_obs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{gen_var, VarSpec};
    use proptest::prelude::*;

    fn var(a_xy: f64, a_yx: f64, n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
        gen_var(&VarSpec {
            n,
            a_xx: 0.4,
            a_yy: 0.3,
            a_xy,
            a_yx,
            noise_sd: 1.0,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn differencing() {
        assert_eq!(difference(&[1.0, 2.0, 3.0, 4.0], 1).unwrap(), vec![1.0, 1.0, 1.0]);
        assert_eq!(difference(&[5.0; 6], 1).unwrap(), vec![0.0; 5]);
        assert_eq!(difference(&[1.0, 4.0, 9.0, 16.0], 2).unwrap(), vec![8.0, 12.0]);
        assert!(difference(&[1.0], 1).is_err());
        assert!(difference(&[1.0, 2.0], 0).is_err());
    }

    #[test]
    fn design_layout() {
        let y = [1.0, 2.0, 3.0, 4.0, 5.0];
        let x = [10.0, 20.0, 30.0, 40.0, 50.0];
        let d = lagged_design(&y, Some(&x), 2, 2);
        assert_eq!(d.nrows(), 3);
        assert_eq!(d.row(0).iter().copied().collect::<Vec<_>>(), vec![1.0, 2.0, 1.0, 20.0, 10.0]);
    }

    #[test]
    fn perfect_lagged_copy() {
        let (x, _) = var(0.0, 0.0, 200, 1);
        let mut y = vec![0.0];
        y.extend_from_slice(&x[..x.len() - 1]);
        let t = granger_test(&x, &y, 1).unwrap();
        assert!(t.f > 1e10);
        assert!(t.p < 1e-12);
    }

    #[test]
    fn too_short() {
        let x = [1.0, 2.0, 0.5, 3.0, 1.0];
        assert!(matches!(granger_test(&x, &x, 2), Err(Error::SeriesTooShort { .. })));
        assert!(granger_test(&x, &x[..4], 1).is_err());
    }

    #[test]
    fn identical_series_surface_rank_error() {
        let (x, _) = var(0.0, 0.0, 100, 2);
        let res = bidirectional(&x, &x, &GrangerConfig::default());
        assert!(matches!(res, Err(Error::RankDeficient { .. })), "{res:?}");
    }

    #[test]
    fn single_candidate_lag() {
        let (x, y) = var(0.5, 0.0, 100, 3);
        assert_eq!(select_lag(&x, &y, 1).unwrap(), 1);
    }

    #[test]
    fn coupled_direction_detected() {
        let (x, y) = var(0.5, 0.0, 500, 4);
        let res = bidirectional(&x, &y, &GrangerConfig::default()).unwrap();
        assert!(res.p_xy < 0.005, "{res:?}");
        assert_eq!(res.n_obs, 499 - res.lag);
    }

    #[test]
    fn var1_selects_lag_one() {
        let mut modal = [0usize; 9];
        for seed in 0..60 {
            let (x, y) = var(0.5, 0.0, 400, 100 + seed);
            modal[select_lag(&x, &y, 8).unwrap()] += 1;
        }
        let best = (1..9).max_by_key(|&k| modal[k]).unwrap();
        assert_eq!(best, 1, "{modal:?}");
    }

    #[test]
    fn var3_selects_lag_three() {
        let mut modal = [0usize; 9];
        for seed in 0..60 {
            let mut rng = crate::synth::rng(500 + seed);
            let e = crate::synth::standard_normals(&mut rng, 2 * 900);
            let (mut x, mut y) = (vec![0.0; 900], vec![0.0; 900]);
            for t in 3..900 {
                x[t] = 0.3 * x[t - 1] + e[2 * t];
                y[t] = 0.2 * y[t - 1] + 0.8 * x[t - 3] + e[2 * t + 1];
            }
            modal[select_lag(&x[500..], &y[500..], 8).unwrap()] += 1;
        }
        let best = (1..9).max_by_key(|&k| modal[k]).unwrap();
        assert_eq!(best, 3, "{modal:?}");
    }

    #[test]
    fn fixed_lag_respected() {
        let (x, y) = var(0.5, 0.0, 300, 5);
        let cfg = GrangerConfig {
            lag_selection: LagSelection::Fixed(4),
            ..GrangerConfig::default()
        };
        assert_eq!(bidirectional(&x, &y, &cfg).unwrap().lag, 4);
        let bad = GrangerConfig {
            alpha: 1.5,
            ..GrangerConfig::default()
        };
        assert!(bidirectional(&x, &y, &bad).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn swapping_arguments_transposes(seed in 0u64..10_000, a_xy in 0.0f64..0.6) {
            let (x, y) = var(a_xy, 0.1, 120, seed);
            let cfg = GrangerConfig::default();
            let ab = bidirectional(&x, &y, &cfg).unwrap();
            let ba = bidirectional(&y, &x, &cfg).unwrap();
            prop_assert_eq!(ab, ba.swapped());
        }

        #[test]
        fn affine_invariance(seed in 0u64..10_000, a in 0.5f64..20.0, b in -5.0f64..5.0,
                             c in -20.0f64..-0.5, d in -5.0f64..5.0, k in 1usize..4) {
            let (x, y) = var(0.3, 0.0, 150, seed);
            let t0 = granger_test(&x, &y, k).unwrap();
            let xa: Vec<f64> = x.iter().map(|v| a * v + b).collect();
            let yc: Vec<f64> = y.iter().map(|v| c * v + d).collect();
            let t1 = granger_test(&xa, &yc, k).unwrap();
            prop_assert!((t0.f - t1.f).abs() <= 1e-8 * (1.0 + t0.f));
            prop_assert!((t0.p - t1.p).abs() <= 1e-9);
        }

        #[test]
        fn rss_nesting(seed in 0u64..10_000, k in 1usize..5) {
            let (x, y) = var(0.0, 0.0, 80, seed);
            let t = granger_test(&x, &y, k).unwrap();
            prop_assert!(t.rss_full <= t.rss_restricted);
            prop_assert!(t.f >= 0.0);
            prop_assert!((0.0..=1.0).contains(&t.p));
        }
    }
}
