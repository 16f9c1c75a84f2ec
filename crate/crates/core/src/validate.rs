//! Synthetic calibration batteries: Hurst recovery and Granger size.

use rayon::prelude::*;
use serde::Serialize;

use crate::afa::{estimate_hurst, AfaConfig};
use crate::error::{Error, Result};
use crate::granger::granger_test;
use crate::stats::dist::normal_quantile;
use crate::synth::{child_seed, cumulative_sum, gen_fgn, gen_var, FgnSpec, VarSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryOutcome {
    pub name: String,
    pub truth: f64,
    pub estimate: f64,
    /// Accepted interval for `estimate`.
    pub lower: f64,
    pub upper: f64,
    pub passed: bool,
    /// Per-replication values behind `estimate`.
    #[serde(skip)]
    pub samples: Vec<f64>,
}

impl BatteryOutcome {
    fn new(name: String, truth: f64, samples: Vec<f64>, lower: f64, upper: f64) -> Self {
        let estimate = samples.iter().sum::<f64>() / samples.len() as f64;
        BatteryOutcome {
            name,
            truth,
            estimate,
            lower,
            upper,
            passed: lower <= estimate && estimate <= upper,
            samples,
        }
    }
}

fn check_reps(reps: usize) -> Result<()> {
    if reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    Ok(())
}

fn hurst_estimates<F>(reps: usize, seed: u64, signal: F) -> Result<Vec<f64>>
where
    F: Fn(u64) -> Result<Vec<f64>> + Sync,
{
    (0..reps as u64)
        .into_par_iter()
        .map(|i| Ok(estimate_hurst(&signal(child_seed(seed, i))?, &AfaConfig::default())?.hurst))
        .collect()
}

/// Mean AFA estimate over `reps` fGn paths, accepted within ±0.05.
pub fn hurst_battery(hurst: f64, n: usize, reps: usize, seed: u64) -> Result<BatteryOutcome> {
    check_reps(reps)?;
    let samples = hurst_estimates(reps, seed, |s| gen_fgn(&FgnSpec { n, hurst, seed: s }))?;
    Ok(BatteryOutcome::new(
        format!("fgn H={hurst} n={n}"),
        hurst,
        samples,
        hurst - 0.05,
        hurst + 0.05,
    ))
}

/// AFA on integrated white noise, where H = 1.5; accepted within ±0.1.
pub fn integrated_noise_battery(n: usize, reps: usize, seed: u64) -> Result<BatteryOutcome> {
    check_reps(reps)?;
    let samples = hurst_estimates(reps, seed, |s| {
        Ok(cumulative_sum(&gen_fgn(&FgnSpec { n, hurst: 0.5, seed: s })?))
    })?;
    Ok(BatteryOutcome::new(
        format!("integrated noise n={n}"),
        1.5,
        samples,
        1.4,
        1.6,
    ))
}

/// Two-sided 99% normal-approximation band of a binomial proportion.
pub fn binomial_band(p: f64, trials: usize) -> (f64, f64) {
    let half = normal_quantile(0.995) * (p * (1.0 - p) / trials as f64).sqrt();
    (p - half, p + half)
}

/// Rejection rate of the lag-2 Granger F-test at `alpha` on independent
/// AR(1) pairs (coefficient 0.5) of length `t`.
pub fn granger_calibration(reps: usize, t: usize, alpha: f64, seed: u64) -> Result<BatteryOutcome> {
    check_reps(reps)?;
    let rejections: Vec<f64> = (0..reps as u64)
        .into_par_iter()
        .map(|i| {
            let (x, y) = gen_var(&VarSpec {
                n: t,
                a_xx: 0.5,
                a_yy: 0.5,
                a_xy: 0.0,
                a_yx: 0.0,
                noise_sd: 1.0,
                seed: child_seed(seed, i),
            })?;
            Ok(f64::from(u8::from(granger_test(&x, &y, 2)?.p < alpha)))
        })
        .collect::<Result<_>>()?;
    let (lower, upper) = binomial_band(alpha, reps);
    Ok(BatteryOutcome::new(
        format!("granger size T={t} reps={reps}"),
        alpha,
        rejections,
        lower,
        upper,
    ))
}

/// The default battery set.
pub fn default_batteries(seed: u64) -> Result<Vec<BatteryOutcome>> {
    let mut out = Vec::new();
    for (i, h) in [0.3, 0.5, 0.7, 0.9].into_iter().enumerate() {
        out.push(hurst_battery(h, 8192, 20, child_seed(seed, i as u64))?);
    }
    out.push(integrated_noise_battery(8192, 20, child_seed(seed, 4))?);
    out.push(granger_calibration(10_000, 400, 0.005, child_seed(seed, 5))?);
    Ok(out)
}

/// Fixed-width text table of outcomes.
pub fn format_table(outcomes: &[BatteryOutcome]) -> String {
    let mut s = format!(
        "{:<28} {:>9} {:>9} {:>21} {}\n",
        "battery", "truth", "estimate", "accepted", "result"
    );
    for o in outcomes {
        s.push_str(&format!(
            "{:<28} {:>9.4} {:>9.4} {:>21} {}\n",
            o.name,
            o.truth,
            o.estimate,
            format!("[{:.4}, {:.4}]", o.lower, o.upper),
            if o.passed { "pass" } else { "FAIL" }
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_reps_rejected() {
        assert!(matches!(hurst_battery(0.7, 1024, 0, 1), Err(Error::InvalidArgument(_))));
        assert!(granger_calibration(0, 400, 0.005, 1).is_err());
    }

    #[test]
    fn band_for_ten_thousand() {
        let (lo, hi) = binomial_band(0.005, 10_000);
        assert!((lo - 0.003183).abs() < 1e-5 && (hi - 0.006817).abs() < 1e-5);
    }

    #[test]
    fn small_battery_runs() {
        let o = hurst_battery(0.5, 2048, 4, 3).unwrap();
        assert_eq!(o.samples.len(), 4);
        assert!(format_table(&[o]).contains("fgn H=0.5"));
    }
}
