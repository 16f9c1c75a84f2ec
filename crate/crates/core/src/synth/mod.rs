//! Seeded ground-truth generators.
//!
//! All randomness comes from [`rng`], a ChaCha20 stream seeded from a single
//! `u64`, so every generated signal is reproducible bit for bit across
//! platforms.

mod corpus;
mod scenario;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use corpus::{MiniCorpusSpec, SyntheticKeyword};
pub use scenario::{CausalScenario, ScenarioParams};

/// Identifier of the pseudo-random generator, recorded in output metadata.
pub const RNG_ALGORITHM: &str = "chacha20/seed_from_u64";

/// Samples discarded before a VAR realisation is recorded.
pub const VAR_BURN_IN: usize = 500;

pub type Rng = ChaCha20Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Derives an independent child seed, e.g. one per trial of a battery.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn standard_normals(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FgnSpec {
    pub n: usize,
    pub hurst: f64,
    pub seed: u64,
}

/// Autocovariance of unit-variance fractional Gaussian noise at lag `k`.
pub fn fgn_autocovariance(k: usize, hurst: f64) -> f64 {
    let k = k as f64;
    let two_h = 2.0 * hurst;
    0.5 * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).abs().powf(two_h))
}

/// Fractional Gaussian noise by circulant embedding (Davies-Harte).
pub fn gen_fgn(spec: &FgnSpec) -> Result<Vec<f64>> {
    let FgnSpec { n, hurst, seed } = *spec;
    if n < 64 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "fGn length must be a power of two >= 64, got {n}"
        )));
    }
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "Hurst exponent must lie in (0, 1), got {hurst}"
        )));
    }
    let m = 2 * n;
    // first row of the 2n circulant: γ(0..=n), γ(n-1..=1)
    let mut row: Vec<Complex<f64>> = (0..=n)
        .chain((1..n).rev())
        .map(|k| Complex::new(fgn_autocovariance(k, hurst), 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut row);
    let max_eig = row.iter().map(|c| c.re).fold(0.0, f64::max);
    let mut eig = Vec::with_capacity(m);
    for c in &row {
        if c.re < -1e-10 * max_eig {
            return Err(Error::Numerical(format!(
                "circulant embedding has negative eigenvalue {}",
                c.re
            )));
        }
        eig.push(c.re.max(0.0));
    }

    let mut rng = rng(seed);
    let z = standard_normals(&mut rng, m);
    let mut w = vec![Complex::new(0.0, 0.0); m];
    let scale = |k: usize| (eig[k] / m as f64).sqrt();
    w[0] = Complex::new(scale(0) * z[0], 0.0);
    w[n] = Complex::new(scale(n) * z[1], 0.0);
    let half = std::f64::consts::FRAC_1_SQRT_2;
    for k in 1..n {
        let c = Complex::new(z[2 * k], z[2 * k + 1]) * (half * scale(k));
        w[k] = c;
        w[m - k] = c.conj();
    }
    fft.process(&mut w);
    Ok(w[..n].iter().map(|c| c.re).collect())
}

/// Bivariate VAR(1) with optional cross-coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarSpec {
    pub n: usize,
    pub a_xx: f64,
    pub a_yy: f64,
    /// Effect of x_{t-1} on y_t.
    pub a_xy: f64,
    /// Effect of y_{t-1} on x_t.
    pub a_yx: f64,
    pub noise_sd: f64,
    pub seed: u64,
}

impl VarSpec {
    /// Largest eigenvalue modulus of the coefficient matrix.
    pub fn spectral_radius(&self) -> f64 {
        // [[a_xx, a_yx], [a_xy, a_yy]]
        let tr = self.a_xx + self.a_yy;
        let det = self.a_xx * self.a_yy - self.a_yx * self.a_xy;
        let disc = tr * tr / 4.0 - det;
        if disc >= 0.0 {
            let s = disc.sqrt();
            (tr / 2.0 + s).abs().max((tr / 2.0 - s).abs())
        } else {
            det.sqrt()
        }
    }
}

pub fn gen_var(spec: &VarSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    let radius = spec.spectral_radius();
    if !(radius < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "VAR coefficients are not stationary (spectral radius {radius:.4})"
        )));
    }
    if !(spec.noise_sd > 0.0) {
        return Err(Error::InvalidArgument("noise_sd must be positive".into()));
    }
    let mut rng = rng(spec.seed);
    let total = spec.n + VAR_BURN_IN;
    let mut xs = Vec::with_capacity(spec.n);
    let mut ys = Vec::with_capacity(spec.n);
    let (mut x, mut y) = (0.0, 0.0);
    for t in 0..total {
        let ex: f64 = StandardNormal.sample(&mut rng);
        let ey: f64 = StandardNormal.sample(&mut rng);
        let nx = spec.a_xx * x + spec.a_yx * y + spec.noise_sd * ex;
        let ny = spec.a_yy * y + spec.a_xy * x + spec.noise_sd * ey;
        x = nx;
        y = ny;
        if t >= VAR_BURN_IN {
            xs.push(x);
            ys.push(y);
        }
    }
    Ok((xs, ys))
}

/// Running sum, e.g. to turn white noise into a random walk.
pub fn cumulative_sum(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn autocov(x: &[f64], lag: usize) -> f64 {
        let n = x.len();
        let m = x.iter().sum::<f64>() / n as f64;
        (0..n - lag).map(|i| (x[i] - m) * (x[i + lag] - m)).sum::<f64>() / n as f64
    }

    #[test]
    fn fgn_is_deterministic() {
        let spec = FgnSpec { n: 256, hurst: 0.7, seed: 9 };
        assert_eq!(gen_fgn(&spec).unwrap(), gen_fgn(&spec).unwrap());
        let other = FgnSpec { seed: 10, ..spec };
        assert_ne!(gen_fgn(&spec).unwrap(), gen_fgn(&other).unwrap());
    }

    #[test]
    fn fgn_rejects_bad_specs() {
        assert!(gen_fgn(&FgnSpec { n: 100, hurst: 0.5, seed: 0 }).is_err());
        assert!(gen_fgn(&FgnSpec { n: 32, hurst: 0.5, seed: 0 }).is_err());
        assert!(gen_fgn(&FgnSpec { n: 64, hurst: 1.0, seed: 0 }).is_err());
        assert!(gen_fgn(&FgnSpec { n: 64, hurst: 0.0, seed: 0 }).is_err());
    }

    #[test]
    fn autocovariance_formula() {
        assert_eq!(fgn_autocovariance(0, 0.8), 1.0);
        assert!(fgn_autocovariance(1, 0.5).abs() < 1e-15);
        assert!(fgn_autocovariance(3, 0.5).abs() < 1e-15);
        // γ(1) = 2^(2H-1) - 1
        assert!((fgn_autocovariance(1, 0.8) - (2f64.powf(0.6) - 1.0)).abs() < 1e-15);
        assert!(fgn_autocovariance(1, 0.3) < 0.0);
    }

    #[test]
    fn white_noise_case_is_uncorrelated() {
        let n = 4096;
        let x = gen_fgn(&FgnSpec { n, hurst: 0.5, seed: 1 }).unwrap();
        let r1 = autocov(&x, 1) / autocov(&x, 0);
        assert!(r1.abs() < 3.0 / (n as f64).sqrt());
    }

    #[test]
    fn sample_autocovariance_matches_theory() {
        // 100 seeds, H = 0.8: mean sample autocovariance at lags 1..10
        let (n, reps, h) = (1024, 100, 0.8);
        let mut acc = [0.0; 11];
        for seed in 0..reps {
            let x = gen_fgn(&FgnSpec { n, hurst: h, seed }).unwrap();
            // known mean 0: use the raw product average
            for (lag, a) in acc.iter_mut().enumerate() {
                *a += (0..n - lag).map(|i| x[i] * x[i + lag]).sum::<f64>() / (n - lag) as f64;
            }
        }
        for (lag, a) in acc.iter().enumerate() {
            let mean = a / reps as f64;
            let truth = fgn_autocovariance(lag, h);
            // long memory inflates the Monte-Carlo spread; 0.06 is > 4 sd here
            assert!((mean - truth).abs() < 0.06, "lag {lag}: {mean} vs {truth}");
        }
    }

    #[test]
    fn fgn_moments() {
        let x = gen_fgn(&FgnSpec { n: 8192, hurst: 0.3, seed: 4 }).unwrap();
        let m = x.iter().sum::<f64>() / x.len() as f64;
        let v = autocov(&x, 0);
        assert!(m.abs() < 0.05);
        assert!((v - 1.0).abs() < 0.08);
    }

    #[test]
    fn var_stationarity_check() {
        let mut spec = VarSpec {
            n: 100,
            a_xx: 0.9,
            a_yy: 0.9,
            a_xy: 0.5,
            a_yx: 0.5,
            noise_sd: 1.0,
            seed: 1,
        };
        assert!(gen_var(&spec).is_err());
        spec.a_yx = 0.0;
        assert!((spec.spectral_radius() - 0.9).abs() < 1e-12);
        let (x, y) = gen_var(&spec).unwrap();
        assert_eq!(x.len(), 100);
        assert_eq!(gen_var(&spec).unwrap(), (x, y));
        // complex eigenvalues: rotation-like matrix
        spec.a_xx = 0.5;
        spec.a_yy = 0.5;
        spec.a_xy = 0.6;
        spec.a_yx = -0.6;
        assert!((spec.spectral_radius() - (0.25f64 + 0.36).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_coupling_is_uncorrelated() {
        let spec = VarSpec {
            n: 5000,
            a_xx: 0.5,
            a_yy: 0.3,
            a_xy: 0.0,
            a_yx: 0.0,
            noise_sd: 1.0,
            seed: 17,
        };
        let (x, y) = gen_var(&spec).unwrap();
        let r = crate::stats::pearson(&x, &y).unwrap().r;
        assert!(r.abs() < 4.0 / (5000f64).sqrt());
    }

    #[test]
    fn coupling_is_recovered_by_least_squares() {
        let spec = VarSpec {
            n: 5000,
            a_xx: 0.3,
            a_yy: 0.2,
            a_xy: 0.8,
            a_yx: 0.0,
            noise_sd: 1.0,
            seed: 23,
        };
        let (x, y) = gen_var(&spec).unwrap();
        let t = x.len() - 1;
        let design = nalgebra::DMatrix::from_fn(t, 3, |i, j| match j {
            0 => 1.0,
            1 => y[i],
            _ => x[i],
        });
        let fit = crate::ols::ols(&design, &y[1..]).unwrap();
        assert!((fit.coefficients[2] - 0.8).abs() < 0.05);
    }

    #[test]
    fn child_seeds_differ() {
        let a: Vec<u64> = (0..100).map(|i| child_seed(7, i)).collect();
        let mut b = a.clone();
        b.sort();
        b.dedup();
        assert_eq!(a.len(), b.len());
    }
}
