//! Adaptive Fractal Analysis (AFA).
//!
//! The series is integrated into a random-walk profile. For each window size
//! `w = 2n + 1` the profile is covered by segments of `w` points advancing by
//! `n`, so neighbours share `n + 1` points. An order-`M` least-squares
//! polynomial is fitted in every segment and, inside each overlap, the two
//! fits are blended with weights that fall linearly with distance from the
//! segment centres:
//!
//! ```text
//! v(l) = (1 - (l-1)/n) * y_i(l + n) + ((l-1)/n) * y_{i+1}(l),   l = 1..=n+1
//! ```
//!
//! The blended global trend is continuous, so no jumps appear at segment
//! boundaries. The RMS residual `F(w)` scales as `w^H`; the Hurst exponent is
//! the slope of `log2 F` against `log2 w`.

use log::warn;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shortest admissible series for [`to_random_walk`].
pub const MIN_SERIES_LEN: usize = 8;
/// Smallest window in the default schedule.
pub const MIN_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AfaConfig {
    /// Order of the local polynomial fits.
    pub poly_order: usize,
    /// Odd window sizes. `None` picks [`default_windows`] for the series length.
    pub window_sizes: Option<Vec<usize>>,
    /// Half-open range of window indices used in the slope fit.
    pub fit_range: Option<(usize, usize)>,
}

impl Default for AfaConfig {
    fn default() -> Self {
        AfaConfig {
            poly_order: 1,
            window_sizes: None,
            fit_range: None,
        }
    }
}

impl AfaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.poly_order == 0 {
            return Err(Error::Config("AFA polynomial order must be positive".into()));
        }
        if let Some(ws) = &self.window_sizes {
            check_windows(ws, self.poly_order)?;
        }
        if let Some((a, b)) = self.fit_range {
            if a >= b {
                return Err(Error::Config(format!("empty AFA fit range {a}..{b}")));
            }
        }
        Ok(())
    }
}

fn check_windows(ws: &[usize], poly_order: usize) -> Result<()> {
    let min = (2 * poly_order + 3).max(MIN_WINDOW);
    for &w in ws {
        if w % 2 == 0 || w < min {
            return Err(Error::Config(format!(
                "window {w} must be odd and at least {min}"
            )));
        }
    }
    if ws.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::Config("window sizes must be strictly increasing".into()));
    }
    Ok(())
}

/// Fluctuation scaling summary for one series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AfaResult {
    /// Window sizes that entered the slope fit.
    pub window_sizes: Vec<usize>,
    pub log2_w: Vec<f64>,
    pub log2_f: Vec<f64>,
    pub hurst: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
}

/// Log-uniform odd windows: `2^(k/2)` rounded to the nearest odd integer
/// (ties upward), restricted to `[5, n/4]` and deduplicated.
pub fn default_windows(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for k in 0.. {
        let x = 2f64.powf(k as f64 / 2.0);
        if x > n as f64 {
            break;
        }
        let w = 2 * (x / 2.0).floor() as usize + 1;
        if w >= MIN_WINDOW && 4 * w <= n && out.last() != Some(&w) {
            out.push(w);
        }
    }
    out
}

/// Cumulative sum of deviations from the mean.
pub fn to_random_walk(series: &[f64]) -> Result<Vec<f64>> {
    if series.len() < MIN_SERIES_LEN {
        return Err(Error::SeriesTooShort {
            needed: MIN_SERIES_LEN,
            got: series.len(),
        });
    }
    if series.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("series contains non-finite values".into()));
    }
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    let mut acc = 0.0;
    Ok(series
        .iter()
        .map(|x| {
            acc += x - mean;
            acc
        })
        .collect())
}

/// Orthogonal projector onto polynomials of a fixed order over a fixed
/// number of equally spaced points.
struct PolyProjector {
    q: DMatrix<f64>,
}

impl PolyProjector {
    fn new(len: usize, order: usize) -> Result<Self> {
        let c = (len as f64 - 1.0) / 2.0;
        let h = c.max(1.0);
        let vander = DMatrix::from_fn(len, order + 1, |i, p| ((i as f64 - c) / h).powi(p as i32));
        let qr = vander.qr();
        let r = qr.r();
        if (0..=order).any(|j| r[(j, j)].abs() < 1e-12) {
            return Err(Error::Numerical(format!(
                "cannot fit order {order} polynomial on {len} points"
            )));
        }
        Ok(PolyProjector { q: qr.q() })
    }

    fn fit(&self, y: &[f64]) -> Vec<f64> {
        let cols = self.q.ncols();
        let coef: Vec<f64> = (0..cols)
            .map(|k| self.q.column(k).iter().zip(y).map(|(a, b)| a * b).sum())
            .collect();
        (0..y.len())
            .map(|i| (0..cols).map(|k| self.q[(i, k)] * coef[k]).sum())
            .collect()
    }
}

fn check_window(len: usize, w: usize, poly_order: usize) -> Result<()> {
    if w.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("window {w} is not odd")));
    }
    if w < 2 * poly_order + 3 {
        return Err(Error::InvalidArgument(format!(
            "window {w} too small for order {poly_order} fits (need >= {})",
            2 * poly_order + 3
        )));
    }
    if w > len {
        return Err(Error::InvalidArgument(format!(
            "window {w} exceeds series length {len}"
        )));
    }
    Ok(())
}

/// Overlap blending weights `(w1, w2)` at position `l` (1-based) of an
/// overlap of `n + 1` points.
pub fn blend_weights(l: usize, n: usize) -> (f64, f64) {
    let w2 = (l as f64 - 1.0) / n as f64;
    (1.0 - w2, w2)
}

/// Smooth global trend of `walk` for window `w` and local polynomial order
/// `poly_order`.
///
/// Points past the last full segment are covered by one shorter trailing
/// segment fitted on the points that remain.
pub fn global_trend(walk: &[f64], w: usize, poly_order: usize) -> Result<Vec<f64>> {
    let len = walk.len();
    check_window(len, w, poly_order)?;
    let n = (w - 1) / 2;

    let mut segments: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    while start + w <= len {
        segments.push((start, w));
        start += n;
    }
    let last_full = segments.last().map(|s| s.0).unwrap_or(0);
    if last_full + w < len {
        let s = last_full + n;
        segments.push((s, len - s));
    }

    let full = PolyProjector::new(w, poly_order)?;
    let mut trend = vec![0.0; len];
    let count = segments.len();
    for (k, &(s, seg_len)) in segments.iter().enumerate() {
        let fitted = if seg_len == w {
            full.fit(&walk[s..s + w])
        } else {
            PolyProjector::new(seg_len, poly_order)?.fit(&walk[s..s + seg_len])
        };
        let has_prev = k > 0;
        let has_next = k + 1 < count;
        for (j, f) in fitted.iter().enumerate() {
            // rising ramp over the overlap with the previous segment
            let up = if has_prev && j <= n {
                blend_weights(j + 1, n).1
            } else {
                1.0
            };
            // falling ramp over the overlap with the next segment
            let down = if has_next && j >= n {
                blend_weights(j - n + 1, n).0
            } else {
                1.0
            };
            let weight = up * down;
            if weight != 0.0 {
                trend[s + j] += weight * f;
            }
        }
    }
    Ok(trend)
}

/// RMS deviation of the walk from its global trend, `F(w)`.
pub fn fluctuation(walk: &[f64], w: usize, poly_order: usize) -> Result<f64> {
    let trend = global_trend(walk, w, poly_order)?;
    let ss: f64 = walk
        .iter()
        .zip(&trend)
        .map(|(u, v)| (u - v) * (u - v))
        .sum();
    Ok((ss / walk.len() as f64).sqrt())
}

/// Estimates the Hurst exponent of `series`.
///
/// Windows whose fluctuation vanishes (relative to the walk's own scale) are
/// left out of the fit and logged.
pub fn estimate_hurst(series: &[f64], cfg: &AfaConfig) -> Result<AfaResult> {
    cfg.validate()?;
    let walk = to_random_walk(series)?;
    let len = walk.len();
    let windows = match &cfg.window_sizes {
        Some(ws) => ws.clone(),
        None => default_windows(len),
    };
    if windows.len() < 3 {
        return Err(Error::SeriesTooShort {
            needed: 4 * 9,
            got: len,
        });
    }
    let max_w = *windows.last().expect("non-empty");
    if len < 4 * max_w {
        return Err(Error::SeriesTooShort {
            needed: 4 * max_w,
            got: len,
        });
    }
    let windows: Vec<usize> = match cfg.fit_range {
        Some((a, b)) => {
            if b > windows.len() {
                return Err(Error::Config(format!(
                    "fit range {a}..{b} exceeds {} windows",
                    windows.len()
                )));
            }
            windows[a..b].to_vec()
        }
        None => windows,
    };

    let scale = (walk.iter().map(|u| u * u).sum::<f64>() / len as f64).sqrt();
    let mut used = Vec::new();
    let mut log2_w = Vec::new();
    let mut log2_f = Vec::new();
    for &w in &windows {
        let f = fluctuation(&walk, w, cfg.poly_order)?;
        if !(f > 1e-12 * scale) {
            warn!("AFA: window {w} has zero fluctuation, excluded from fit");
            continue;
        }
        used.push(w);
        log2_w.push((w as f64).log2());
        log2_f.push(f.log2());
    }
    if used.len() < 3 {
        return Err(Error::Degenerate(format!(
            "only {} window(s) with non-zero fluctuation",
            used.len()
        )));
    }
    let line = fit_line(&log2_w, &log2_f);
    Ok(AfaResult {
        window_sizes: used,
        log2_w,
        log2_f,
        hurst: line.slope,
        intercept: line.intercept,
        slope_stderr: line.slope_stderr,
        r_squared: line.r_squared,
    })
}

struct Line {
    slope: f64,
    intercept: f64,
    slope_stderr: f64,
    r_squared: f64,
}

fn fit_line(x: &[f64], y: &[f64]) -> Line {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let slope_stderr = (rss / (m - 2.0) / sxx).sqrt();
    let r_squared = if syy > 0.0 {
        (1.0 - rss / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Line {
        slope,
        intercept,
        slope_stderr,
        r_squared,
    }
}
