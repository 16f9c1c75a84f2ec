use std::path::Path;

use chrono::NaiveDate;
use serde::Serialize;

use super::Z_95;
use crate::error::{Error, Result};
use crate::ingest::{centered_window, Discourse, FrequencySeries};

/// Number of bins closest to `years`, at least one.
pub fn window_bins(years: f64, bin_width_days: u32) -> usize {
    ((years * 365.25 / f64::from(bin_width_days)).round() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotRow {
    pub bin_start: NaiveDate,
    pub art_raw: f64,
    pub art_smooth: f64,
    pub art_ci: f64,
    pub ads_raw: f64,
    pub ads_smooth: f64,
    pub ads_ci: f64,
}

/// Redraw data for one keyword panel: raw, smoothed and 95% band half-width
/// per discourse.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotTable {
    pub keyword: String,
    pub window_bins: usize,
    pub rows: Vec<PlotRow>,
}

/// Centered mean and `1.96 * SEM` over each truncated window.
fn smooth_with_band(values: &[f64], window: usize) -> Vec<(f64, f64)> {
    (0..values.len())
        .map(|i| {
            let w = &values[centered_window(values.len(), i, window)];
            let m = w.len() as f64;
            let mean = w.iter().sum::<f64>() / m;
            if w.len() < 2 {
                return (mean, 0.0);
            }
            let var = w.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
            (mean, Z_95 * (var / m).sqrt())
        })
        .collect()
}

pub fn plot_data(
    articles: &FrequencySeries,
    ads: &FrequencySeries,
    window: usize,
) -> Result<PlotTable> {
    if articles.discourse != Discourse::Article || ads.discourse != Discourse::Advertisement {
        return Err(Error::InvalidArgument(
            "plot_data expects an article and an advertisement series".into(),
        ));
    }
    if !articles.same_grid(ads) {
        return Err(Error::InvalidArgument(format!(
            "bin grids of `{}` differ between discourses",
            articles.keyword
        )));
    }
    if window == 0 || window > articles.len() {
        return Err(Error::InvalidArgument(format!(
            "smoothing window {window} outside 1..={}",
            articles.len()
        )));
    }
    let art = smooth_with_band(articles.values(), window);
    let adv = smooth_with_band(ads.values(), window);
    let rows = (0..articles.len())
        .map(|i| PlotRow {
            bin_start: articles.bin_start(i),
            art_raw: articles.values()[i],
            art_smooth: art[i].0,
            art_ci: art[i].1,
            ads_raw: ads.values()[i],
            ads_smooth: adv[i].0,
            ads_ci: adv[i].1,
        })
        .collect();
    Ok(PlotTable {
        keyword: articles.keyword.clone(),
        window_bins: window,
        rows,
    })
}

pub fn write_plot_csv(path: &Path, table: &PlotTable) -> Result<()> {
    let mut out = String::from("bin_start,art_raw,art_smooth,art_ci,ads_raw,ads_smooth,ads_ci\n");
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.bin_start, r.art_raw, r.art_smooth, r.art_ci, r.ads_raw, r.ads_smooth, r.ads_ci
        ));
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}
