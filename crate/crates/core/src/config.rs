//! Run configuration, read from a TOML file with `[afa]` and `[granger]`
//! sections.
//!
//! ```toml
//! corpus_path = "mini_corpus.jsonl"
//! keywords_path = "keywords.csv"
//! bin_width_days = 91
//! alpha = 0.005
//!
//! [granger]
//! max_lag = 8
//! lag_selection = "bic"
//! ```

use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::afa::AfaConfig;
use crate::classify::window_bins;
use crate::error::{Error, Result};
use crate::granger::GrangerConfig;
use crate::ingest::{Aggregation, DateRange};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormatSetting {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus_path: Option<PathBuf>,
    pub keywords_path: Option<PathBuf>,
    pub date_first: Option<NaiveDate>,
    pub date_last: Option<NaiveDate>,
    pub bin_width_days: u32,
    /// Defaults to five years' worth of bins.
    pub smoothing_window_bins: Option<usize>,
    pub alpha: f64,
    pub aggregation: Aggregation,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub report_format: ReportFormatSetting,
    pub afa: AfaConfig,
    pub granger: GrangerConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus_path: None,
            keywords_path: None,
            date_first: None,
            date_last: None,
            bin_width_days: 730,
            smoothing_window_bins: None,
            alpha: 0.005,
            aggregation: Aggregation::PerDocMean,
            seed: 1930,
            output_dir: PathBuf::from("out"),
            report_format: ReportFormatSetting::Csv,
            afa: AfaConfig::default(),
            granger: GrangerConfig::default(),
        }
    }
}

impl RunConfig {
    /// Parses `path`; relative input paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.corpus_path, &mut cfg.keywords_path].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bin_width_days == 0 {
            return Err(Error::Config("bin_width_days must be positive".into()));
        }
        if self.smoothing_window_bins == Some(0) {
            return Err(Error::Config("smoothing_window_bins must be positive".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if let (Some(a), Some(b)) = (self.date_first, self.date_last) {
            if a > b {
                return Err(Error::Config(format!("date_first {a} is after date_last {b}")));
            }
        }
        self.afa.validate()?;
        self.granger_config().validate()
    }

    /// Granger settings with the run-wide alpha.
    pub fn granger_config(&self) -> GrangerConfig {
        GrangerConfig {
            alpha: self.alpha,
            ..self.granger
        }
    }

    pub fn smoothing_window(&self) -> usize {
        self.smoothing_window_bins
            .unwrap_or_else(|| window_bins(5.0, self.bin_width_days))
    }

    pub fn date_range(&self) -> Option<DateRange> {
        match (self.date_first, self.date_last) {
            (None, None) => None,
            (first, last) => Some(DateRange {
                first: first.unwrap_or(NaiveDate::MIN),
                last: last.unwrap_or(NaiveDate::MAX),
            }),
        }
    }

    pub fn corpus_path(&self) -> Result<&Path> {
        self.corpus_path
            .as_deref()
            .ok_or_else(|| Error::Config("no corpus_path configured".into()))
    }

    pub fn keywords_path(&self) -> Result<&Path> {
        self.keywords_path
            .as_deref()
            .ok_or_else(|| Error::Config("no keywords_path configured".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::granger::LagSelection;

    #[test]
    fn defaults() {
        let cfg = RunConfig::from_toml("").unwrap();
        assert_eq!(cfg.bin_width_days, 730);
        assert_eq!(cfg.smoothing_window(), 3);
        assert_eq!(cfg.alpha, 0.005);
        assert_eq!(cfg.granger.max_lag, 8);
    }

    #[test]
    fn sections() {
        let cfg = RunConfig::from_toml(
            r#"
            bin_width_days = 91
            alpha = 0.01
            aggregation = "pooled"
            date_first = "1890-01-01"

            [afa]
            poly_order = 2

            [granger]
            lag_selection = { fixed = 2 }
            "#,
        )
        .unwrap();
        assert_eq!(cfg.aggregation, Aggregation::Pooled);
        assert_eq!(cfg.afa.poly_order, 2);
        assert_eq!(cfg.granger.lag_selection, LagSelection::Fixed(2));
        assert_eq!(cfg.granger_config().alpha, 0.01);
        assert_eq!(cfg.smoothing_window(), 20);
        assert!(cfg.date_range().unwrap().contains(NaiveDate::from_ymd_opt(1990, 1, 1).unwrap()));
    }

    #[test]
    fn rejects_bad_values() {
        for text in ["alpha = 1.5", "bin_width_days = 0", "bogus = 1", "[granger]\nmax_lag = 0"] {
            assert!(matches!(RunConfig::from_toml(text), Err(Error::Config(_))), "{text}");
        }
    }
}
