//! Corpus → series → taxonomy, as run by the `ingest` and `analyze` commands.

use std::path::{Path, PathBuf};

use log::warn;
use rayon::prelude::*;

use crate::afa::{estimate_hurst, AfaConfig};
use crate::classify::{
    emit_report, plot_data, tabulate, write_plot_csv, BehaviorCell, ReportFormat, SkippedKeyword,
    Summary,
};
use crate::config::{ReportFormatSetting, RunConfig};
use crate::error::{Error, Result};
use crate::granger::{bidirectional, GrangerConfig};
use crate::ingest::{
    read_corpus, read_keywords, write_series_csv, BinGrid, CorpusIndex, Discourse,
    FrequencySeries,
};

/// Article and advertisement series of one keyword on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KeywordSeries {
    pub keyword: String,
    pub articles: FrequencySeries,
    pub ads: FrequencySeries,
}

#[derive(Debug, Clone)]
pub struct IngestOutput {
    pub n_documents: usize,
    pub degenerate_documents: usize,
    pub grid: BinGrid,
    pub series: Vec<KeywordSeries>,
}

/// Reads the configured corpus and keyword list and bins every keyword.
pub fn ingest(cfg: &RunConfig) -> Result<IngestOutput> {
    let docs = read_corpus(cfg.corpus_path()?, cfg.date_range())?;
    let specs = read_keywords(cfg.keywords_path()?)?;
    if specs.is_empty() {
        return Err(Error::Config("keyword list is empty".into()));
    }
    let index = CorpusIndex::new(&docs);
    for d in Discourse::ALL {
        if index.usable_documents(d) == 0 {
            return Err(Error::EmptyDiscourse(d.to_string()));
        }
    }
    let grid = BinGrid::covering(&index, cfg.bin_width_days)?;
    let series = specs
        .par_iter()
        .map(|spec| {
            Ok(KeywordSeries {
                keyword: spec.canonical().to_string(),
                articles: index.series(&grid, spec, Discourse::Article, cfg.aggregation)?,
                ads: index.series(&grid, spec, Discourse::Advertisement, cfg.aggregation)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IngestOutput {
        n_documents: docs.len(),
        degenerate_documents: index.degenerate_documents(),
        grid,
        series,
    })
}

/// Writes `series/<keyword>_<discourse>.csv` under `dir`.
pub fn write_series(dir: &Path, out: &IngestOutput) -> Result<Vec<PathBuf>> {
    let dir = dir.join("series");
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut paths = Vec::new();
    for ks in &out.series {
        for s in [&ks.articles, &ks.ads] {
            let p = dir.join(format!("{}_{}.csv", ks.keyword, s.discourse));
            write_series_csv(&p, s)?;
            paths.push(p);
        }
    }
    Ok(paths)
}

/// AFA on both discourses and bidirectional Granger with ads as x.
pub fn analyze_pair(
    keyword: &str,
    articles: &[f64],
    ads: &[f64],
    afa: &AfaConfig,
    granger: &GrangerConfig,
) -> Result<BehaviorCell> {
    let h_art = estimate_hurst(articles, afa)?;
    let h_ads = estimate_hurst(ads, afa)?;
    let g = bidirectional(ads, articles, granger)?;
    Ok(BehaviorCell::new(keyword, g, &h_art, &h_ads, granger.alpha))
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub cells: Vec<BehaviorCell>,
    pub summary: Summary,
}

/// Classifies every keyword. Keywords whose series are numerically
/// degenerate are skipped with a warning and listed in the summary.
pub fn analyze(series: &[KeywordSeries], cfg: &RunConfig) -> Result<Analysis> {
    let granger = cfg.granger_config();
    let outcomes: Vec<Result<BehaviorCell>> = series
        .par_iter()
        .map(|ks| {
            analyze_pair(&ks.keyword, ks.articles.values(), ks.ads.values(), &cfg.afa, &granger)
        })
        .collect();
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for (ks, outcome) in series.iter().zip(outcomes) {
        match outcome {
            Ok(cell) => cells.push(cell),
            Err(e) if e.exit_code() == 3 => {
                warn!("skipping `{}`: {e}", ks.keyword);
                skipped.push(SkippedKeyword::new(&ks.keyword, e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    if cells.is_empty() {
        return Err(Error::Degenerate("every keyword was skipped".into()));
    }
    let summary = tabulate(&cells, skipped)?;
    Ok(Analysis { cells, summary })
}

/// Full `analyze` run: reports into `dir`, plot tables into `dir/plots`.
pub fn run_analysis(cfg: &RunConfig, dir: &Path) -> Result<Analysis> {
    let input = ingest(cfg)?;
    let analysis = analyze(&input.series, cfg)?;
    let format = match cfg.report_format {
        ReportFormatSetting::Csv => ReportFormat::Csv,
        ReportFormatSetting::Json => ReportFormat::Json,
    };
    emit_report(dir, &analysis.summary, &analysis.cells, format)?;
    write_plots(dir, &input.series, cfg.smoothing_window())?;
    Ok(analysis)
}

/// Writes `plots/<keyword>.csv` redraw tables.
pub fn write_plots(dir: &Path, series: &[KeywordSeries], window: usize) -> Result<Vec<PathBuf>> {
    let dir = dir.join("plots");
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    series
        .iter()
        .map(|ks| {
            let table = plot_data(&ks.articles, &ks.ads, window.min(ks.articles.len()))?;
            let p = dir.join(format!("{}.csv", ks.keyword));
            write_plot_csv(&p, &table)?;
            Ok(p)
        })
        .collect()
}
