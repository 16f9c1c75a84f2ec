//! Causality × persistence taxonomy of keywords.

mod plot;
mod report;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::afa::AfaResult;
use crate::error::{Error, Result};
use crate::granger::GrangerResult;

pub use plot::{plot_data, window_bins, write_plot_csv, PlotRow, PlotTable};
pub use report::{emit_report, round_sig, ReportFormat, ReportRow, REPORT_HEADER};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Direction of Granger causality between advertisements (x) and articles (y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalClass {
    /// Ads → articles only.
    Shaping,
    /// Articles → ads only.
    Reflecting,
    /// Both directions.
    Complex,
    None,
}

impl CausalClass {
    pub const ALL: [CausalClass; 4] = [
        CausalClass::Shaping,
        CausalClass::Reflecting,
        CausalClass::Complex,
        CausalClass::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CausalClass::Shaping => "shaping",
            CausalClass::Reflecting => "reflecting",
            CausalClass::Complex => "complex",
            CausalClass::None => "none",
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `p_xy` is ads → articles, `p_yx` articles → ads.
pub fn causal_class(p_xy: f64, p_yx: f64, alpha: f64) -> CausalClass {
    match (p_xy < alpha, p_yx < alpha) {
        (true, false) => CausalClass::Shaping,
        (false, true) => CausalClass::Reflecting,
        (true, true) => CausalClass::Complex,
        (false, false) => CausalClass::None,
    }
}

/// Memory regime read off the Hurst exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PersistenceClass {
    AntiPersistent,
    ShortRange,
    Persistent,
    NonStationary,
}

impl PersistenceClass {
    pub const ALL: [PersistenceClass; 4] = [
        PersistenceClass::AntiPersistent,
        PersistenceClass::ShortRange,
        PersistenceClass::Persistent,
        PersistenceClass::NonStationary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PersistenceClass::AntiPersistent => "anti_persistent",
            PersistenceClass::ShortRange => "short_range",
            PersistenceClass::Persistent => "persistent",
            PersistenceClass::NonStationary => "non_stationary",
        }
    }

    /// Persistent or non-stationary: long memory in the broad sense.
    pub fn has_memory(self) -> bool {
        matches!(self, PersistenceClass::Persistent | PersistenceClass::NonStationary)
    }
}

impl fmt::Display for PersistenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies H by its 95% interval `H ± 1.96 se`.
pub fn persistence_from(hurst: f64, stderr: f64) -> PersistenceClass {
    let lo = hurst - Z_95 * stderr;
    let hi = hurst + Z_95 * stderr;
    if lo <= 0.5 && 0.5 <= hi {
        PersistenceClass::ShortRange
    } else if hurst < 0.5 {
        PersistenceClass::AntiPersistent
    } else if lo > 1.0 {
        PersistenceClass::NonStationary
    } else {
        PersistenceClass::Persistent
    }
}

pub fn persistence_class(res: &AfaResult) -> PersistenceClass {
    persistence_from(res.hurst, res.slope_stderr)
}

/// One keyword's position in the taxonomy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BehaviorCell {
    pub keyword: String,
    pub causal: CausalClass,
    pub persistence_articles: PersistenceClass,
    pub persistence_ads: PersistenceClass,
    pub h_articles: f64,
    pub h_articles_se: f64,
    pub h_ads: f64,
    pub h_ads_se: f64,
    /// x = advertisements, y = articles.
    pub granger: GrangerResult,
}

impl BehaviorCell {
    pub fn new(
        keyword: impl Into<String>,
        granger: GrangerResult,
        articles: &AfaResult,
        ads: &AfaResult,
        alpha: f64,
    ) -> Self {
        BehaviorCell {
            keyword: keyword.into(),
            causal: causal_class(granger.p_xy, granger.p_yx, alpha),
            persistence_articles: persistence_class(articles),
            persistence_ads: persistence_class(ads),
            h_articles: articles.hurst,
            h_articles_se: articles.slope_stderr,
            h_ads: ads.hurst,
            h_ads_se: ads.slope_stderr,
            granger,
        }
    }
}

/// Table-1 grouping by where a keyword shows memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PersistenceGroup {
    ArticlesOnly,
    AdsAndArticles,
    AdsOnly,
    None,
}

impl PersistenceGroup {
    pub fn of(cell: &BehaviorCell) -> Self {
        match (
            cell.persistence_articles.has_memory(),
            cell.persistence_ads.has_memory(),
        ) {
            (true, false) => PersistenceGroup::ArticlesOnly,
            (true, true) => PersistenceGroup::AdsAndArticles,
            (false, true) => PersistenceGroup::AdsOnly,
            (false, false) => PersistenceGroup::None,
        }
    }
}

/// Count of keywords per Table-1 group.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Groups {
    pub articles_only: usize,
    pub ads_and_articles: usize,
    pub ads_only: usize,
    pub none: usize,
}

/// Keyword left out of the analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedKeyword {
    pub keyword: String,
    pub status: String,
    pub reason: String,
}

impl SkippedKeyword {
    pub fn new(keyword: impl Into<String>, reason: impl Into<String>) -> Self {
        SkippedKeyword {
            keyword: keyword.into(),
            status: "skipped".into(),
            reason: reason.into(),
        }
    }
}

/// Counts keyed `causal -> persistence -> n`.
pub type CrossTab = BTreeMap<String, BTreeMap<String, usize>>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub n_keywords: usize,
    pub pct_shaping: f64,
    pub pct_reflecting: f64,
    pub pct_complex: f64,
    pub pct_none: f64,
    pub mean_h_art: f64,
    pub mean_h_ads: f64,
    /// `mean_h_ads - mean_h_art`.
    pub delta_h: f64,
    pub table1_groups: Table1Groups,
    /// Causal class × article persistence, all 16 cells.
    pub crosstab_articles: CrossTab,
    /// Causal class × advertisement persistence, all 16 cells.
    pub crosstab_ads: CrossTab,
    /// Directed classes × {anti-persistent, short-range, long-range} in
    /// articles, non-stationary counted as long-range.
    pub nine_cell: CrossTab,
    pub skipped: Vec<SkippedKeyword>,
}

fn crosstab<F>(cells: &[BehaviorCell], causal: &[CausalClass], cols: &[&str], col_of: F) -> CrossTab
where
    F: Fn(&BehaviorCell) -> &'static str,
{
    let mut tab = CrossTab::new();
    for c in causal {
        let row = tab.entry(c.as_str().to_string()).or_default();
        for col in cols {
            row.insert(col.to_string(), 0);
        }
    }
    for cell in cells {
        if let Some(row) = tab.get_mut(cell.causal.as_str()) {
            *row.get_mut(col_of(cell)).expect("column listed") += 1;
        }
    }
    tab
}

/// Aggregates classified keywords into percentages, means and cross-tabs.
pub fn tabulate(cells: &[BehaviorCell], skipped: Vec<SkippedKeyword>) -> Result<Summary> {
    if cells.is_empty() {
        return Err(Error::InvalidArgument("no classified keywords to tabulate".into()));
    }
    let n = cells.len() as f64;
    let pct = |class: CausalClass| {
        100.0 * cells.iter().filter(|c| c.causal == class).count() as f64 / n
    };
    let mean_h_art = cells.iter().map(|c| c.h_articles).sum::<f64>() / n;
    let mean_h_ads = cells.iter().map(|c| c.h_ads).sum::<f64>() / n;

    let mut groups = Table1Groups::default();
    for cell in cells {
        match PersistenceGroup::of(cell) {
            PersistenceGroup::ArticlesOnly => groups.articles_only += 1,
            PersistenceGroup::AdsAndArticles => groups.ads_and_articles += 1,
            PersistenceGroup::AdsOnly => groups.ads_only += 1,
            PersistenceGroup::None => groups.none += 1,
        }
    }

    let four: Vec<&str> = PersistenceClass::ALL.iter().map(|p| p.as_str()).collect();
    let directed = [CausalClass::Shaping, CausalClass::Reflecting, CausalClass::Complex];
    let regime = |p: PersistenceClass| match p {
        PersistenceClass::AntiPersistent => "anti_persistent",
        PersistenceClass::ShortRange => "short_range",
        PersistenceClass::Persistent | PersistenceClass::NonStationary => "long_range",
    };

    Ok(Summary {
        n_keywords: cells.len(),
        pct_shaping: pct(CausalClass::Shaping),
        pct_reflecting: pct(CausalClass::Reflecting),
        pct_complex: pct(CausalClass::Complex),
        pct_none: pct(CausalClass::None),
        mean_h_art,
        mean_h_ads,
        delta_h: mean_h_ads - mean_h_art,
        table1_groups: groups,
        crosstab_articles: crosstab(cells, &CausalClass::ALL, &four, |c| {
            c.persistence_articles.as_str()
        }),
        crosstab_ads: crosstab(cells, &CausalClass::ALL, &four, |c| c.persistence_ads.as_str()),
        nine_cell: crosstab(
            cells,
            &directed,
            &["anti_persistent", "short_range", "long_range"],
            |c| regime(c.persistence_articles),
        ),
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(super) fn cell(keyword: &str, p_xy: f64, p_yx: f64, h_art: f64, h_ads: f64) -> BehaviorCell {
        let afa = |h: f64| AfaResult {
            window_sizes: vec![5, 9, 11],
            log2_w: vec![],
            log2_f: vec![],
            hurst: h,
            intercept: 0.0,
            slope_stderr: 0.02,
            r_squared: 0.99,
        };
        let g = GrangerResult {
            lag: 1,
            f_xy: 1.0,
            p_xy,
            f_yx: 1.0,
            p_yx,
            n_obs: 100,
        };
        BehaviorCell::new(keyword, g, &afa(h_art), &afa(h_ads), 0.005)
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_class(0.001, 0.8, 0.005), CausalClass::Shaping);
        assert_eq!(causal_class(0.8, 0.001, 0.005), CausalClass::Reflecting);
        assert_eq!(causal_class(0.001, 0.001, 0.005), CausalClass::Complex);
        assert_eq!(causal_class(0.5, 0.5, 0.005), CausalClass::None);
        assert_eq!(causal_class(0.005, 0.8, 0.005), CausalClass::None);
    }

    #[test]
    fn persistence_examples() {
        assert_eq!(persistence_from(0.89, 0.02), PersistenceClass::Persistent);
        assert_eq!(persistence_from(1.1, 0.03), PersistenceClass::NonStationary);
        assert_eq!(persistence_from(0.5, 0.0), PersistenceClass::ShortRange);
        assert_eq!(persistence_from(0.5, 1.0), PersistenceClass::ShortRange);
        assert_eq!(persistence_from(0.3, 0.02), PersistenceClass::AntiPersistent);
        // interval straddles 1 but not 0.5
        assert_eq!(persistence_from(1.02, 0.05), PersistenceClass::Persistent);
    }

    #[test]
    fn one_cell_per_class_gives_quarters() {
        let cells = vec![
            cell("a", 0.001, 0.9, 0.9, 0.9),
            cell("b", 0.9, 0.001, 0.9, 0.5),
            cell("c", 0.001, 0.001, 0.5, 0.9),
            cell("d", 0.9, 0.9, 0.5, 0.5),
        ];
        let s = tabulate(&cells, vec![]).unwrap();
        for p in [s.pct_shaping, s.pct_reflecting, s.pct_complex, s.pct_none] {
            assert_eq!(p, 25.0);
        }
        assert_eq!(
            s.table1_groups,
            Table1Groups {
                articles_only: 1,
                ads_and_articles: 1,
                ads_only: 1,
                none: 1
            }
        );
        assert_eq!(s.crosstab_articles["shaping"]["persistent"], 1);
        assert_eq!(s.nine_cell.len(), 3);
        assert_eq!(s.nine_cell["complex"]["short_range"], 1);
    }

    #[test]
    fn table1_placement() {
        let art_only = cell("k", 0.5, 0.5, 0.89, 0.5);
        assert_eq!(PersistenceGroup::of(&art_only), PersistenceGroup::ArticlesOnly);
        let both = cell("k", 0.5, 0.5, 0.89, 0.9);
        assert_eq!(PersistenceGroup::of(&both), PersistenceGroup::AdsAndArticles);
    }

    #[test]
    fn empty_is_error() {
        assert!(tabulate(&[], vec![]).is_err());
    }

    proptest! {
        #[test]
        fn percentages_sum_to_100(ps in proptest::collection::vec((0.0f64..0.02, 0.0f64..0.02), 1..60)) {
            let cells: Vec<_> = ps.iter().map(|(a, b)| cell("k", *a, *b, 0.9, 1.1)).collect();
            let s = tabulate(&cells, vec![]).unwrap();
            let total = s.pct_shaping + s.pct_reflecting + s.pct_complex + s.pct_none;
            prop_assert!((total - 100.0).abs() < 1e-9);
        }

        #[test]
        fn smaller_p_xy_keeps_xy_detection(p in 0.0f64..1.0, q in 0.0f64..1.0, p_yx in 0.0f64..1.0) {
            let (lo, hi) = if p < q { (p, q) } else { (q, p) };
            let detects = |c| matches!(c, CausalClass::Shaping | CausalClass::Complex);
            if detects(causal_class(hi, p_yx, 0.005)) {
                prop_assert!(detects(causal_class(lo, p_yx, 0.005)));
            }
        }

        #[test]
        fn straddling_half_is_short_range(h in 0.0f64..1.5, se in 0.0f64..0.5) {
            if h - Z_95 * se <= 0.5 && 0.5 <= h + Z_95 * se {
                prop_assert_eq!(persistence_from(h, se), PersistenceClass::ShortRange);
            }
        }
    }
}
