use std::collections::HashMap;
use std::ops::Range;

use chrono::NaiveDate;

use super::{tokenize, Aggregation, Discourse, Document, FrequencySeries, KeywordSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct IndexedDocument {
    date: NaiveDate,
    discourse: Discourse,
    n_tokens: usize,
    token_counts: HashMap<String, usize>,
}

/// Tokenized, read-only view of a corpus shared by every keyword.
#[derive(Debug, Clone)]
pub struct CorpusIndex {
    docs: Vec<IndexedDocument>,
}

impl CorpusIndex {
    pub fn new(docs: &[Document]) -> Self {
        let docs = docs
            .iter()
            .map(|doc| {
                let tokens = tokenize(&doc.text);
                let mut token_counts = HashMap::new();
                for t in &tokens {
                    *token_counts.entry(t.clone()).or_insert(0) += 1;
                }
                IndexedDocument {
                    date: doc.date,
                    discourse: doc.discourse,
                    n_tokens: tokens.len(),
                    token_counts,
                }
            })
            .collect();
        CorpusIndex { docs }
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Number of documents with at least one token in `discourse`.
    pub fn usable_documents(&self, discourse: Discourse) -> usize {
        self.docs
            .iter()
            .filter(|d| d.discourse == discourse && d.n_tokens > 0)
            .count()
    }

    /// Documents whose text produced no tokens.
    pub fn degenerate_documents(&self) -> usize {
        self.docs.iter().filter(|d| d.n_tokens == 0).count()
    }

    /// Bins `spec`'s relative frequency in `discourse` onto `grid`.
    pub fn series(
        &self,
        grid: &BinGrid,
        spec: &KeywordSpec,
        discourse: Discourse,
        aggregation: Aggregation,
    ) -> Result<FrequencySeries> {
        if !self.docs.iter().any(|d| d.discourse == discourse) {
            return Err(Error::EmptyDiscourse(discourse.to_string()));
        }
        let n = grid.n_bins;
        let mut per_doc: Vec<Vec<f64>> = vec![Vec::new(); n];
        let mut hits = vec![0usize; n];
        let mut tokens = vec![0usize; n];

        for doc in self.docs.iter().filter(|d| d.discourse == discourse) {
            if doc.n_tokens == 0 {
                continue;
            }
            let bin = grid.bin_of(doc.date).ok_or_else(|| {
                Error::InvalidArgument(format!("document dated {} lies outside the bin grid", doc.date))
            })?;
            let matched: usize = spec
                .surface_forms()
                .filter_map(|f| doc.token_counts.get(f))
                .sum();
            per_doc[bin].push(matched as f64 / doc.n_tokens as f64);
            hits[bin] += matched;
            tokens[bin] += doc.n_tokens;
        }

        let counts: Vec<usize> = per_doc.iter().map(Vec::len).collect();
        let values = match aggregation {
            Aggregation::PerDocMean => per_doc
                .into_iter()
                .map(|mut v| {
                    if v.is_empty() {
                        return 0.0;
                    }
                    // order-independent sum
                    v.sort_by(f64::total_cmp);
                    v.iter().sum::<f64>() / v.len() as f64
                })
                .collect(),
            Aggregation::Pooled => hits
                .iter()
                .zip(&tokens)
                .map(|(&h, &t)| if t == 0 { 0.0 } else { h as f64 / t as f64 })
                .collect(),
        };
        FrequencySeries::new(
            spec.canonical(),
            discourse,
            grid.start,
            grid.width_days,
            values,
            counts,
        )
    }
}

/// Contiguous calendar bins of constant width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinGrid {
    pub start: NaiveDate,
    pub width_days: u32,
    pub n_bins: usize,
}

impl BinGrid {
    pub fn new(start: NaiveDate, width_days: u32, n_bins: usize) -> Result<Self> {
        if width_days == 0 {
            return Err(Error::InvalidArgument("bin width must be at least one day".into()));
        }
        Ok(BinGrid {
            start,
            width_days,
            n_bins,
        })
    }

    /// Smallest grid starting at the earliest document that covers every
    /// document of both discourses, so article and advertisement series align.
    pub fn covering(index: &CorpusIndex, width_days: u32) -> Result<Self> {
        let first = index.docs.iter().map(|d| d.date).min();
        let last = index.docs.iter().map(|d| d.date).max();
        let (Some(first), Some(last)) = (first, last) else {
            return Err(Error::EmptyDiscourse("any".into()));
        };
        let mut grid = BinGrid::new(first, width_days, 1)?;
        grid.n_bins = grid.bin_of_unchecked(last) + 1;
        Ok(grid)
    }

    fn bin_of_unchecked(&self, date: NaiveDate) -> usize {
        ((date - self.start).num_days() / i64::from(self.width_days)) as usize
    }

    pub fn bin_of(&self, date: NaiveDate) -> Option<usize> {
        if date < self.start {
            return None;
        }
        let bin = self.bin_of_unchecked(date);
        (bin < self.n_bins).then_some(bin)
    }
}

/// Mean relative frequency of `spec` per bin for documents of `discourse`.
///
/// The bin grid starts at the earliest document in `docs` (either discourse)
/// and extends to the latest one. Empty bins get value 0 and count 0.
pub fn build_series(
    docs: &[Document],
    spec: &KeywordSpec,
    discourse: Discourse,
    bin_width_days: u32,
) -> Result<FrequencySeries> {
    let index = CorpusIndex::new(docs);
    if index.usable_documents(discourse) == 0 {
        return Err(Error::EmptyDiscourse(discourse.to_string()));
    }
    let grid = BinGrid::covering(&index, bin_width_days)?;
    index.series(&grid, spec, discourse, Aggregation::PerDocMean)
}

/// Indices averaged for output position `i`: a centered window of `window`
/// points truncated at the edges. Even windows reach one further right.
pub(crate) fn centered_window(len: usize, i: usize, window: usize) -> Range<usize> {
    let left = (window - 1) / 2;
    let right = window / 2;
    i.saturating_sub(left)..(i + right + 1).min(len)
}

pub(crate) fn moving_average(values: &[f64], window: usize) -> Vec<f64> {
    (0..values.len())
        .map(|i| {
            let r = centered_window(values.len(), i, window);
            let n = r.len() as f64;
            values[r].iter().sum::<f64>() / n
        })
        .collect()
}

/// Centered simple moving average with truncated windows at the edges.
pub fn smooth_ma(series: &FrequencySeries, window: usize) -> Result<FrequencySeries> {
    if window == 0 {
        return Err(Error::InvalidArgument("smoothing window must be positive".into()));
    }
    if window > series.len() {
        return Err(Error::InvalidArgument(format!(
            "smoothing window {window} exceeds series length {}",
            series.len()
        )));
    }
    let smoothed = if window == 1 {
        series.values().to_vec()
    } else {
        moving_average(series.values(), window)
    };
    FrequencySeries::new(
        series.keyword.clone(),
        series.discourse,
        series.start,
        series.bin_width_days,
        smoothed,
        series.counts().to_vec(),
    )
}
