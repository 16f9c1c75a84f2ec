//! Corpus ingestion: documents, keyword specs and per-keyword frequency series.
//!
//! A corpus is a set of dated documents, each tagged as belonging to either the
//! article or the advertisement discourse. For every keyword the pipeline
//! computes a relative term frequency per document (keyword matches over
//! token count) and averages those over fixed-width calendar bins.

mod corpus;
mod series;
mod tokenize;

use std::collections::BTreeSet;
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use corpus::{
    read_corpus, read_keywords, read_series_csv, write_corpus, write_keywords, write_series_csv,
    DateRange,
};
pub use series::{build_series, smooth_ma, BinGrid, CorpusIndex};
pub use tokenize::tokenize;

pub(crate) use series::centered_window;

/// Which of the two discourses a document belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Discourse {
    Article,
    Advertisement,
}

impl Discourse {
    pub const ALL: [Discourse; 2] = [Discourse::Article, Discourse::Advertisement];

    pub fn as_str(self) -> &'static str {
        match self {
            Discourse::Article => "article",
            Discourse::Advertisement => "advertisement",
        }
    }
}

impl fmt::Display for Discourse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Discourse {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "article" => Ok(Discourse::Article),
            "advertisement" => Ok(Discourse::Advertisement),
            other => Err(Error::InvalidArgument(format!(
                "unknown discourse `{other}` (expected `article` or `advertisement`)"
            ))),
        }
    }
}

/// One dated text unit from the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub date: NaiveDate,
    pub discourse: Discourse,
    pub source: String,
    pub text: String,
}

/// A keyword together with every surface form that counts as a match.
///
/// Surface forms are stored lowercase; the canonical form is always one of
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordSpec {
    canonical: String,
    surface_forms: BTreeSet<String>,
}

impl KeywordSpec {
    pub fn new<I, S>(canonical: &str, surface_forms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let canonical = canonical.trim().to_lowercase();
        if canonical.is_empty() {
            return Err(Error::InvalidArgument("empty canonical keyword".into()));
        }
        let mut forms: BTreeSet<String> = surface_forms
            .into_iter()
            .map(|s| s.as_ref().trim().to_lowercase())
            .filter(|s| !s.is_empty())
            .collect();
        for form in &forms {
            if tokenize(form).len() != 1 || tokenize(form)[0] != *form {
                return Err(Error::InvalidArgument(format!(
                    "surface form `{form}` of `{canonical}` is not a single letter-only token"
                )));
            }
        }
        forms.insert(canonical.clone());
        Ok(KeywordSpec {
            canonical,
            surface_forms: forms,
        })
    }

    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    pub fn surface_forms(&self) -> impl Iterator<Item = &str> {
        self.surface_forms.iter().map(String::as_str)
    }

    pub fn matches(&self, token: &str) -> bool {
        self.surface_forms.contains(token)
    }
}

/// How per-document frequencies are combined within a bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// Mean over documents of (matches / tokens).
    #[default]
    PerDocMean,
    /// Total matches over total tokens in the bin.
    Pooled,
}

/// Relative frequency of `spec` in `doc`: matching tokens over all tokens.
///
/// Returns `None` for documents without any tokens; those are excluded from
/// aggregation.
pub fn doc_relative_frequency(doc: &Document, spec: &KeywordSpec) -> Option<f64> {
    let tokens = tokenize(&doc.text);
    if tokens.is_empty() {
        return None;
    }
    let hits = tokens.iter().filter(|t| spec.matches(t)).count();
    Some(hits as f64 / tokens.len() as f64)
}

/// Regularly binned relative-frequency series for one keyword in one discourse.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencySeries {
    pub keyword: String,
    pub discourse: Discourse,
    pub start: NaiveDate,
    pub bin_width_days: u32,
    values: Vec<f64>,
    counts: Vec<usize>,
}

impl FrequencySeries {
    pub fn new(
        keyword: impl Into<String>,
        discourse: Discourse,
        start: NaiveDate,
        bin_width_days: u32,
        values: Vec<f64>,
        counts: Vec<usize>,
    ) -> Result<Self> {
        if bin_width_days == 0 {
            return Err(Error::InvalidArgument("bin width must be at least one day".into()));
        }
        if values.len() != counts.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values but {} counts",
                values.len(),
                counts.len()
            )));
        }
        if values.len() < 2 {
            return Err(Error::SeriesTooShort {
                needed: 2,
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "series values must be finite and non-negative, found {bad}"
            )));
        }
        Ok(FrequencySeries {
            keyword: keyword.into(),
            discourse,
            start,
            bin_width_days,
            values,
            counts,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn bin_start(&self, bin: usize) -> NaiveDate {
        self.start + chrono::Days::new(bin as u64 * u64::from(self.bin_width_days))
    }

    /// True when both series share start date, bin width and length.
    pub fn same_grid(&self, other: &FrequencySeries) -> bool {
        self.start == other.start
            && self.bin_width_days == other.bin_width_days
            && self.len() == other.len()
    }
}
