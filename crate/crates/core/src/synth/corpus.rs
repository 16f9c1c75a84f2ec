//! Synthetic newspaper corpus with planted keyword dynamics.

use chrono::{Days, NaiveDate};
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{child_seed, rng, CausalScenario, ScenarioParams};
use crate::error::{Error, Result};
use crate::ingest::{Discourse, Document, KeywordSpec};

const FILLER: &[&str] = &[
    "de", "het", "een", "en", "van", "in", "op", "met", "voor", "aan", "bij", "naar", "uit",
    "over", "door", "heeft", "werd", "zijn", "wordt", "stad", "heden", "nieuwe", "prijs",
    "gulden", "verkrijgbaar", "winkel", "straat", "amsterdam", "rotterdam", "week", "jaar",
    "groot", "goed", "beste", "kwaliteit", "men", "zeer", "ook", "nog", "alle", "dagen",
    "markt", "dames", "heeren", "familie", "huis", "land", "werk", "avond", "morgen",
];

const SOURCES: &[&str] = &["Algemeen Handelsblad", "De Telegraaf", "Het Volk", "De Tijd"];

/// A keyword whose article and advertisement frequencies follow `scenario`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticKeyword {
    pub canonical: String,
    pub forms: Vec<String>,
    pub scenario: CausalScenario,
}

impl SyntheticKeyword {
    pub fn new(canonical: &str, forms: &[&str], scenario: CausalScenario) -> Self {
        SyntheticKeyword {
            canonical: canonical.into(),
            forms: forms.iter().map(|f| f.to_string()).collect(),
            scenario,
        }
    }
}

/// Recipe for a corpus with one article and one advertisement per bin.
///
/// For every keyword a scenario pair `(ads, articles)` of length `n_bins` is
/// drawn, standardized, and mapped to a target relative frequency
/// `base_freq + amplitude * z`, clipped at zero. Each document holds
/// `tokens_per_doc` tokens; a keyword occurs `round(tokens_per_doc * freq)`
/// times and the remainder is Dutch filler text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiniCorpusSpec {
    pub start: NaiveDate,
    pub n_bins: usize,
    pub bin_width_days: u32,
    pub tokens_per_doc: usize,
    pub base_freq: f64,
    pub amplitude: f64,
    pub keywords: Vec<SyntheticKeyword>,
    pub params: ScenarioParams,
    pub seed: u64,
}

impl Default for MiniCorpusSpec {
    /// The bundled mini-corpus: quarterly bins from 1890 over about a century.
    fn default() -> Self {
        use CausalScenario::*;
        MiniCorpusSpec {
            start: NaiveDate::from_ymd_opt(1890, 1, 1).expect("valid date"),
            n_bins: 400,
            bin_width_days: 91,
            tokens_per_doc: 200,
            base_freq: 0.04,
            amplitude: 0.012,
            keywords: vec![
                SyntheticKeyword::new("radio", &["radio", "radios"], AdsLead),
                SyntheticKeyword::new("sigaret", &["sigaret", "sigaretten"], AdsLead),
                SyntheticKeyword::new("fiets", &["fiets", "fietsen"], ArticlesLead),
                SyntheticKeyword::new("lamp", &["lamp", "lampen"], ArticlesLead),
                SyntheticKeyword::new("auto", &["auto", "autos"], CommonDriver),
                SyntheticKeyword::new("koffie", &["koffie"], CommonDriver),
                SyntheticKeyword::new("zeep", &["zeep"], Independent),
                SyntheticKeyword::new("piano", &["piano", "pianos"], Independent),
            ],
            params: ScenarioParams {
                own: 0.3,
                driver_ar: 0.9,
                driver_load: 2.0,
                ..ScenarioParams::default()
            },
            seed: 1930,
        }
    }
}

impl MiniCorpusSpec {
    pub fn keyword_specs(&self) -> Result<Vec<KeywordSpec>> {
        self.keywords
            .iter()
            .map(|k| KeywordSpec::new(&k.canonical, &k.forms))
            .collect()
    }

    /// Target relative frequencies `(ads, articles)` for keyword `index`.
    pub fn target_frequencies(&self, index: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let kw = self.keywords.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!("no synthetic keyword at index {index}"))
        })?;
        let params = ScenarioParams {
            n: self.n_bins,
            ..self.params
        };
        let (ads, art) = kw
            .scenario
            .generate(&params, child_seed(self.seed, index as u64))?;
        Ok((self.to_frequency(&ads), self.to_frequency(&art)))
    }

    fn to_frequency(&self, signal: &[f64]) -> Vec<f64> {
        let n = signal.len() as f64;
        let mean = signal.iter().sum::<f64>() / n;
        let sd = (signal.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        signal
            .iter()
            .map(|v| (self.base_freq + self.amplitude * (v - mean) / sd).max(0.0))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.keywords.is_empty() {
            return Err(Error::InvalidArgument("mini-corpus needs keywords".into()));
        }
        if self.n_bins < 2 || self.bin_width_days == 0 || self.tokens_per_doc == 0 {
            return Err(Error::InvalidArgument(
                "mini-corpus needs at least 2 bins, a positive bin width and tokens".into(),
            ));
        }
        if !(self.base_freq > 0.0 && self.amplitude >= 0.0) {
            return Err(Error::InvalidArgument("frequencies must be positive".into()));
        }
        Ok(())
    }

    /// Generates the documents, ordered by bin then discourse.
    pub fn generate(&self) -> Result<Vec<Document>> {
        self.validate()?;
        let targets = (0..self.keywords.len())
            .map(|i| self.target_frequencies(i))
            .collect::<Result<Vec<_>>>()?;
        let specs = self.keyword_specs()?;
        let mut rng = rng(self.seed);
        let mut docs = Vec::with_capacity(2 * self.n_bins);
        for bin in 0..self.n_bins {
            for discourse in [Discourse::Article, Discourse::Advertisement] {
                let mut tokens: Vec<&str> = Vec::with_capacity(self.tokens_per_doc);
                for (kw, (ads, art)) in self.keywords.iter().zip(&targets) {
                    let freq = match discourse {
                        Discourse::Article => art[bin],
                        Discourse::Advertisement => ads[bin],
                    };
                    let hits = (self.tokens_per_doc as f64 * freq).round() as usize;
                    for _ in 0..hits {
                        tokens.push(&kw.forms[rng.random_range(0..kw.forms.len())]);
                    }
                }
                if tokens.len() > self.tokens_per_doc {
                    return Err(Error::InvalidArgument(format!(
                        "keyword occurrences ({}) exceed tokens_per_doc ({})",
                        tokens.len(),
                        self.tokens_per_doc
                    )));
                }
                while tokens.len() < self.tokens_per_doc {
                    let word = FILLER[rng.random_range(0..FILLER.len())];
                    if !specs.iter().any(|s| s.matches(word)) {
                        tokens.push(word);
                    }
                }
                tokens.shuffle(&mut rng);
                let offset = if bin == 0 {
                    0
                } else {
                    rng.random_range(0..self.bin_width_days)
                };
                let days = bin as u64 * u64::from(self.bin_width_days) + u64::from(offset);
                let prefix = match discourse {
                    Discourse::Article => "art",
                    Discourse::Advertisement => "ads",
                };
                docs.push(Document {
                    id: format!("{prefix}-{bin:04}"),
                    date: self.start + Days::new(days),
                    discourse,
                    source: SOURCES[rng.random_range(0..SOURCES.len())].to_string(),
                    text: format!("{}.", tokens.join(" ")),
                });
            }
        }
        Ok(docs)
    }
}
