use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{BehaviorCell, Summary};
use crate::error::{Error, Result};

pub const REPORT_HEADER: &str =
    "keyword,h_art,h_art_se,h_ads,h_ads_se,p_ads_to_art,p_art_to_ads,lag,causal_class,persist_art,persist_ads";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Rounds to 6 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.5e}").parse().expect("formatted float parses")
}

/// One report line, already rounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub keyword: String,
    pub h_art: f64,
    pub h_art_se: f64,
    pub h_ads: f64,
    pub h_ads_se: f64,
    pub p_ads_to_art: f64,
    pub p_art_to_ads: f64,
    pub lag: usize,
    pub causal_class: String,
    pub persist_art: String,
    pub persist_ads: String,
}

impl From<&BehaviorCell> for ReportRow {
    fn from(c: &BehaviorCell) -> Self {
        ReportRow {
            keyword: c.keyword.clone(),
            h_art: round_sig(c.h_articles),
            h_art_se: round_sig(c.h_articles_se),
            h_ads: round_sig(c.h_ads),
            h_ads_se: round_sig(c.h_ads_se),
            p_ads_to_art: round_sig(c.granger.p_xy),
            p_art_to_ads: round_sig(c.granger.p_yx),
            lag: c.granger.lag,
            causal_class: c.causal.as_str().into(),
            persist_art: c.persistence_articles.as_str().into(),
            persist_ads: c.persistence_ads.as_str().into(),
        }
    }
}

fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn report_csv(rows: &[ReportRow]) -> String {
    let mut out = format!("{REPORT_HEADER}\n");
    for r in rows {
        let fields = [
            csv_field(&r.keyword),
            fmt_num(r.h_art),
            fmt_num(r.h_art_se),
            fmt_num(r.h_ads),
            fmt_num(r.h_ads_se),
            fmt_num(r.p_ads_to_art),
            fmt_num(r.p_art_to_ads),
            r.lag.to_string(),
            r.causal_class.clone(),
            r.persist_art.clone(),
            r.persist_ads.clone(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let r = round_sig(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_json<T: Serialize>(value: &T, path: &Path) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::io(path, e.into()))?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::io(path, e.into()))?;
    s.push('\n');
    Ok(s)
}

fn write(path: PathBuf, body: &str) -> Result<PathBuf> {
    std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `summary.json` and the per-keyword report (`report.csv` or
/// `report.json`) into `dir`. Keys are sorted and floats carry 6
/// significant digits, so identical inputs give identical bytes.
pub fn emit_report(
    dir: &Path,
    summary: &Summary,
    cells: &[BehaviorCell],
    format: ReportFormat,
) -> Result<Vec<PathBuf>> {
    if cells.is_empty() {
        return Err(Error::InvalidArgument("no keywords to report".into()));
    }
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let rows: Vec<ReportRow> = cells.iter().map(ReportRow::from).collect();
    let summary_path = dir.join("summary.json");
    let summary_json = to_json(summary, &summary_path)?;
    let report = match format {
        ReportFormat::Csv => write(dir.join("report.csv"), &report_csv(&rows))?,
        ReportFormat::Json => {
            let path = dir.join("report.json");
            let body = to_json(&rows, &path)?;
            write(path, &body)?
        }
    };
    Ok(vec![write(summary_path, &summary_json)?, report])
}
