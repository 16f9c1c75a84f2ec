use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::{Discourse, Document, FrequencySeries, KeywordSpec};
use crate::error::{Error, Result};

/// Inclusive range of admissible document dates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateRange {
    pub first: NaiveDate,
    pub last: NaiveDate,
}

impl DateRange {
    pub fn contains(&self, date: NaiveDate) -> bool {
        self.first <= date && date <= self.last
    }
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    date: String,
    #[serde(rename = "type")]
    kind: String,
    source: String,
    text: String,
}

#[derive(Serialize)]
struct OutRecord<'a> {
    id: &'a str,
    date: String,
    #[serde(rename = "type")]
    kind: &'a str,
    source: &'a str,
    text: &'a str,
}

/// Writes documents in the format read by [`read_corpus`].
pub fn write_corpus(path: &Path, docs: &[Document]) -> Result<()> {
    let mut out = String::new();
    for doc in docs {
        let rec = OutRecord {
            id: &doc.id,
            date: doc.date.format("%Y-%m-%d").to_string(),
            kind: doc.discourse.as_str(),
            source: &doc.source,
            text: &doc.text,
        };
        out.push_str(&serde_json::to_string(&rec).map_err(|e| Error::io(path, e.into()))?);
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Reads a newline-delimited JSON corpus. Blank lines are skipped.
pub fn read_corpus(path: &Path, range: Option<DateRange>) -> Result<Vec<Document>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let malformed = |line: usize, message: String| Error::MalformedRecord {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut docs = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord =
            serde_json::from_str(&line).map_err(|e| malformed(lineno, e.to_string()))?;
        let date = NaiveDate::parse_from_str(&raw.date, "%Y-%m-%d")
            .map_err(|e| malformed(lineno, format!("bad date `{}`: {e}", raw.date)))?;
        if let Some(r) = range {
            if !r.contains(date) {
                return Err(malformed(
                    lineno,
                    format!("date {date} outside corpus range {}..={}", r.first, r.last),
                ));
            }
        }
        let discourse = match raw.kind.as_str() {
            "article" => Discourse::Article,
            "advertisement" => Discourse::Advertisement,
            other => {
                return Err(malformed(
                    lineno,
                    format!("type `{other}` is neither `article` nor `advertisement`"),
                ))
            }
        };
        docs.push(Document {
            id: raw.id,
            date,
            discourse,
            source: raw.source,
            text: raw.text,
        });
    }
    Ok(docs)
}

#[derive(Deserialize)]
struct RawKeyword {
    canonical: String,
    surface_forms: String,
}

/// Reads a `canonical,surface_forms` CSV with `|`-separated surface forms.
pub fn read_keywords(path: &Path) -> Result<Vec<KeywordSpec>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let mut specs = Vec::new();
    for (i, row) in reader.deserialize::<RawKeyword>().enumerate() {
        // header is line 1
        let line = i + 2;
        let malformed = |message: String| Error::MalformedRecord {
            path: path.to_path_buf(),
            line,
            message,
        };
        let row = row.map_err(|e| malformed(e.to_string()))?;
        let spec = KeywordSpec::new(&row.canonical, row.surface_forms.split('|'))
            .map_err(|e| malformed(e.to_string()))?;
        specs.push(spec);
    }
    Ok(specs)
}

/// Writes a keyword list in the format read by [`read_keywords`].
pub fn write_keywords(path: &Path, specs: &[KeywordSpec]) -> Result<()> {
    let mut out = String::from("canonical,surface_forms\n");
    for spec in specs {
        let forms: Vec<&str> = spec.surface_forms().collect();
        out.push_str(&format!("{},{}\n", spec.canonical(), forms.join("|")));
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Writes `bin_start,value,count` rows.
pub fn write_series_csv(path: &Path, series: &FrequencySeries) -> Result<()> {
    let mut out = String::from("bin_start,value,count\n");
    for (i, (v, c)) in series.values().iter().zip(series.counts()).enumerate() {
        out.push_str(&format!("{},{},{}\n", series.bin_start(i), v, c));
    }
    let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
}

#[derive(Deserialize)]
struct SeriesRow {
    bin_start: NaiveDate,
    value: f64,
    count: usize,
}

/// Reads a series CSV written by [`write_series_csv`].
pub fn read_series_csv(
    path: &Path,
    keyword: &str,
    discourse: Discourse,
) -> Result<FrequencySeries> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let mut rows = Vec::new();
    for (i, row) in reader.deserialize::<SeriesRow>().enumerate() {
        rows.push(row.map_err(|e| Error::MalformedRecord {
            path: path.to_path_buf(),
            line: i + 2,
            message: e.to_string(),
        })?);
    }
    if rows.len() < 2 {
        return Err(Error::SeriesTooShort {
            needed: 2,
            got: rows.len(),
        });
    }
    let width = (rows[1].bin_start - rows[0].bin_start).num_days();
    let contiguous = rows
        .windows(2)
        .all(|p| (p[1].bin_start - p[0].bin_start).num_days() == width);
    if width <= 0 || !contiguous {
        return Err(Error::MalformedRecord {
            path: path.to_path_buf(),
            line: 2,
            message: "bins are not contiguous with constant width".into(),
        });
    }
    FrequencySeries::new(
        keyword,
        discourse,
        rows[0].bin_start,
        width as u32,
        rows.iter().map(|r| r.value).collect(),
        rows.iter().map(|r| r.count).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        let mut f = File::create(&p).unwrap();
        f.write_all(body.as_bytes()).unwrap();
        p
    }

    #[test]
    fn parses_records() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "c.jsonl",
            concat!(
                r#"{"id":"1","date":"1930-05-01","type":"article","source":"De Tijd","text":"De radio."}"#,
                "\n\n",
                r#"{"id":"2","date":"1931-05-01","type":"advertisement","source":"De Tijd","text":"Koop radios!"}"#,
                "\n"
            ),
        );
        let docs = read_corpus(&p, None).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[1].discourse, Discourse::Advertisement);
    }

    #[test]
    fn unknown_type_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "c.jsonl",
            concat!(
                r#"{"id":"1","date":"1930-05-01","type":"article","source":"s","text":"a"}"#,
                "\n",
                r#"{"id":"2","date":"1930-05-01","type":"editorial","source":"s","text":"a"}"#,
                "\n"
            ),
        );
        match read_corpus(&p, None) {
            Err(Error::MalformedRecord { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("editorial"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn date_range_enforced() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "c.jsonl",
            r#"{"id":"1","date":"1850-05-01","type":"article","source":"s","text":"a"}"#,
        );
        let range = DateRange {
            first: NaiveDate::from_ymd_opt(1890, 1, 1).unwrap(),
            last: NaiveDate::from_ymd_opt(1990, 12, 31).unwrap(),
        };
        assert!(read_corpus(&p, Some(range)).is_err());
        assert!(read_corpus(&p, None).is_ok());
    }

    #[test]
    fn bad_date_is_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "c.jsonl",
            r#"{"id":"1","date":"1930-13-01","type":"article","source":"s","text":"a"}"#,
        );
        assert!(matches!(read_corpus(&p, None), Err(Error::MalformedRecord { line: 1, .. })));
    }

    #[test]
    fn corpus_and_keywords_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let docs = vec![Document {
            id: "a1".into(),
            date: NaiveDate::from_ymd_opt(1930, 5, 1).unwrap(),
            discourse: Discourse::Advertisement,
            source: "De \"Tijd\"".into(),
            text: "Koop radios!".into(),
        }];
        let p = dir.path().join("c.jsonl");
        write_corpus(&p, &docs).unwrap();
        assert_eq!(read_corpus(&p, None).unwrap(), docs);

        let specs = vec![KeywordSpec::new("fiets", ["fietsen"]).unwrap()];
        let k = dir.path().join("k.csv");
        write_keywords(&k, &specs).unwrap();
        assert_eq!(read_keywords(&k).unwrap(), specs);
    }

    #[test]
    fn keyword_csv() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "k.csv", "canonical,surface_forms\nfiets,fiets|fietsen\nradio,radio\n");
        let specs = read_keywords(&p).unwrap();
        assert_eq!(specs.len(), 2);
        assert!(specs[0].matches("fietsen"));
    }

    #[test]
    fn series_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let s = FrequencySeries::new(
            "radio",
            Discourse::Article,
            NaiveDate::from_ymd_opt(1900, 1, 1).unwrap(),
            730,
            vec![0.125, 0.0, 0.3],
            vec![2, 0, 5],
        )
        .unwrap();
        let p = dir.path().join("s.csv");
        write_series_csv(&p, &s).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("bin_start,value,count\n1900-01-01,0.125,2\n1902-01-01,0,0\n"));
        assert_eq!(read_series_csv(&p, "radio", Discourse::Article).unwrap(), s);
    }
}
