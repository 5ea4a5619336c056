//! Bibliographic records, author ordering and corpus-level statistics.
//!
//! The on-disk corpus is newline-delimited JSON, one paper per line:
//!
//! ```text
//! {"paper_id": "p1", "authors": ["hwang, heungsun", "takane, yoshio"], "corresponding_index": 0, "year": 2004}
//! ```
//!
//! `corresponding_index` (0-based, default 0) and `year` are optional. Blank
//! lines are skipped.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical, already disambiguated author identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct AuthorKey(String);

impl AuthorKey {
    pub fn new(key: impl Into<String>) -> Result<Self> {
        let key = key.into();
        if key.trim().is_empty() {
            return Err(Error::InvalidArgument("empty author key".into()));
        }
        Ok(Self(key))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AuthorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for AuthorKey {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        AuthorKey::new(s).map_err(serde::de::Error::custom)
    }
}

/// How the byline is turned into the credit order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingPolicy {
    /// Byline order as printed.
    #[default]
    Byline,
    /// Corresponding author first, everyone else in byline order.
    CorrespondingFirst,
}

/// One paper.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BibRecord {
    pub paper_id: String,
    pub authors: Vec<AuthorKey>,
    #[serde(default)]
    pub corresponding_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i64>,
}

impl BibRecord {
    pub fn new(paper_id: impl Into<String>, authors: Vec<AuthorKey>, corresponding_index: usize) -> Result<Self> {
        let record = Self { paper_id: paper_id.into(), authors, corresponding_index, year: None };
        record.validate()?;
        Ok(record)
    }

    /// Convenience constructor from plain strings, corresponding author first.
    pub fn from_names<S: AsRef<str>>(paper_id: impl Into<String>, names: &[S]) -> Result<Self> {
        let authors = names.iter().map(|n| AuthorKey::new(n.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(paper_id, authors, 0)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |message: String| Error::InvalidRecord { paper_id: self.paper_id.clone(), message };
        if self.authors.is_empty() {
            return Err(invalid("no authors".into()));
        }
        let mut seen = HashSet::with_capacity(self.authors.len());
        for a in &self.authors {
            if !seen.insert(a) {
                return Err(invalid(format!("author {a:?} listed twice")));
            }
        }
        if self.corresponding_index >= self.authors.len() {
            return Err(invalid(format!(
                "corresponding_index {} out of range for {} authors",
                self.corresponding_index,
                self.authors.len()
            )));
        }
        Ok(())
    }

    pub fn n_authors(&self) -> usize {
        self.authors.len()
    }
}

/// Author order used for credit allocation under `policy`.
pub fn apply_author_ordering(record: &BibRecord, policy: OrderingPolicy) -> Vec<AuthorKey> {
    match policy {
        OrderingPolicy::Byline => record.authors.clone(),
        OrderingPolicy::CorrespondingFirst => {
            let c = record.corresponding_index;
            let mut out = Vec::with_capacity(record.authors.len());
            out.push(record.authors[c].clone());
            out.extend(record.authors.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, a)| a.clone()));
            out
        }
    }
}

/// Reads a newline-delimited JSON corpus.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<Vec<BibRecord>> {
    let mut records = Vec::new();
    let mut ids = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        let record: BibRecord = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        record.validate().map_err(|e| parse_err(e.to_string()))?;
        if !ids.insert(record.paper_id.clone()) {
            return Err(parse_err(format!("duplicate paper_id {:?}", record.paper_id)));
        }
        records.push(record);
    }
    Ok(records)
}

pub fn parse_corpus_str(text: &str) -> Result<Vec<BibRecord>> {
    parse_corpus(text.as_bytes())
}

/// Writes records in the same line format [`parse_corpus`] reads.
pub fn write_corpus<W: Write>(mut out: W, records: &[BibRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Descriptive statistics of a corpus.
///
/// Averages are `None` when there is nothing to average over. Standard
/// deviations are population SDs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub paper_count: usize,
    pub size_histogram: BTreeMap<usize, usize>,
    pub unique_authors: usize,
    pub avg_papers_per_author: Option<f64>,
    pub sd_papers_per_author: Option<f64>,
    pub avg_authors_per_paper: Option<f64>,
    pub sd_authors_per_paper: Option<f64>,
    /// Mean number of distinct collaborators.
    pub avg_coauthors_per_author: Option<f64>,
    pub sd_coauthors_per_author: Option<f64>,
}

fn mean_sd(values: impl Iterator<Item = f64> + Clone) -> (Option<f64>, Option<f64>) {
    let n = values.clone().count();
    if n == 0 {
        return (None, None);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
    (Some(mean), Some(var.sqrt()))
}

/// Statistics over multi-authored records, or over all records when
/// `include_singles` is set.
pub fn descriptive_stats(corpus: &[BibRecord], include_singles: bool) -> CorpusStats {
    let included: Vec<&BibRecord> = corpus.iter().filter(|r| include_singles || r.n_authors() >= 2).collect();

    let mut size_histogram = BTreeMap::new();
    let mut papers_per_author: HashMap<&AuthorKey, usize> = HashMap::new();
    let mut collaborators: HashMap<&AuthorKey, BTreeSet<&AuthorKey>> = HashMap::new();
    for r in &included {
        *size_histogram.entry(r.n_authors()).or_insert(0) += 1;
        for a in &r.authors {
            *papers_per_author.entry(a).or_insert(0) += 1;
            let set = collaborators.entry(a).or_default();
            set.extend(r.authors.iter().filter(|b| *b != a));
        }
    }

    let (avg_authors, sd_authors) = mean_sd(included.iter().map(|r| r.n_authors() as f64));
    let (avg_papers, sd_papers) = mean_sd(papers_per_author.values().map(|&c| c as f64));
    let (avg_coauthors, sd_coauthors) = mean_sd(collaborators.values().map(|s| s.len() as f64));

    CorpusStats {
        paper_count: included.len(),
        size_histogram,
        unique_authors: papers_per_author.len(),
        avg_papers_per_author: avg_papers,
        sd_papers_per_author: sd_papers,
        avg_authors_per_paper: avg_authors,
        sd_authors_per_paper: sd_authors,
        avg_coauthors_per_author: avg_coauthors,
        sd_coauthors_per_author: sd_coauthors,
    }
}
