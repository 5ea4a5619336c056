//! Reading inputs and writing outputs atomically.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use coauthor_core::corpus::{parse_corpus, BibRecord};
use coauthor_core::{AuthorKey, CreditNetwork};
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

fn open(path: &Path) -> CliResult<File> {
    File::open(path).map_err(|e| CliError::data(path.display(), e))
}

pub fn read_corpus(path: &Path) -> CliResult<Vec<BibRecord>> {
    parse_corpus(BufReader::new(open(path)?)).map_err(|e| CliError::data(path.display(), e))
}

pub fn read_network(path: &Path) -> CliResult<CreditNetwork> {
    CreditNetwork::read_json(BufReader::new(open(path)?)).map_err(|e| CliError::data(path.display(), e))
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::data(path.display(), e))
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| CliError::data("stdout", e));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::data(path.display(), e);
    let mut tmp = NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// Numeric columns keyed by author, as written by `measures` and `rank`.
#[derive(Debug, Clone)]
pub struct ScoreTable {
    pub columns: Vec<String>,
    pub authors: Vec<AuthorKey>,
    /// `values[c][i]`: column `c`, author `i`.
    pub values: Vec<Vec<f64>>,
}

impl ScoreTable {
    pub fn column(&self, name: Option<&str>) -> CliResult<(String, &[f64])> {
        let idx = match name {
            Some(n) => self
                .columns
                .iter()
                .position(|c| c == n)
                .ok_or_else(|| CliError::Usage(format!("no column {n:?}; have {:?}", self.columns)))?,
            None if self.columns.is_empty() => return Err(CliError::Data("score file has no value columns".into())),
            None => 0,
        };
        Ok((self.columns[idx].clone(), &self.values[idx]))
    }
}

/// Reads a CSV whose first column is `author` and whose remaining columns
/// are numbers. A `rank` column is skipped.
pub fn read_scores(path: &Path) -> CliResult<ScoreTable> {
    let bad = |m: String| CliError::data(path.display(), m);
    let mut reader = csv::Reader::from_reader(open(path)?);
    let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.get(0) != Some("author") {
        return Err(bad("first column must be `author`".into()));
    }
    let keep: Vec<usize> = (1..header.len()).filter(|&i| &header[i] != "rank").collect();
    let columns: Vec<String> = keep.iter().map(|&i| header[i].to_string()).collect();
    let mut authors = Vec::new();
    let mut values = vec![Vec::new(); keep.len()];
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let row = line + 2;
        authors.push(AuthorKey::new(&rec[0]).map_err(|e| bad(format!("row {row}: {e}")))?);
        for (c, &i) in keep.iter().enumerate() {
            let v: f64 = rec
                .get(i)
                .unwrap_or("")
                .trim()
                .parse()
                .map_err(|_| bad(format!("row {row}: column {} is not a number", &header[i])))?;
            if !v.is_finite() {
                return Err(bad(format!("row {row}: non-finite score")));
            }
            values[c].push(v);
        }
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = authors.iter().find(|a| !seen.insert(*a)) {
        return Err(bad(format!("author {dup} listed twice")));
    }
    Ok(ScoreTable { columns, authors, values })
}
