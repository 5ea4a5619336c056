//! Rank-based blocks and credit flow between them.
//!
//! Authors are sorted by a score (normally indegree prestige) and cut into
//! consecutive groups. Credit flowing between members is then summed per
//! ordered pair of blocks: rows send, columns receive.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::AuthorKey;
use crate::error::{Error, Result};
use crate::measures::{Measure, ScoreVector};
use crate::network::DirectedCreditNetwork;
use crate::scalar::Scalar;

/// How block sizes are specified.
#[derive(Debug, Clone, PartialEq)]
pub enum CutSpec {
    Counts(Vec<usize>),
    /// Percentages summing to 100. Each block gets the floor of its share;
    /// the remainder goes to the last block.
    Percentages(Vec<f64>),
}

impl CutSpec {
    pub fn resolve(&self, g: usize) -> Result<Vec<usize>> {
        let counts = match self {
            CutSpec::Counts(c) => c.clone(),
            CutSpec::Percentages(p) => {
                let total: f64 = p.iter().sum();
                if p.is_empty() || p.iter().any(|x| !x.is_finite() || *x <= 0.0) || (total - 100.0).abs() > 1e-9 {
                    return Err(Error::InvalidArgument(format!(
                        "percentages must be positive and sum to 100, got {p:?}"
                    )));
                }
                let mut counts: Vec<usize> = p.iter().map(|x| (x / 100.0 * g as f64).floor() as usize).collect();
                let assigned: usize = counts.iter().sum();
                *counts.last_mut().expect("non-empty") += g - assigned;
                counts
            }
        };
        if counts.is_empty() || counts.contains(&0) {
            return Err(Error::InvalidArgument(format!("block sizes must be positive, got {counts:?}")));
        }
        let total: usize = counts.iter().sum();
        if total != g {
            return Err(Error::InvalidArgument(format!("block sizes sum to {total} but there are {g} authors")));
        }
        Ok(counts)
    }
}

/// Ordered blocks of node indices, best-ranked block first.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPartition {
    pub blocks: Vec<Vec<usize>>,
    pub basis: Measure,
    pub nodes: Vec<AuthorKey>,
}

impl BlockPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block index of every node.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.nodes.len()];
        for (b, members) in self.blocks.iter().enumerate() {
            for &i in members {
                out[i] = b;
            }
        }
        out
    }
}

/// Sorts by descending score, breaking ties by ascending author key, and
/// slices into consecutive blocks of the given sizes.
pub fn partition_by_ranking<T: Scalar>(scores: &ScoreVector<T>, cut_counts: &[usize]) -> Result<BlockPartition> {
    let g = scores.len();
    let counts = CutSpec::Counts(cut_counts.to_vec()).resolve(g)?;
    let mut order: Vec<usize> = (0..g).collect();
    order.sort_by(|&a, &b| {
        scores.scores[b]
            .partial_cmp(&scores.scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| scores.nodes[a].cmp(&scores.nodes[b]))
    });
    let mut blocks = Vec::with_capacity(counts.len());
    let mut rest = order.as_slice();
    for c in counts {
        let (head, tail) = rest.split_at(c);
        blocks.push(head.to_vec());
        rest = tail;
    }
    Ok(BlockPartition { blocks, basis: scores.measure, nodes: scores.nodes.clone() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BlockMode {
    /// All credit, self-loops included.
    #[default]
    Full,
    /// Non-transferable credit removed; first-author self-allocation stays on
    /// the diagonal and is also reported on its own.
    Transfer,
    /// `Transfer`, divided by the sending block's size.
    Normalized,
}

impl BlockMode {
    pub fn name(self) -> &'static str {
        match self {
            BlockMode::Full => "full",
            BlockMode::Transfer => "transfer",
            BlockMode::Normalized => "normalized",
        }
    }
}

impl fmt::Display for BlockMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BlockMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [BlockMode::Full, BlockMode::Transfer, BlockMode::Normalized]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown block mode {s:?}")))
    }
}

/// Credit flow between blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix<T> {
    pub mode: BlockMode,
    pub sizes: Vec<usize>,
    /// `cells[s][t]`: credit sent by block `s` to block `t`.
    pub cells: Vec<Vec<T>>,
    /// First-author self-allocation per block; absent in `Full` mode.
    pub diag_first_self: Option<Vec<T>>,
}

impl<T: Scalar> BlockMatrix<T> {
    /// Wraps precomputed cells, e.g. a table computed elsewhere.
    pub fn from_parts(
        mode: BlockMode,
        sizes: Vec<usize>,
        cells: Vec<Vec<T>>,
        diag_first_self: Option<Vec<T>>,
    ) -> Result<Self> {
        let b = sizes.len();
        if cells.len() != b || cells.iter().any(|row| row.len() != b) {
            return Err(Error::InvalidArgument(format!("block matrix must be {b} x {b}")));
        }
        if diag_first_self.as_ref().is_some_and(|d| d.len() != b) {
            return Err(Error::InvalidArgument("diagonal first-author values must have one entry per block".into()));
        }
        if diag_first_self.is_some() == (mode == BlockMode::Full) {
            return Err(Error::InvalidArgument(format!(
                "first-author column is required exactly for transfer and normalized modes, not {mode}"
            )));
        }
        Ok(Self { mode, sizes, cells, diag_first_self })
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> T {
        self.cells.iter().flatten().copied().sum()
    }

    pub fn diagonal_total(&self) -> T {
        (0..self.block_count()).map(|b| self.cells[b][b]).sum()
    }

    /// Fraction of all credit that stays within blocks.
    pub fn diagonal_share(&self) -> Option<T> {
        let total = self.total();
        (total != T::zero()).then(|| self.diagonal_total() / total)
    }

    /// Divides every row of a `Transfer` matrix by its block size.
    pub fn normalized(&self) -> Result<Self> {
        if self.mode != BlockMode::Transfer {
            return Err(Error::InvalidArgument(format!("cannot normalize a {} matrix", self.mode)));
        }
        let size = |s: usize| T::from_count(self.sizes[s]);
        let cells = self.cells.iter().enumerate().map(|(s, row)| row.iter().map(|&v| v / size(s)).collect()).collect();
        let diag = self.diag_first_self.as_ref().map(|d| d.iter().enumerate().map(|(s, &v)| v / size(s)).collect());
        Ok(Self { mode: BlockMode::Normalized, sizes: self.sizes.clone(), cells, diag_first_self: diag })
    }
}

/// Aggregates the network's credit flow over `partition`.
pub fn block_credit_matrix<T: Scalar>(
    net: &DirectedCreditNetwork<T>,
    partition: &BlockPartition,
    mode: BlockMode,
) -> Result<BlockMatrix<T>> {
    if partition.nodes.as_slice() != net.nodes() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} nodes, network has {}",
            partition.nodes.len(),
            net.node_count()
        )));
    }
    let block_of = partition.assignment();
    if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::PartitionMismatch(format!("node {} is in no block", net.nodes()[i])));
    }
    let b = partition.blocks.len();
    let mut cells = vec![vec![T::zero(); b]; b];
    for (from, to, w) in net.transfers() {
        let cell = &mut cells[block_of[from]][block_of[to]];
        *cell = *cell + w;
    }
    let mut first = vec![T::zero(); b];
    for (i, &blk) in block_of.iter().enumerate() {
        first[blk] = first[blk] + net.first_self()[i];
        let mut diag = cells[blk][blk] + net.first_self()[i];
        if mode == BlockMode::Full {
            diag = diag + net.nc_self()[i];
        }
        cells[blk][blk] = diag;
    }
    let matrix = BlockMatrix {
        mode: if mode == BlockMode::Full { BlockMode::Full } else { BlockMode::Transfer },
        sizes: partition.sizes(),
        cells,
        diag_first_self: (mode != BlockMode::Full).then_some(first),
    };
    match mode {
        BlockMode::Normalized => matrix.normalized(),
        _ => Ok(matrix),
    }
}

impl BlockMatrix<f64> {
    /// CSV with one row per sending block. Transfer and normalized matrices
    /// carry an extra `first_self` column.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let b = self.block_count();
        let mut header = vec!["block".to_string(), "size".to_string()];
        header.extend((1..=b).map(|i| format!("Block{i}")));
        if self.diag_first_self.is_some() {
            header.push("first_self".into());
        }
        writeln!(out, "{}", header.join(","))?;
        for s in 0..b {
            let mut row = vec![format!("Block{}", s + 1), self.sizes[s].to_string()];
            row.extend(self.cells[s].iter().map(|v| format!("{v}")));
            if let Some(d) = &self.diag_first_self {
                row.push(format!("{}", d[s]));
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}
