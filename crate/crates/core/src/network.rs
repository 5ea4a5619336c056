//! Corpus-level credit network and its symmetrized, binary counterpart.
//!
//! The directed network keeps the three kinds of credit apart: pairwise
//! transfers, non-transferable self-loops and the first author's
//! self-allocated transferable credit. Block aggregation needs that split.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::{apply_author_ordering, AuthorKey, BibRecord, OrderingPolicy};
use crate::credit::{paper_transfer_decomposition, DistributionFactor};
use crate::error::{Error, Result};
use crate::policy::DistributionPolicy;
use crate::scalar::Scalar;

/// Directed, weighted, self-looped credit network.
///
/// Node indices follow first appearance while papers are added. A transfer
/// entry exists for every ordered pair that shared a paper, even when its
/// weight is zero (`d = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedCreditNetwork<T> {
    nodes: Vec<AuthorKey>,
    index: HashMap<AuthorKey, usize>,
    nc_self: Vec<T>,
    first_self: Vec<T>,
    transfers: BTreeMap<(usize, usize), T>,
    paper_count: usize,
}

impl<T: Scalar> Default for DirectedCreditNetwork<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> DirectedCreditNetwork<T> {
    pub fn new() -> Self {
        Self {
            nodes: Vec::new(),
            index: HashMap::new(),
            nc_self: Vec::new(),
            first_self: Vec::new(),
            transfers: BTreeMap::new(),
            paper_count: 0,
        }
    }

    fn intern(&mut self, key: &AuthorKey) -> usize {
        if let Some(&i) = self.index.get(key) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(key.clone());
        self.index.insert(key.clone(), i);
        self.nc_self.push(T::zero());
        self.first_self.push(T::zero());
        i
    }

    /// Adds one paper whose authors are already in credit order.
    pub fn add_paper(&mut self, ordered: &[AuthorKey], d: DistributionFactor<T>) -> Result<()> {
        let dec = paper_transfer_decomposition(ordered.len(), d)?;
        let ids: Vec<usize> = ordered.iter().map(|a| self.intern(a)).collect();
        if ids.iter().enumerate().any(|(i, id)| ids[..i].contains(id)) {
            return Err(Error::InvalidArgument("author listed twice on one paper".into()));
        }
        for &id in &ids {
            self.nc_self[id] = self.nc_self[id] + dec.nc;
        }
        self.first_self[ids[0]] = self.first_self[ids[0]] + dec.first_author_self;
        for t in &dec.transfers {
            let w = self.transfers.entry((ids[t.from - 1], ids[t.to - 1])).or_insert_with(T::zero);
            *w = *w + t.weight;
        }
        self.paper_count += 1;
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[AuthorKey] {
        &self.nodes
    }

    pub fn node_index(&self, key: &AuthorKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn paper_count(&self) -> usize {
        self.paper_count
    }

    pub fn nc_self(&self) -> &[T] {
        &self.nc_self
    }

    pub fn first_self(&self) -> &[T] {
        &self.first_self
    }

    /// Accumulated weight sent from `from` to `to`; zero if they never
    /// shared a paper.
    pub fn transfer_weight(&self, from: usize, to: usize) -> T {
        self.transfers.get(&(from, to)).copied().unwrap_or_else(T::zero)
    }

    /// All `(from, to, weight)` entries ordered by sender then receiver.
    pub fn transfers(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.transfers.iter().map(|(&(s, t), &w)| (s, t, w))
    }

    pub fn total_nc(&self) -> T {
        self.nc_self.iter().copied().sum()
    }

    pub fn total_first_self(&self) -> T {
        self.first_self.iter().copied().sum()
    }

    pub fn total_transfer(&self) -> T {
        self.transfers.values().copied().sum()
    }

    /// All credit in the network; equals the number of papers.
    pub fn total_credit(&self) -> T {
        self.total_transfer() + self.total_nc() + self.total_first_self()
    }
}

/// Builds the credit network for `corpus`.
///
/// Sole-authored papers are skipped unless `include_singles` is set.
pub fn build_directed_network<T: Scalar>(
    corpus: &[BibRecord],
    ordering: OrderingPolicy,
    factors: &DistributionPolicy<T>,
    include_singles: bool,
) -> Result<DirectedCreditNetwork<T>> {
    let mut net = DirectedCreditNetwork::new();
    for record in corpus {
        if record.n_authors() < 2 && !include_singles {
            continue;
        }
        let d = factors.factor_for(record.n_authors())?;
        net.add_paper(&apply_author_ordering(record, ordering), d)?;
    }
    Ok(net)
}

#[derive(Serialize, Deserialize)]
struct TransferEntry {
    from: usize,
    to: usize,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    nodes: Vec<AuthorKey>,
    nc_self: Vec<f64>,
    first_self: Vec<f64>,
    transfers: Vec<TransferEntry>,
    paper_count: usize,
}

impl DirectedCreditNetwork<f64> {
    /// Writes the network as JSON. Floats use the shortest representation
    /// that reads back to the identical value.
    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        let file = NetworkFile {
            nodes: self.nodes.clone(),
            nc_self: self.nc_self.clone(),
            first_self: self.first_self.clone(),
            transfers: self.transfers().map(|(from, to, weight)| TransferEntry { from, to, weight }).collect(),
            paper_count: self.paper_count,
        };
        serde_json::to_writer_pretty(&mut out, &file)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        let file: NetworkFile = serde_json::from_reader(input)?;
        let g = file.nodes.len();
        let bad = |m: String| Error::Network(m);
        if file.nc_self.len() != g || file.first_self.len() != g {
            return Err(bad(format!(
                "{} nodes but {} nc_self and {} first_self entries",
                g,
                file.nc_self.len(),
                file.first_self.len()
            )));
        }
        let valid = |w: f64| w.is_finite() && w >= 0.0;
        if !file.nc_self.iter().chain(&file.first_self).all(|&w| valid(w)) {
            return Err(bad("self-loop weights must be finite and non-negative".into()));
        }
        let mut index = HashMap::with_capacity(g);
        for (i, key) in file.nodes.iter().enumerate() {
            if index.insert(key.clone(), i).is_some() {
                return Err(bad(format!("node {key:?} listed twice")));
            }
        }
        let mut transfers = BTreeMap::new();
        for t in file.transfers {
            if t.from >= g || t.to >= g || t.from == t.to {
                return Err(bad(format!("invalid transfer {} -> {}", t.from, t.to)));
            }
            if !valid(t.weight) {
                return Err(bad(format!("invalid weight {} on {} -> {}", t.weight, t.from, t.to)));
            }
            if transfers.insert((t.from, t.to), t.weight).is_some() {
                return Err(bad(format!("duplicate transfer {} -> {}", t.from, t.to)));
            }
        }
        Ok(Self {
            nodes: file.nodes,
            index,
            nc_self: file.nc_self,
            first_self: file.first_self,
            transfers,
            paper_count: file.paper_count,
        })
    }
}

/// Undirected, unweighted coauthorship network without self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedBinaryNetwork {
    nodes: Vec<AuthorKey>,
    adjacency: Vec<Vec<usize>>,
}

impl UndirectedBinaryNetwork {
    /// Builds a network from an edge list. Self-loops and repeated edges are
    /// ignored.
    pub fn from_edges(nodes: Vec<AuthorKey>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let g = nodes.len();
        let mut adjacency = vec![Vec::new(); g];
        for (a, b) in edges {
            if a >= g || b >= g {
                return Err(Error::InvalidArgument(format!("edge {a}-{b} out of range for {g} nodes")));
            }
            if a != b {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { nodes, adjacency })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[AuthorKey] {
        &self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor indices of `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a).is_some_and(|list| list.binary_search(&b).is_ok())
    }
}

/// Drops direction, weights and self-loops.
pub fn symmetrize<T: Scalar>(net: &DirectedCreditNetwork<T>) -> UndirectedBinaryNetwork {
    UndirectedBinaryNetwork::from_edges(net.nodes().to_vec(), net.transfers().map(|(s, t, _)| (s, t)))
        .expect("transfer indices are in range")
}

/// Maximal connected node sets, largest first; equal sizes ordered by their
/// smallest author key. Members are sorted by node index.
pub fn connected_components(net: &UndirectedBinaryNetwork) -> Vec<Vec<usize>> {
    let g = net.node_count();
    let mut seen = vec![false; g];
    let mut components = Vec::new();
    for start in 0..g {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in net.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    let min_key = |c: &Vec<usize>| c.iter().map(|&i| &net.nodes()[i]).min().cloned();
    components.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| min_key(a).cmp(&min_key(b))));
    components
}

/// `2m / (g (g - 1))`; undefined for fewer than two nodes.
pub fn density(net: &UndirectedBinaryNetwork) -> Option<f64> {
    let g = net.node_count();
    (g >= 2).then(|| 2.0 * net.edge_count() as f64 / (g as f64 * (g - 1) as f64))
}
