//! Prominence measures.
//!
//! Degree, betweenness and closeness are computed on the symmetrized binary
//! network with unit edge lengths. Indegree prestige is computed on the
//! directed credit network.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::AuthorKey;
use crate::error::Error;
use crate::network::{DirectedCreditNetwork, UndirectedBinaryNetwork};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Indegree,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Degree, Measure::Betweenness, Measure::Closeness, Measure::Indegree];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Indegree => "indegree",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown measure {s:?}")))
    }
}

/// One score per node, aligned with the network's node order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector<T = f64> {
    pub measure: Measure,
    pub nodes: Vec<AuthorKey>,
    pub scores: Vec<T>,
}

impl<T: Scalar> ScoreVector<T> {
    pub fn new(measure: Measure, nodes: Vec<AuthorKey>, scores: Vec<T>) -> crate::Result<Self> {
        if nodes.len() != scores.len() {
            return Err(Error::LengthMismatch { left: nodes.len(), right: scores.len() });
        }
        Ok(Self { measure, nodes, scores })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Score of the node with the given key.
    pub fn get(&self, key: &AuthorKey) -> Option<T> {
        self.nodes.iter().position(|k| k == key).map(|i| self.scores[i])
    }

    pub fn to_f64(&self) -> ScoreVector<f64> {
        ScoreVector {
            measure: self.measure,
            nodes: self.nodes.clone(),
            scores: self.scores.iter().map(|s| s.to_f64_lossy()).collect(),
        }
    }
}

/// Number of distinct coauthors.
pub fn degree_centrality(net: &UndirectedBinaryNetwork) -> ScoreVector {
    let scores = (0..net.node_count()).map(|i| net.neighbors(i).len() as f64).collect();
    ScoreVector { measure: Measure::Degree, nodes: net.nodes().to_vec(), scores }
}

/// Unnormalized betweenness over unordered pairs, endpoints excluded.
///
/// Brandes accumulation from every source; each unordered pair is seen from
/// both ends, hence the final halving.
pub fn betweenness_centrality(net: &UndirectedBinaryNetwork) -> ScoreVector {
    let g = net.node_count();
    let mut scores = vec![0.0f64; g];
    let mut order = Vec::with_capacity(g);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); g];
    let mut sigma = vec![0.0f64; g];
    let mut dist = vec![usize::MAX; g];
    let mut delta = vec![0.0f64; g];
    let mut queue = VecDeque::new();

    for s in 0..g {
        order.clear();
        preds.iter_mut().for_each(Vec::clear);
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in net.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }

        while let Some(w) = order.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                scores[w] += delta[w];
            }
        }
    }

    scores.iter_mut().for_each(|x| *x /= 2.0);
    ScoreVector { measure: Measure::Betweenness, nodes: net.nodes().to_vec(), scores }
}

/// Sum of reciprocal geodesic distances; unreachable nodes add nothing.
pub fn harmonic_closeness(net: &UndirectedBinaryNetwork) -> ScoreVector {
    let g = net.node_count();
    let mut dist = vec![usize::MAX; g];
    let mut queue = VecDeque::new();
    let scores = (0..g)
        .map(|s| {
            dist.fill(usize::MAX);
            dist[s] = 0;
            queue.push_back(s);
            let mut total = 0.0;
            while let Some(v) = queue.pop_front() {
                for &w in net.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        total += 1.0 / dist[w] as f64;
                        queue.push_back(w);
                    }
                }
            }
            total
        })
        .collect();
    ScoreVector { measure: Measure::Closeness, nodes: net.nodes().to_vec(), scores }
}

/// Credit received by each author.
///
/// With `include_self` this is the author's total accumulated credit: kept
/// credit, first-author self-allocation and incoming transfers. Without it,
/// incoming transfers only.
pub fn indegree_prestige<T: Scalar>(net: &DirectedCreditNetwork<T>, include_self: bool) -> ScoreVector<T> {
    let mut scores: Vec<T> = if include_self {
        net.nc_self().iter().zip(net.first_self()).map(|(&nc, &first)| nc + first).collect()
    } else {
        vec![T::zero(); net.node_count()]
    };
    for (_, to, w) in net.transfers() {
        scores[to] = scores[to] + w;
    }
    ScoreVector { measure: Measure::Indegree, nodes: net.nodes().to_vec(), scores }
}

/// Every measure for `net`, in [`Measure::ALL`] order. Indegree includes
/// self-loops.
pub fn all_measures(net: &DirectedCreditNetwork<f64>) -> Vec<ScoreVector> {
    let undirected = crate::network::symmetrize(net);
    vec![
        degree_centrality(&undirected),
        betweenness_centrality(&undirected),
        harmonic_closeness(&undirected),
        indegree_prestige(net, true),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{BibRecord, OrderingPolicy};
    use crate::network::build_directed_network;
    use crate::policy::DistributionPolicy;
    use proptest::prelude::*;

    fn nodes(n: usize) -> Vec<AuthorKey> {
        (0..n).map(|i| AuthorKey::new(format!("n{i}")).unwrap()).collect()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> UndirectedBinaryNetwork {
        UndirectedBinaryNetwork::from_edges(nodes(n), edges.iter().copied()).unwrap()
    }

    /// Betweenness by listing every simple path between every pair and
    /// keeping the shortest ones.
    fn betweenness_by_enumeration(net: &UndirectedBinaryNetwork) -> Vec<f64> {
        fn walk(net: &UndirectedBinaryNetwork, target: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let v = *path.last().unwrap();
            if v == target {
                out.push(path.clone());
                return;
            }
            for &w in net.neighbors(v) {
                if !path.contains(&w) {
                    path.push(w);
                    walk(net, target, path, out);
                    path.pop();
                }
            }
        }
        let g = net.node_count();
        let mut scores = vec![0.0; g];
        for j in 0..g {
            for k in j + 1..g {
                let mut paths = Vec::new();
                walk(net, k, &mut vec![j], &mut paths);
                let Some(shortest) = paths.iter().map(Vec::len).min() else { continue };
                let geodesics: Vec<_> = paths.into_iter().filter(|p| p.len() == shortest).collect();
                for (i, score) in scores.iter_mut().enumerate() {
                    let through = geodesics.iter().filter(|p| p[1..p.len() - 1].contains(&i)).count();
                    *score += through as f64 / geodesics.len() as f64;
                }
            }
        }
        scores
    }

    fn arb_graph(max_nodes: usize) -> impl Strategy<Value = UndirectedBinaryNetwork> {
        (1..=max_nodes).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.4), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
                let edges: Vec<_> = pairs.zip(bits).filter(|(_, on)| *on).map(|(p, _)| p).collect();
                graph(n, &edges)
            })
        })
    }

    #[test]
    fn degree_examples() {
        let tri = graph(4, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(degree_centrality(&tri).scores, vec![2.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn betweenness_examples() {
        assert_eq!(betweenness_centrality(&graph(3, &[(0, 1), (1, 2)])).scores, vec![0.0, 1.0, 0.0]);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(betweenness_centrality(&k4).scores, vec![0.0; 4]);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(betweenness_centrality(&star).scores, vec![3.0, 0.0, 0.0, 0.0]);
        // square: each diagonal pair has two geodesics
        let square = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(betweenness_centrality(&square).scores, vec![0.5; 4]);
    }

    #[test]
    fn closeness_examples() {
        let path = harmonic_closeness(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!(path.scores, vec![1.5, 2.0, 1.5]);
        let two_edges = harmonic_closeness(&graph(4, &[(0, 1), (2, 3)]));
        assert_eq!(two_edges.scores, vec![1.0; 4]);
        let star = harmonic_closeness(&graph(4, &[(0, 1), (0, 2), (0, 3)]));
        assert_eq!(star.scores[0], 3.0);
        assert_eq!(harmonic_closeness(&graph(1, &[])).scores, vec![0.0]);
    }

    #[test]
    fn indegree_of_three_author_paper() {
        let corpus = vec![BibRecord::from_names("p", &["A", "B", "C"]).unwrap()];
        let policy = DistributionPolicy::<f64>::new([(3, 0.5)]).unwrap();
        let net = build_directed_network(&corpus, OrderingPolicy::Byline, &policy, false).unwrap();
        let with = indegree_prestige(&net, true).scores;
        let without = indegree_prestige(&net, false).scores;
        let expect = [7.0 / 12.0, 0.25, 1.0 / 6.0];
        assert!(with.iter().zip(expect).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!((without[0] - 0.25).abs() < 1e-12);
        assert!((without[1] - 1.0 / 12.0).abs() < 1e-12);
        assert_eq!(without[2], 0.0);
    }

    #[test]
    fn single_author_indegree_is_one() {
        let corpus = vec![BibRecord::from_names("s", &["Z"]).unwrap()];
        let net =
            build_directed_network(&corpus, OrderingPolicy::Byline, &DistributionPolicy::<f64>::fitted_default(), true)
                .unwrap();
        assert_eq!(indegree_prestige(&net, true).scores, vec![1.0]);
    }

    #[test]
    fn measure_names_parse() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("pagerank".parse::<Measure>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn betweenness_matches_enumeration(net in arb_graph(8)) {
            let fast = betweenness_centrality(&net).scores;
            let slow = betweenness_by_enumeration(&net);
            for (a, b) in fast.iter().zip(&slow) {
                prop_assert!((a - b).abs() <= 1e-9, "{fast:?} vs {slow:?}");
            }
        }

        #[test]
        fn measures_are_permutation_equivariant(net in arb_graph(9), seed in any::<u64>()) {
            let g = net.node_count();
            let mut perm: Vec<usize> = (0..g).collect();
            let mut state = seed;
            for i in (1..g).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            let edges = (0..g).flat_map(|a| net.neighbors(a).iter().map(move |&b| (a, b)));
            let moved = UndirectedBinaryNetwork::from_edges(
                nodes(g),
                edges.map(|(a, b)| (perm[a], perm[b])).collect::<Vec<_>>(),
            ).unwrap();
            for f in [degree_centrality, betweenness_centrality, harmonic_closeness] {
                let before = f(&net).scores;
                let after = f(&moved).scores;
                for i in 0..g {
                    prop_assert!((before[i] - after[perm[i]]).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn exclusive_indegree_never_exceeds_inclusive(
            papers in proptest::collection::vec(
                proptest::sample::subsequence((0..7).collect::<Vec<u8>>(), 1..5).prop_shuffle(), 0..8)
        ) {
            let corpus: Vec<BibRecord> = papers.iter().enumerate().map(|(i, ix)| {
                let names: Vec<String> = ix.iter().map(|a| format!("a{a}")).collect();
                BibRecord::from_names(format!("p{i}"), &names).unwrap()
            }).collect();
            let net = build_directed_network(&corpus, OrderingPolicy::Byline, &DistributionPolicy::<f64>::fitted_default(), true).unwrap();
            let with = indegree_prestige(&net, true).scores;
            let without = indegree_prestige(&net, false).scores;
            prop_assert!(with.iter().zip(&without).all(|(a, b)| b <= a));
            let total: f64 = with.iter().sum();
            prop_assert!((total - corpus.len() as f64).abs() <= 1e-9 * (corpus.len() as f64).max(1.0));
            prop_assert!(with.iter().all(|s| s.is_finite() && *s >= 0.0));
        }
    }
}
