//! Fixtures and brute-force oracles shared by the integration targets.
#![allow(dead_code)]

use std::path::PathBuf;

use coauthor_core::corpus::{parse_corpus, BibRecord};
use coauthor_core::network::UndirectedBinaryNetwork;
use coauthor_core::AuthorKey;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn load_corpus(name: &str) -> Vec<BibRecord> {
    let file = std::fs::File::open(data_path(name)).expect("fixture exists");
    parse_corpus(std::io::BufReader::new(file)).expect("fixture parses")
}

/// Papers with a fixed size histogram: 464 two-author, 144
/// three-author, 47 four-author, 4 five-, 2 six-, 1 seven- and 1
/// twelve-author paper. Authors are fresh per paper.
pub fn histogram_corpus() -> Vec<BibRecord> {
    const SIZES: [(usize, usize); 7] = [(2, 464), (3, 144), (4, 47), (5, 4), (6, 2), (7, 1), (12, 1)];
    let mut out = Vec::new();
    let mut next_author = 0usize;
    for (n, count) in SIZES {
        for _ in 0..count {
            let names: Vec<String> = (0..n)
                .map(|_| {
                    next_author += 1;
                    format!("author {next_author:05}")
                })
                .collect();
            out.push(BibRecord::from_names(format!("paper {:04}", out.len()), &names).unwrap());
        }
    }
    out
}

pub fn random_corpus<R: Rng>(rng: &mut R, pool: usize, papers: usize, max_authors: usize) -> Vec<BibRecord> {
    let names: Vec<String> = (0..pool).map(|i| format!("a{i:03}")).collect();
    (0..papers)
        .map(|p| {
            let n = rng.gen_range(1..=max_authors.min(pool));
            let chosen: Vec<&String> = names.choose_multiple(rng, n).collect();
            let mut r = BibRecord::from_names(format!("p{p}"), &chosen).unwrap();
            r.corresponding_index = rng.gen_range(0..n);
            r
        })
        .collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_nodes: usize) -> UndirectedBinaryNetwork {
    let n = rng.gen_range(1..=max_nodes);
    let p: f64 = rng.gen_range(0.1..0.8);
    let nodes = (0..n).map(|i| AuthorKey::new(format!("v{i}")).unwrap()).collect();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
    UndirectedBinaryNetwork::from_edges(nodes, edges).unwrap()
}

/// Betweenness from the definition: list every simple path between each
/// pair, keep the shortest, count those passing through each node.
pub fn betweenness_by_enumeration(net: &UndirectedBinaryNetwork) -> Vec<f64> {
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
            let Some(len) = paths.iter().map(Vec::len).min() else { continue };
            let geodesics: Vec<_> = paths.into_iter().filter(|p| p.len() == len).collect();
            for (i, s) in scores.iter_mut().enumerate() {
                let through = geodesics.iter().filter(|p| p[1..p.len() - 1].contains(&i)).count();
                *s += through as f64 / geodesics.len() as f64;
            }
        }
    }
    scores
}

/// Tau-b by comparing every pair.
pub fn tau_b_by_pairs(x: &[f64], y: &[f64]) -> Option<f64> {
    let (mut s, mut tx, mut ty, mut n0) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            n0 += 1;
            let (dx, dy) = (x[i] - x[j], y[i] - y[j]);
            tx += (dx == 0.0) as i64;
            ty += (dy == 0.0) as i64;
            s += ((dx * dy > 0.0) as i64) - ((dx * dy < 0.0) as i64);
        }
    }
    let denom = ((n0 - tx) * (n0 - ty)) as f64;
    (denom > 0.0).then(|| s as f64 / denom.sqrt())
}
