//! Ranking with ties, Kendall rank correlation and roster validation.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::corpus::AuthorKey;
use crate::error::{Error, Result};
use crate::measures::ScoreVector;
use crate::scalar::Scalar;

/// Two-tailed 1% critical value of the standard normal.
pub const Z_CRITICAL_1PCT: f64 = 2.576;

fn cmp_desc<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    b.partial_cmp(a).unwrap_or(Ordering::Equal)
}

/// Node indices ordered by descending score; equal scores keep index order.
fn descending_order<T: PartialOrd>(scores: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| cmp_desc(&scores[a], &scores[b]));
    idx
}

/// Ranks aligned with a score vector; 1 is best, ties share their mean rank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    pub nodes: Vec<AuthorKey>,
    pub ranks: Vec<f64>,
}

/// Fractional ranks of raw scores, highest score first.
pub fn fractional_ranks_of<T: PartialOrd>(scores: &[T]) -> Vec<f64> {
    let order = descending_order(scores);
    let mut ranks = vec![0.0; scores.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

pub fn fractional_ranks<T: Scalar>(scores: &ScoreVector<T>) -> RankVector {
    RankVector { nodes: scores.nodes.clone(), ranks: fractional_ranks_of(&scores.scores) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauVariant {
    /// No tie correction.
    A,
    /// Tie-corrected.
    #[default]
    B,
}

/// Kendall correlation with its pair counts and normal-approximation z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KendallTau {
    pub tau: f64,
    /// `None` when the variance of the statistic is zero.
    pub z: Option<f64>,
    pub concordant: u64,
    pub discordant: u64,
    /// Pairs tied in `x` (including joint ties).
    pub tied_x: u64,
    /// Pairs tied in `y` (including joint ties).
    pub tied_y: u64,
}

impl KendallTau {
    /// Significant at the 1% level, two-tailed.
    pub fn significant(&self) -> bool {
        self.z.is_some_and(|z| z.abs() > Z_CRITICAL_1PCT)
    }
}

/// Sizes of runs of equal values in an already sorted sequence.
fn run_lengths<T: PartialEq>(sorted: impl Iterator<Item = T>) -> Vec<u64> {
    let mut runs = Vec::new();
    let mut prev: Option<T> = None;
    for v in sorted {
        match (&prev, runs.last_mut()) {
            (Some(p), Some(len)) if *p == v => *len += 1,
            _ => runs.push(1),
        }
        prev = Some(v);
    }
    runs
}

fn pairs(t: u64) -> u64 {
    t * t.saturating_sub(1) / 2
}

/// Stable merge sort of `idx` by `key`, returning the number of strict
/// inversions removed.
fn merge_count<T: PartialOrd>(idx: &mut [usize], buf: &mut [usize], key: &[T]) -> u64 {
    let n = idx.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps =
        merge_count(&mut idx[..mid], &mut buf[..mid], key) + merge_count(&mut idx[mid..], &mut buf[mid..], key);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if key[idx[j]] < key[idx[i]] {
            buf[k] = idx[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = idx[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&idx[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&idx[j..n]);
    idx.copy_from_slice(&buf[..n]);
    swaps
}

/// Kendall tau between two paired samples.
///
/// Sorting-based, `O(n log n)`. Returns `Ok(None)` when tau is undefined
/// (tau-b on a sample where either side is constant).
pub fn kendall_tau<T: PartialOrd>(x: &[T], y: &[T], variant: TauVariant) -> Result<Option<KendallTau>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidArgument("rank correlation needs at least two observations".into()));
    }
    let cmp = |a: &T, b: &T| a.partial_cmp(b).unwrap_or(Ordering::Equal);

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| cmp(&x[a], &x[b]).then_with(|| cmp(&y[a], &y[b])));

    let x_runs = run_lengths(idx.iter().map(|&i| &x[i]));
    let joint_runs = run_lengths(idx.iter().map(|&i| (&x[i], &y[i])));

    let mut buf = vec![0; n];
    let discordant = merge_count(&mut idx, &mut buf, y);
    let y_runs = run_lengths(idx.iter().map(|&i| &y[i]));

    let n0 = pairs(n as u64);
    let n1: u64 = x_runs.iter().map(|&t| pairs(t)).sum();
    let n2: u64 = y_runs.iter().map(|&t| pairs(t)).sum();
    let n3: u64 = joint_runs.iter().map(|&t| pairs(t)).sum();
    let concordant = n0 + n3 - n1 - n2 - discordant;
    let s = concordant as f64 - discordant as f64;

    let tau = match variant {
        TauVariant::A => s / n0 as f64,
        TauVariant::B => {
            let denom = (n0 - n1) as f64 * (n0 - n2) as f64;
            if denom == 0.0 {
                return Ok(None);
            }
            s / denom.sqrt()
        }
    };

    let nf = n as f64;
    let tie_terms = |runs: &[u64]| {
        runs.iter().fold((0.0, 0.0, 0.0), |(v, t1, t2), &t| {
            let t = t as f64;
            (v + t * (t - 1.0) * (2.0 * t + 5.0), t1 + t * (t - 1.0), t2 + t * (t - 1.0) * (t - 2.0))
        })
    };
    let (vx, x1, x2) = tie_terms(&x_runs);
    let (vy, y1, y2) = tie_terms(&y_runs);
    let mut var = (nf * (nf - 1.0) * (2.0 * nf + 5.0) - vx - vy) / 18.0 + x1 * y1 / (2.0 * nf * (nf - 1.0));
    if n > 2 {
        var += x2 * y2 / (9.0 * nf * (nf - 1.0) * (nf - 2.0));
    }
    let z = (var > 0.0).then(|| s / var.sqrt());

    Ok(Some(KendallTau { tau, z, concordant, discordant, tied_x: n1, tied_y: n2 }))
}

pub fn kendall_tau_b<T: PartialOrd>(x: &[T], y: &[T]) -> Result<Option<KendallTau>> {
    kendall_tau(x, y, TauVariant::B)
}

/// Overlap between a top-k group and a reference roster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RosterMatch {
    pub matched: BTreeSet<AuthorKey>,
    pub count: usize,
    pub k: usize,
    /// Size of the top-k group after including everyone tied at the cut.
    pub group_size: usize,
}

/// Authors in the top `k` that also appear in `roster`.
///
/// A tie group straddling position `k` is included whole.
pub fn roster_match<T: Scalar>(scores: &ScoreVector<T>, roster: &BTreeSet<AuthorKey>, k: usize) -> Result<RosterMatch> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let order = descending_order(&scores.scores);
    let group: Vec<usize> = match order.get(k.min(order.len()).wrapping_sub(1)) {
        Some(&cut) => {
            let boundary = scores.scores[cut];
            order.into_iter().filter(|&i| scores.scores[i] >= boundary).collect()
        }
        None => Vec::new(),
    };
    let matched: BTreeSet<AuthorKey> =
        group.iter().map(|&i| &scores.nodes[i]).filter(|key| roster.contains(*key)).cloned().collect();
    Ok(RosterMatch { count: matched.len(), matched, k, group_size: group.len() })
}

/// Parses a roster: one author key per line, `#` comment lines and blank
/// lines skipped, surrounding whitespace trimmed.
pub fn parse_roster(text: &str) -> Result<BTreeSet<AuthorKey>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(AuthorKey::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Measure;
    use proptest::prelude::*;

    fn sv(scores: &[f64]) -> ScoreVector {
        let nodes = (0..scores.len()).map(|i| AuthorKey::new(format!("a{i}")).unwrap()).collect();
        ScoreVector::new(Measure::Degree, nodes, scores.to_vec()).unwrap()
    }

    /// Tau-b by direct comparison of all pairs.
    fn tau_b_by_pairs(x: &[f64], y: &[f64]) -> Option<f64> {
        let (mut c, mut d, mut tx, mut ty, mut n0) = (0i64, 0i64, 0i64, 0i64, 0i64);
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                n0 += 1;
                let dx = x[i] - x[j];
                let dy = y[i] - y[j];
                if dx == 0.0 {
                    tx += 1;
                }
                if dy == 0.0 {
                    ty += 1;
                }
                if dx * dy > 0.0 {
                    c += 1;
                } else if dx * dy < 0.0 {
                    d += 1;
                }
            }
        }
        let denom = ((n0 - tx) * (n0 - ty)) as f64;
        (denom > 0.0).then(|| (c - d) as f64 / denom.sqrt())
    }

    #[test]
    fn ranks_with_ties() {
        assert_eq!(fractional_ranks_of(&[10.0, 10.0, 5.0]), vec![1.5, 1.5, 3.0]);
        assert_eq!(fractional_ranks_of(&[3.0, 1.0, 2.0]), vec![1.0, 3.0, 2.0]);
        assert_eq!(fractional_ranks_of(&[7.0; 4]), vec![2.5; 4]);
        assert!(fractional_ranks_of::<f64>(&[]).is_empty());
    }

    #[test]
    fn tau_examples() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(kendall_tau_b(&x, &x).unwrap().unwrap().tau, 1.0);
        let rev = [4.0, 3.0, 2.0, 1.0];
        assert_eq!(kendall_tau_b(&x, &rev).unwrap().unwrap().tau, -1.0);
        let swapped = [1.0, 3.0, 2.0, 4.0];
        let t = kendall_tau_b(&x, &swapped).unwrap().unwrap();
        assert_eq!((t.concordant, t.discordant), (5, 1));
        assert!((t.tau - 4.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn tau_undefined_for_constant_input() {
        assert_eq!(kendall_tau_b(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).unwrap(), None);
        assert!(kendall_tau(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0], TauVariant::A).unwrap().is_some());
    }

    #[test]
    fn tau_errors() {
        assert!(kendall_tau_b(&[1.0, 2.0], &[1.0]).is_err());
        assert!(kendall_tau_b(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn tau_a_with_ties() {
        // pairs: (1,2) tied in x, (1,3) C, (2,3) C => S = 2, n0 = 3
        let t = kendall_tau(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0], TauVariant::A).unwrap().unwrap();
        assert!((t.tau - 2.0 / 3.0).abs() < 1e-15);
        let b = kendall_tau_b(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).unwrap().unwrap();
        assert!((b.tau - 2.0 / (2.0f64 * 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn tau_z_without_ties() {
        // S = 4, var = n(n-1)(2n+5)/18 = 4*3*13/18
        let t = kendall_tau_b(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap().unwrap();
        assert!((t.z.unwrap() - 4.0 / (156.0f64 / 18.0).sqrt()).abs() < 1e-12);
        assert!(!t.significant());
        let x: Vec<f64> = (0..50).map(f64::from).collect();
        assert!(kendall_tau_b(&x, &x).unwrap().unwrap().significant());
    }

    #[test]
    fn roster_examples() {
        let s = sv(&[5.0, 4.0, 4.0, 1.0]);
        let none: BTreeSet<AuthorKey> = [AuthorKey::new("zz").unwrap()].into();
        assert_eq!(roster_match(&s, &none, 2).unwrap().count, 0);

        let all: BTreeSet<AuthorKey> = ["a0", "a1"].iter().map(|k| AuthorKey::new(*k).unwrap()).collect();
        assert_eq!(roster_match(&s, &all, 3).unwrap().count, 2);

        // a1 and a2 tie at the cut for k = 2: both included
        let m = roster_match(&s, &["a2"].iter().map(|k| AuthorKey::new(*k).unwrap()).collect(), 2).unwrap();
        assert_eq!((m.count, m.group_size), (1, 3));

        assert_eq!(roster_match(&s, &all, 100).unwrap().group_size, 4);
        assert!(roster_match(&s, &all, 0).is_err());
        assert_eq!(roster_match(&sv(&[]), &all, 3).unwrap().group_size, 0);
    }

    #[test]
    fn roster_parsing() {
        let r = parse_roster("# board members\nhwang, heungsun\n\n  takane, yoshio  \r\n#x\n").unwrap();
        let keys: Vec<&str> = r.iter().map(AuthorKey::as_str).collect();
        assert_eq!(keys, vec!["hwang, heungsun", "takane, yoshio"]);
    }

    proptest! {
        #[test]
        fn tau_matches_pair_counting(
            pairs in proptest::collection::vec((0u8..6, 0u8..6), 2..200)
        ) {
            let x: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
            let y: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
            let fast = kendall_tau_b(&x, &y).unwrap().map(|t| t.tau);
            let slow = tau_b_by_pairs(&x, &y);
            match (fast, slow) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-12),
                (a, b) => prop_assert_eq!(a, b),
            }
        }

        #[test]
        fn tau_self_and_negation(x in proptest::collection::vec(-100i32..100, 2..60)) {
            let x: Vec<f64> = x.into_iter().map(f64::from).collect();
            let distinct = x.iter().any(|v| *v != x[0]);
            if distinct {
                prop_assert!((kendall_tau_b(&x, &x).unwrap().unwrap().tau - 1.0).abs() < 1e-12);
            }
            let mut sorted = x.clone();
            sorted.sort_by(f64::total_cmp);
            sorted.dedup();
            if sorted.len() == x.len() {
                let neg: Vec<f64> = x.iter().map(|v| -v).collect();
                prop_assert!((kendall_tau_b(&x, &neg).unwrap().unwrap().tau + 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn ranks_invariant_under_monotone_transform(x in proptest::collection::vec(-50i32..50, 0..40)) {
            let a: Vec<f64> = x.iter().map(|&v| f64::from(v)).collect();
            let b: Vec<f64> = a.iter().map(|v| (v / 10.0).exp() * 3.0 + 1.0).collect();
            let ra = fractional_ranks_of(&a);
            prop_assert_eq!(&ra, &fractional_ranks_of(&b));
            let g = a.len() as f64;
            prop_assert!((ra.iter().sum::<f64>() - g * (g + 1.0) / 2.0).abs() < 1e-9);
        }
    }
}
