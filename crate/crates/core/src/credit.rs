//! Per-paper credit allocation.
//!
//! Every one of the `N` coauthors starts with `1/N` of the paper. A fraction
//! `d` of that is transferable and is split evenly among the authors listed
//! before them; the first author has nobody ahead and keeps their
//! transferable part as a self-allocation. The remaining `(1 - d)/N` stays
//! with each author as non-transferable credit.
//!
//! Ranks are 1-based throughout.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Fraction of an author's initial credit that is passed on.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DistributionFactor<T>(T);

impl<T: Scalar> DistributionFactor<T> {
    pub fn new(value: T) -> Result<Self> {
        if value >= T::zero() && value <= T::one() {
            Ok(Self(value))
        } else {
            Err(Error::FactorOutOfRange(value.to_f64_lossy()))
        }
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn value(self) -> T {
        self.0
    }
}

/// Credit share of every author of one paper, indexed by rank.
#[derive(Debug, Clone, PartialEq)]
pub struct CreditShareVector<T> {
    shares: Vec<T>,
}

impl<T: Scalar> CreditShareVector<T> {
    pub fn len(&self) -> usize {
        self.shares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shares.is_empty()
    }

    /// Share of the author at 1-based `rank`.
    pub fn get(&self, rank: usize) -> Option<T> {
        rank.checked_sub(1).and_then(|i| self.shares.get(i)).copied()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.shares
    }

    pub fn into_vec(self) -> Vec<T> {
        self.shares
    }

    pub fn total(&self) -> T {
        self.shares.iter().copied().sum()
    }
}

/// One directed credit transfer inside a paper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transfer<T> {
    /// Rank of the sending author.
    pub from: usize,
    /// Rank of the receiving author; always ahead of the sender.
    pub to: usize,
    pub weight: T,
}

/// The full credit structure of one paper.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperTransferDecomposition<T> {
    pub n_authors: usize,
    /// Non-transferable credit kept by each author. Identical for every rank.
    pub nc: T,
    /// Transferable credit the first author allocates to themself.
    pub first_author_self: T,
    /// Transfers ordered by sender rank, then receiver rank.
    pub transfers: Vec<Transfer<T>>,
}

impl<T: Scalar> PaperTransferDecomposition<T> {
    /// Non-transferable credit of the author at `rank`.
    pub fn nc(&self, rank: usize) -> Option<T> {
        (1..=self.n_authors).contains(&rank).then_some(self.nc)
    }

    /// Sum of all credit in the paper; 1 up to rounding.
    pub fn total(&self) -> T {
        let kept = self.nc * T::from_count(self.n_authors);
        self.transfers.iter().fold(kept + self.first_author_self, |acc, t| acc + t.weight)
    }

    /// Credit each rank ends up holding.
    ///
    /// Uses the same summation order as [`credit_shares`], so the two agree
    /// bit for bit.
    pub fn receiver_totals(&self) -> CreditShareVector<T> {
        let mut shares = vec![self.nc; self.n_authors];
        if let Some(first) = shares.first_mut() {
            *first = *first + self.first_author_self;
        }
        for t in &self.transfers {
            shares[t.to - 1] = shares[t.to - 1] + t.weight;
        }
        CreditShareVector { shares }
    }
}

fn check_authors(n_authors: usize) -> Result<()> {
    if n_authors == 0 {
        Err(Error::ZeroAuthors)
    } else {
        Ok(())
    }
}

/// Weight of each transfer sent by the author at `sender` (rank >= 2).
fn transfer_weight<T: Scalar>(n: T, d: T, sender: usize) -> T {
    d / (n * T::from_count(sender - 1))
}

/// Closed-form credit share of every rank in an `n_authors` paper.
pub fn credit_shares<T: Scalar>(n_authors: usize, d: DistributionFactor<T>) -> Result<CreditShareVector<T>> {
    check_authors(n_authors)?;
    let d = d.value();
    let n = T::from_count(n_authors);
    let nc = (T::one() - d) / n;
    let first_self = d / n;
    let shares = (1..=n_authors)
        .map(|rank| {
            let base = if rank == 1 { nc + first_self } else { nc };
            (rank + 1..=n_authors).fold(base, |acc, sender| acc + transfer_weight(n, d, sender))
        })
        .collect();
    Ok(CreditShareVector { shares })
}

/// Breaks one paper into kept credit, first-author self-allocation and
/// pairwise transfers.
pub fn paper_transfer_decomposition<T: Scalar>(
    n_authors: usize,
    d: DistributionFactor<T>,
) -> Result<PaperTransferDecomposition<T>> {
    check_authors(n_authors)?;
    let d = d.value();
    let n = T::from_count(n_authors);
    let transfers = (2..=n_authors)
        .flat_map(|sender| {
            let weight = transfer_weight(n, d, sender);
            (1..sender).map(move |to| Transfer { from: sender, to, weight })
        })
        .collect();
    Ok(PaperTransferDecomposition { n_authors, nc: (T::one() - d) / n, first_author_self: d / n, transfers })
}
