//! Grid-search fitting of distribution factors to perceived credit shares.
//!
//! Goodness of fit is the lack-of-fit statistic
//! `LOF = 1/(n - 1) * sum((E - C)^2 / C)` over the `n` share observations of
//! one paper size, `E` empirical and `C` modeled.

use std::collections::BTreeMap;
use std::io::Read;

use num_traits::Float;

use crate::credit::{credit_shares, CreditShareVector, DistributionFactor};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Maximum distance of a row sum from 1 that survey rounding may explain.
pub const ROW_SUM_TOLERANCE: f64 = 0.02;

/// Empirical credit share by rank, per coauthor count.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalShareTable<T> {
    rows: BTreeMap<usize, Vec<T>>,
}

impl<T: Scalar + Float> EmpiricalShareTable<T> {
    pub fn new(rows: impl IntoIterator<Item = (usize, Vec<T>)>) -> Result<Self> {
        let tol = T::from_f64(ROW_SUM_TOLERANCE).expect("tolerance representable");
        let mut map = BTreeMap::new();
        for (n, shares) in rows {
            let invalid = |m: String| Error::InvalidArgument(format!("shares for N = {n}: {m}"));
            if n < 2 {
                return Err(invalid("need at least two coauthors".into()));
            }
            if shares.len() != n {
                return Err(invalid(format!("expected {n} values, got {}", shares.len())));
            }
            if !shares.iter().all(|&s| s > T::zero() && s < T::one()) {
                return Err(invalid("every share must lie strictly between 0 and 1".into()));
            }
            let sum: T = shares.iter().copied().sum();
            if (sum - T::one()).abs() > tol {
                return Err(invalid(format!("shares sum to {:?}", sum)));
            }
            map.insert(n, shares);
        }
        Ok(Self { rows: map })
    }

    pub fn get(&self, n_authors: usize) -> Option<&[T]> {
        self.rows.get(&n_authors).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[T])> {
        self.rows.iter().map(|(&n, v)| (n, v.as_slice()))
    }
}

impl EmpiricalShareTable<f64> {
    /// Reads a JSON object keyed by coauthor count, e.g.
    /// `{"2": [0.61, 0.39], "3": [0.49, 0.29, 0.22]}`.
    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        let raw: BTreeMap<String, Vec<f64>> = serde_json::from_reader(input)?;
        let rows = raw
            .into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<usize>()
                    .map(|n| (n, v))
                    .map_err(|_| Error::InvalidArgument(format!("key {k:?} is not a coauthor count")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// Best grid point for one paper size.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<T> {
    pub n_authors: usize,
    pub best_d: DistributionFactor<T>,
    pub lof: T,
    pub model_shares: CreditShareVector<T>,
}

pub fn lack_of_fit<T: Scalar + Float>(empirical: &[T], model: &[T]) -> Result<T> {
    if empirical.len() != model.len() {
        return Err(Error::LengthMismatch { left: empirical.len(), right: model.len() });
    }
    if empirical.len() < 2 {
        return Err(Error::InvalidArgument("lack of fit needs at least two observations".into()));
    }
    if let Some(pos) = model.iter().position(|&c| c == T::zero()) {
        return Err(Error::ZeroModelShare(pos + 1));
    }
    let sum = empirical.iter().zip(model).fold(T::zero(), |acc, (&e, &c)| acc + (e - c) * (e - c) / c);
    Ok(sum / T::from_count(empirical.len() - 1))
}

/// Candidate factors `0, step, 2 step, ..., 1`.
///
/// When `1/step` is (numerically) an integer `m`, points are computed as
/// `i/m` so that e.g. a step of 0.01 yields exactly 0.22 rather than
/// `22 * 0.01`. Otherwise 1 is appended after the last full step.
pub fn factor_grid<T: Scalar + Float>(step: T) -> Result<Vec<T>> {
    let max_step = T::from_f64(0.1).expect("representable");
    if !(step > T::zero() && step <= max_step) {
        return Err(Error::InvalidArgument(format!("grid step must lie in (0, 0.1], got {:?}", step)));
    }
    let inv = T::one() / step;
    let m = inv.round();
    let eps = T::from_f64(1e-9).expect("representable");
    if (inv - m).abs() <= eps * m {
        let m_count = m.to_usize().expect("grid size fits in usize");
        let mf = T::from_count(m_count);
        return Ok((0..=m_count).map(|i| T::from_count(i) / mf).collect());
    }
    let full = inv.floor().to_usize().expect("grid size fits in usize");
    let mut grid: Vec<T> = (0..=full).map(|i| T::from_count(i) * step).collect();
    if *grid.last().expect("non-empty") < T::one() {
        grid.push(T::one());
    }
    Ok(grid)
}

/// Evaluates every grid factor and keeps the one with the smallest lack of
/// fit; ties go to the smaller factor.
///
/// Grid points whose model puts zero credit on some rank (the last author
/// under `d = 1`) have no defined lack of fit and are skipped.
pub fn fit_distribution_factor<T: Scalar + Float>(
    n_authors: usize,
    empirical: &[T],
    grid_step: T,
) -> Result<FitResult<T>> {
    if empirical.len() != n_authors {
        return Err(Error::LengthMismatch { left: n_authors, right: empirical.len() });
    }
    if n_authors < 2 {
        return Err(Error::InvalidArgument("fitting needs at least two coauthors".into()));
    }
    let mut best: Option<FitResult<T>> = None;
    for d in factor_grid(grid_step)? {
        let d = DistributionFactor::new(d)?;
        let model = credit_shares(n_authors, d)?;
        let lof = match lack_of_fit(empirical, model.as_slice()) {
            Ok(lof) => lof,
            Err(Error::ZeroModelShare(_)) => continue,
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|b| lof < b.lof) {
            best = Some(FitResult { n_authors, best_d: d, lof, model_shares: model });
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("no grid point has a defined lack of fit".into()))
}

/// Fits every row of `table` independently.
pub fn fit_table<T: Scalar + Float>(table: &EmpiricalShareTable<T>, grid_step: T) -> Result<Vec<FitResult<T>>> {
    table.iter().map(|(n, shares)| fit_distribution_factor(n, shares, grid_step)).collect()
}
