use std::collections::BTreeMap;

use crate::credit::DistributionFactor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which distribution factor applies to a paper of a given size.
///
/// Factors are keyed by coauthor count (keys >= 2). Papers larger than the
/// largest key reuse that key's factor. Sole-authored papers need no factor
/// and always use `d = 0`, so their whole credit is non-transferable.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionPolicy<T> {
    factors: BTreeMap<usize, DistributionFactor<T>>,
}

impl<T: Scalar> DistributionPolicy<T> {
    pub fn new(factors: impl IntoIterator<Item = (usize, T)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, d) in factors {
            if n < 2 {
                return Err(Error::Config(format!("factor keys must be coauthor counts >= 2, got {n}")));
            }
            map.insert(n, DistributionFactor::new(d)?);
        }
        Ok(Self { factors: map })
    }

    /// The fitted psychology factors: 0.21, 0.33 and 0.39 for two, three and
    /// four or more coauthors.
    pub fn fitted_default() -> Self {
        let v = |x: f64| T::from_f64(x).expect("factor not representable");
        Self::new([(2, v(0.21)), (3, v(0.33)), (4, v(0.39))]).expect("valid defaults")
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, DistributionFactor<T>)> + '_ {
        self.factors.iter().map(|(&n, &d)| (n, d))
    }

    pub fn factor_for(&self, n_authors: usize) -> Result<DistributionFactor<T>> {
        match n_authors {
            0 => Err(Error::ZeroAuthors),
            1 => Ok(DistributionFactor::zero()),
            n => {
                if let Some(d) = self.factors.get(&n) {
                    return Ok(*d);
                }
                match self.factors.last_key_value() {
                    Some((&largest, &d)) if n > largest => Ok(d),
                    _ => Err(Error::MissingFactor(n)),
                }
            }
        }
    }
}

impl DistributionPolicy<f64> {
    /// Parses a JSON object such as `{"2": 0.21, "3": 0.33}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, f64> =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("factor map: {e}")))?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (key, d) in raw {
            let n = key
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("factor key {key:?} is not a coauthor count")))?;
            pairs.push((n, d));
        }
        Self::new(pairs)
    }

    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, f64> = self.factors.iter().map(|(n, d)| (n.to_string(), d.value())).collect();
        serde_json::to_string(&map).expect("plain map serializes")
    }
}
