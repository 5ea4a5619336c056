//! Coauthorship credit networks.
//!
//! Papers are turned into a directed, weighted, self-looped network in which
//! every coauthor hands a fixed fraction of their initial credit to each author
//! listed before them. On top of that network the crate provides the usual
//! prominence measures, rank correlation, distribution-factor fitting and
//! rank-based block aggregation of credit flow.
//!
//! Credit arithmetic is generic over the scalar type (see [`Scalar`]). The
//! aliases at the crate root fix it to `f64`, which is what file IO and the
//! command-line front end use. Exact rational types from `num-rational` work
//! as well and are handy for checking the closed forms.

pub mod blocks;
pub mod corpus;
pub mod credit;
pub mod error;
pub mod fitting;
pub mod measures;
pub mod network;
pub mod policy;
pub mod rank;
pub mod scalar;

pub use blocks::{BlockMatrix, BlockMode, BlockPartition, CutSpec};
pub use corpus::{AuthorKey, BibRecord, CorpusStats, OrderingPolicy};
pub use credit::{CreditShareVector, DistributionFactor, PaperTransferDecomposition, Transfer};
pub use error::{Error, Result};
pub use fitting::{EmpiricalShareTable, FitResult};
pub use measures::{Measure, ScoreVector};
pub use network::{DirectedCreditNetwork, UndirectedBinaryNetwork};
pub use policy::DistributionPolicy;
pub use rank::{KendallTau, RankVector, RosterMatch, TauVariant};
pub use scalar::Scalar;

/// Credit network with `f64` weights.
pub type CreditNetwork = DirectedCreditNetwork<f64>;
/// Distribution factor over `f64`.
pub type Factor = DistributionFactor<f64>;
/// Distribution policy over `f64`.
pub type FactorPolicy = DistributionPolicy<f64>;
/// Score vector over `f64`.
pub type Scores = ScoreVector<f64>;
/// Block matrix over `f64`.
pub type CreditBlocks = BlockMatrix<f64>;
/// Share table over `f64`.
pub type ShareTable = EmpiricalShareTable<f64>;
