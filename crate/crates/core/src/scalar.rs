use std::fmt::Debug;
use std::iter::Sum;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Numeric type that credit can be expressed in.
///
/// Anything that behaves like a field with an order and can be built from a
/// count qualifies: `f32`, `f64`, `num_rational::Ratio<i64>` and friends.
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Sum + Debug + Send + Sync + 'static {
    /// The value of a count, e.g. the number of coauthors.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }

    /// Lossy conversion for reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Sum + Debug + Send + Sync + 'static
{}
