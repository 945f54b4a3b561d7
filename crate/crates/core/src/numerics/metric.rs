use serde::{Deserialize, Serialize};

use super::interval::{Interval, IntervalBox};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Metric on ℝⁿ, always compared through a rational key.
///
/// `Max` keys are the ℓ∞ distance itself. `EuclidSq` keys are squared
/// Euclidean distances; radii are squared before comparison so that no
/// square root is ever taken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricKind {
    #[default]
    #[serde(rename = "max")]
    Max,
    #[serde(rename = "euclid-sq")]
    EuclidSq,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Max => "max",
            MetricKind::EuclidSq => "euclid-sq",
        }
    }

    /// Comparison key of `d(y, x)`.
    pub fn key(self, y: &[Rational], x: &[Rational]) -> Rational {
        debug_assert_eq!(y.len(), x.len());
        match self {
            MetricKind::Max => y
                .iter()
                .zip(x)
                .map(|(a, b)| num_traits::Signed::abs(&(a - b)))
                .max()
                .expect("nonempty point"),
            MetricKind::EuclidSq => y
                .iter()
                .zip(x)
                .map(|(a, b)| {
                    let t = a - b;
                    &t * &t
                })
                .sum(),
        }
    }

    /// Key of a nonnegative radius.
    pub fn radius_key(self, r: &Rational) -> Rational {
        match self {
            MetricKind::Max => r.clone(),
            MetricKind::EuclidSq => r * r,
        }
    }

    fn combine(self, per_coord: impl Iterator<Item = Interval>) -> Interval {
        match self {
            MetricKind::Max => per_coord
                .map(|t| t.abs())
                .reduce(|a, b| a.max(&b))
                .expect("nonempty box"),
            MetricKind::EuclidSq => per_coord
                .map(|t| t.square())
                .reduce(|a, b| a.add(&b))
                .expect("nonempty box"),
        }
    }

    /// Exact range of the key of `d(y, b')` for `y` in `a` and `b'` in `b`.
    pub fn key_range_boxes(self, a: &IntervalBox, b: &IntervalBox) -> Interval {
        debug_assert_eq!(a.dims(), b.dims());
        self.combine(a.sides().iter().zip(b.sides()).map(|(s, t)| s.sub(t)))
    }

    /// Exact range of the key of `d(y, x)` for `y` in `b`.
    pub fn key_range(self, b: &IntervalBox, x: &[Rational]) -> Interval {
        debug_assert_eq!(b.dims(), x.len());
        self.combine(b.sides().iter().zip(x).map(|(s, c)| s.shift(&-c)))
    }
}

/// Interval containing `{ d(y, x) : y ∈ b }`, reported in key units
/// (squared for [`MetricKind::EuclidSq`]).
pub fn dist_range(b: &IntervalBox, x: &[Rational], metric: MetricKind) -> Result<Interval> {
    if b.dims() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: b.dims(),
            found: x.len(),
        });
    }
    Ok(metric.key_range(b, x))
}
