//! Classifiers `X → k⊥` given by exact point evaluation together with a
//! sound, convergent interval extension over boxes.

mod hyperplane;
mod nearest;
mod net;

pub use hyperplane::Hyperplane;
pub use nearest::{nn_envelope, NearestNeighbor};
pub use net::{Layer, ThresholdNet};

use std::collections::BTreeSet;
use std::fmt;

use crate::kernel::{Fuel, KBot};
use crate::numerics::{IntervalBox, Rational};

/// What a classifier may output on a box: the colors some point could
/// receive, and whether some point could receive no answer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorEnvelope {
    possible: BTreeSet<usize>,
    maybe_bot: bool,
}

impl ColorEnvelope {
    pub fn new(possible: impl IntoIterator<Item = usize>, maybe_bot: bool) -> Self {
        let possible: BTreeSet<usize> = possible.into_iter().collect();
        Self {
            maybe_bot: maybe_bot || possible.is_empty(),
            possible,
        }
    }

    pub fn exactly(color: usize) -> Self {
        Self::new([color], false)
    }

    pub fn bot() -> Self {
        Self::new([], true)
    }

    pub fn possible(&self) -> &BTreeSet<usize> {
        &self.possible
    }

    pub fn maybe_bot(&self) -> bool {
        self.maybe_bot
    }

    pub fn admits(&self, color: usize) -> bool {
        self.possible.contains(&color)
    }

    /// The single color every point of the box certainly receives.
    pub fn certain(&self) -> Option<usize> {
        match (self.maybe_bot, self.possible.len()) {
            (false, 1) => self.possible.iter().next().copied(),
            _ => None,
        }
    }

    pub fn is_exactly(&self, color: usize) -> bool {
        self.certain() == Some(color)
    }

    /// Whether some point might receive a color other than `color`.
    pub fn admits_other_than(&self, color: usize) -> bool {
        self.possible.iter().any(|&j| j != color)
    }

    pub fn union(&self, other: &ColorEnvelope) -> ColorEnvelope {
        ColorEnvelope {
            possible: self.possible.union(&other.possible).copied().collect(),
            maybe_bot: self.maybe_bot || other.maybe_bot,
        }
    }
}

/// A classifier into `k` colors plus ⊥.
///
/// Implementations must keep three promises: a color returned by
/// [`eval_point`](Classifier::eval_point) is the true value; the envelope
/// of a box over-approximates the values on it; and envelopes of small
/// enough boxes around a point with a color collapse to that color.
pub trait Classifier: Send + Sync + fmt::Debug {
    fn colors(&self) -> usize;
    fn dims(&self) -> usize;
    fn eval_point(&self, x: &[Rational], fuel: Fuel) -> KBot;
    fn eval_box(&self, b: &IntervalBox, fuel: Fuel) -> ColorEnvelope;
    fn describe(&self) -> String;
}

/// The same value everywhere; `Bot` gives the nowhere-defined classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    value: KBot,
    k: usize,
    dims: usize,
}

impl Constant {
    pub fn new(value: KBot, k: usize, dims: usize) -> Self {
        Self { value, k, dims }
    }
}

impl Classifier for Constant {
    fn colors(&self) -> usize {
        self.k
    }

    fn dims(&self) -> usize {
        self.dims
    }

    fn eval_point(&self, _x: &[Rational], _fuel: Fuel) -> KBot {
        self.value
    }

    fn eval_box(&self, _b: &IntervalBox, _fuel: Fuel) -> ColorEnvelope {
        match self.value {
            KBot::Color(j) => ColorEnvelope::exactly(j),
            KBot::Bot => ColorEnvelope::bot(),
        }
    }

    fn describe(&self) -> String {
        match self.value {
            KBot::Color(j) => format!("constant color {}", j),
            KBot::Bot => "constant ⊥".to_string(),
        }
    }
}
