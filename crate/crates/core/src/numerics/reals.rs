//! One-sided reals: lower reals (ℝ<, and ℝ̄< up to a search ceiling) and
//! upper reals (ℝ>), given by monotone rational approximation streams.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::{ceil_int, dyadic, floor_int, scale_pow2, Rational};
use crate::kernel::{Fuel, Verdict};
use crate::par;

/// How an approximation was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApproxState {
    /// Nothing confirmed yet; the value is a placeholder bound.
    Sentinel,
    /// A grid value was confirmed.
    Confirmed,
    /// The largest grid value below the ceiling was confirmed; the true
    /// value may be anything at or above it, including +∞.
    Saturated,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Approx {
    pub value: Rational,
    pub state: ApproxState,
}

impl Approx {
    pub fn is_committed(&self) -> bool {
        self.state != ApproxState::Sentinel
    }
}

type ApproxFn = Arc<dyn Fn(Fuel) -> Approx + Send + Sync>;

/// A real known through nondecreasing rational lower bounds.
#[derive(Clone)]
pub struct LowerReal {
    approx: ApproxFn,
    ceiling: Rational,
}

impl LowerReal {
    pub fn from_fn(ceiling: Rational, f: impl Fn(Fuel) -> Approx + Send + Sync + 'static) -> Self {
        Self {
            approx: Arc::new(f),
            ceiling,
        }
    }

    pub fn approx(&self, fuel: Fuel) -> Approx {
        (self.approx)(fuel)
    }

    pub fn ceiling(&self) -> &Rational {
        &self.ceiling
    }
}

impl fmt::Debug for LowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LowerReal")
            .field("ceiling", &self.ceiling)
            .finish()
    }
}

/// A real known through nonincreasing rational upper bounds.
#[derive(Clone)]
pub struct UpperReal {
    approx: ApproxFn,
    ceiling: Rational,
}

impl UpperReal {
    pub fn from_fn(ceiling: Rational, f: impl Fn(Fuel) -> Approx + Send + Sync + 'static) -> Self {
        Self {
            approx: Arc::new(f),
            ceiling,
        }
    }

    pub fn approx(&self, fuel: Fuel) -> Approx {
        (self.approx)(fuel)
    }

    pub fn ceiling(&self) -> &Rational {
        &self.ceiling
    }
}

impl fmt::Debug for UpperReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UpperReal")
            .field("ceiling", &self.ceiling)
            .finish()
    }
}

/// Largest grid value `k / 2^d` in `[-ceiling, ceiling]` accepted by `pred`.
///
/// Scans from the top down and stops at the first hit, so the result is the
/// maximum regardless of how `pred` behaves on smaller values. Nothing
/// accepted yields the sentinel `-ceiling`.
pub fn sup_on_grid(
    ceiling: &Rational,
    fuel: Fuel,
    pred: impl Fn(&Rational) -> bool + Sync + Send,
) -> Approx {
    let d = fuel.depth();
    let top = floor_int(&scale_pow2(ceiling, d));
    let bottom = ceil_int(&scale_pow2(&-ceiling, d));
    let sentinel = Approx {
        value: -ceiling.clone(),
        state: ApproxState::Sentinel,
    };
    if top < bottom {
        return sentinel;
    }
    let hit = scan(&top, &bottom, |k| {
        let r = dyadic(k, d);
        pred(&r).then_some(r)
    });
    match hit {
        Some(r) => {
            let state = if r == dyadic(&top, d) {
                ApproxState::Saturated
            } else {
                ApproxState::Confirmed
            };
            Approx { value: r, state }
        }
        None => sentinel,
    }
}

/// Smallest grid value `k / 2^d` in `[0, ceiling]` accepted by `pred`; the
/// sentinel is `ceiling` itself.
pub fn inf_on_grid(
    ceiling: &Rational,
    fuel: Fuel,
    pred: impl Fn(&Rational) -> bool + Sync + Send,
) -> Approx {
    let d = fuel.depth();
    let top = floor_int(&scale_pow2(ceiling, d));
    let sentinel = Approx {
        value: ceiling.clone(),
        state: ApproxState::Sentinel,
    };
    if top < BigInt::zero() {
        return sentinel;
    }
    let hit = scan(&BigInt::zero(), &top, |k| {
        let r = dyadic(k, d);
        pred(&r).then_some(r)
    });
    match hit {
        Some(value) => Approx {
            value,
            state: ApproxState::Confirmed,
        },
        None => sentinel,
    }
}

const SCAN_CHUNK: i64 = 256;

/// First hit walking the integers from `from` to `to` (either direction),
/// fanned out chunk by chunk.
fn scan<T: Send>(
    from: &BigInt,
    to: &BigInt,
    f: impl Fn(&BigInt) -> Option<T> + Sync + Send,
) -> Option<T> {
    let step: i64 = if from <= to { 1 } else { -1 };
    let mut start = from.clone();
    loop {
        let remaining = if step > 0 { to - &start } else { &start - to };
        if remaining < BigInt::zero() {
            return None;
        }
        let len = (&remaining + 1u8).min(BigInt::from(SCAN_CHUNK));
        let len: i64 = len.try_into().expect("chunk length fits");
        let chunk: Vec<BigInt> = (0..len).map(|i| &start + step * i).collect();
        if let Some(hit) = par::find_map_first(&chunk, &f) {
            return Some(hit);
        }
        start += step * len;
    }
}

/// Supremum of an open set of reals presented by a membership semi-decider.
///
/// `approx(d)` is the largest grid rational of spacing `2^-d` in
/// `[-ceiling, ceiling]` whose membership is confirmed at fuel `d`.
pub fn sup_of_confirmed_set<M>(membership: M, ceiling: Rational) -> LowerReal
where
    M: Fn(&Rational, Fuel) -> Verdict + Send + Sync + 'static,
{
    let c = ceiling.clone();
    LowerReal::from_fn(ceiling, move |fuel| {
        sup_on_grid(&c, fuel, |r| membership(r, fuel).is_confirmed())
    })
}

/// Infimum over `ℝ≥0` of an open set presented by a membership
/// semi-decider; floored at zero, sentinel `ceiling`.
pub fn inf_of_confirmed_set<M>(membership: M, ceiling: Rational) -> UpperReal
where
    M: Fn(&Rational, Fuel) -> Verdict + Send + Sync + 'static,
{
    let c = ceiling.clone();
    UpperReal::from_fn(ceiling, move |fuel| {
        inf_on_grid(&c, fuel, |r| membership(r, fuel).is_confirmed())
    })
}
