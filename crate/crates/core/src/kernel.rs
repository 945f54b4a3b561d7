//! Partial truth values and the fuel discipline.
//!
//! Every semi-decision procedure in the crate is a pure function of a
//! [`Fuel`] budget. A committed answer (`Confirmed`, `Zero`, `One`,
//! `Color(j)`) returned at some fuel is returned at every larger fuel;
//! the uncommitted values (`Unknown`, `Bot`) may later refine.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// A single natural-number budget driving subdivision depth, enumeration
/// breadth and evaluation precision together.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Fuel(pub u32);

impl Fuel {
    pub fn depth(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Fuel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sierpiński truth value observed at finite fuel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Confirmed,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Confirmed
        } else {
            Verdict::Unknown
        }
    }

    pub fn is_confirmed(self) -> bool {
        self == Verdict::Confirmed
    }
}

/// Element of `2⊥`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoBot {
    Zero,
    One,
    Bot,
}

impl TwoBot {
    pub fn is_committed(self) -> bool {
        self != TwoBot::Bot
    }
}

/// Element of `k⊥`: a color below `k`, or no answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KBot {
    Color(usize),
    Bot,
}

impl KBot {
    pub fn color(self) -> Option<usize> {
        match self {
            KBot::Color(j) => Some(j),
            KBot::Bot => None,
        }
    }
}

/// A semidecidable proposition, evaluated from scratch at each fuel.
pub trait SemiDecider: Sync {
    fn decide(&self, fuel: Fuel) -> Verdict;
}

impl<F> SemiDecider for F
where
    F: Fn(Fuel) -> Verdict + Sync,
{
    fn decide(&self, fuel: Fuel) -> Verdict {
        self(fuel)
    }
}

/// Finite join: confirmed iff some decider confirms at this fuel.
pub fn any_of<D: SemiDecider>(deciders: &[D], fuel: Fuel) -> Verdict {
    Verdict::from_bool(par::any(deciders, |d| d.decide(fuel).is_confirmed()))
}

/// Finite meet: confirmed iff every decider confirms at this fuel.
pub fn all_of<D: SemiDecider>(deciders: &[D], fuel: Fuel) -> Verdict {
    Verdict::from_bool(par::all(deciders, |d| d.decide(fuel).is_confirmed()))
}

/// Combine two mutually exclusive semi-decisions observed at the same fuel.
pub fn race_verdicts(yes: Verdict, no: Verdict, fuel: Fuel) -> Result<TwoBot> {
    match (yes, no) {
        (Verdict::Confirmed, Verdict::Confirmed) => Err(Error::IncoherentRace { fuel: fuel.0 }),
        (Verdict::Confirmed, Verdict::Unknown) => Ok(TwoBot::One),
        (Verdict::Unknown, Verdict::Confirmed) => Ok(TwoBot::Zero),
        (Verdict::Unknown, Verdict::Unknown) => Ok(TwoBot::Bot),
    }
}

/// Run both sides at the same fuel: `One` if the yes-side confirms, `Zero`
/// if the no-side does.
pub fn race(yes: &dyn SemiDecider, no: &dyn SemiDecider, fuel: Fuel) -> Result<TwoBot> {
    let (a, b) = par::join(|| yes.decide(fuel), || no.decide(fuel));
    race_verdicts(a, b, fuel)
}
