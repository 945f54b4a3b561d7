//! Terminating, fuel-indexed semi-decision procedures for verifying
//! classifiers and learners over ℝⁿ.
//!
//! Every procedure takes an explicit [`Fuel`] budget and returns a partial
//! truth value ([`Verdict`], [`TwoBot`] or [`KBot`]). Answers are sound at
//! every fuel and never retracted as fuel grows; with enough fuel they are
//! reached whenever the underlying property holds robustly.

pub mod classifiers;
pub mod error;
pub mod kernel;
pub mod learners;
pub mod numerics;
pub mod par;
pub mod regions;
pub mod schema;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{Fuel, KBot, TwoBot, Verdict};
