//! Verification queries on a single classifier: color questions over
//! regions, local constancy (absence of adversarial examples in a ball),
//! and the optimal robustness radius from both sides.
//!
//! Each query is a pure function of one fuel value; iterating fuel is the
//! caller's business (see [`optimal_radius`] for the one exception).

use std::sync::Arc;

use num_traits::Signed;

use crate::classifiers::Classifier;
use crate::error::{Error, Result};
use crate::kernel::{race_verdicts, Fuel, KBot, TwoBot, Verdict};
use crate::numerics::{
    inf_on_grid, sup_of_confirmed_set, Approx, ApproxState, LowerReal, MetricKind, Point, Rational,
    UpperReal,
};
use crate::regions::CellVerdict;
use crate::regions::{closed_ball, open_ball, CompactSet, OvertSet, VkSet};

/// Certificate attached to a committed existential answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `f(point) = color`.
    Point { point: Point, color: usize },
    /// Training on the base sample extended by `added` gives `color` at the
    /// query point.
    Augmentation {
        added: Vec<(Point, usize)>,
        color: usize,
    },
    /// Training on `sample` gives `color` at `sample[index]`, whose own
    /// label differs.
    Deviation {
        sample: Vec<(Point, usize)>,
        index: usize,
        color: usize,
    },
}

/// A partial answer plus the witnesses backing its committed branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome<T> {
    pub value: T,
    pub witnesses: Vec<Witness>,
}

impl<T> Outcome<T> {
    pub fn bare(value: T) -> Self {
        Self {
            value,
            witnesses: vec![],
        }
    }
}

pub(crate) fn check_color(color: usize, k: usize) -> Result<()> {
    if color < k {
        Ok(())
    } else {
        Err(Error::ColorOutOfRange { color, k })
    }
}

pub(crate) fn check_dims(f: &dyn Classifier, n: usize) -> Result<()> {
    if f.dims() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: f.dims(),
            found: n,
        })
    }
}

fn find_color(color: usize, a: &OvertSet, f: &dyn Classifier, fuel: Fuel) -> Option<Witness> {
    a.search(
        fuel,
        |b| f.eval_box(b, fuel).admits(color),
        |p| (f.eval_point(p, fuel) == KBot::Color(color)).then_some(()),
    )
    .map(|(point, ())| Witness::Point { point, color })
}

fn all_color(color: usize, a: &CompactSet, f: &dyn Classifier, fuel: Fuel) -> bool {
    a.check_all(fuel, |b| f.eval_box(b, fuel).is_exactly(color))
}

/// Semi-decides `∃ x ∈ A. f(x) = color` over the overt enumeration.
pub fn exists_value(
    color: usize,
    a: &OvertSet,
    f: &dyn Classifier,
    fuel: Fuel,
) -> Result<Outcome<Verdict>> {
    check_color(color, f.colors())?;
    check_dims(f, a.dims())?;
    Ok(match find_color(color, a, f, fuel) {
        Some(w) => Outcome {
            value: Verdict::Confirmed,
            witnesses: vec![w],
        },
        None => Outcome::bare(Verdict::Unknown),
    })
}

/// Semi-decides `∀ x ∈ A. f(x) = color` over the compact cover.
pub fn forall_value(
    color: usize,
    a: &CompactSet,
    f: &dyn Classifier,
    fuel: Fuel,
) -> Result<Verdict> {
    check_color(color, f.colors())?;
    check_dims(f, a.dims())?;
    Ok(Verdict::from_bool(all_color(color, a, f, fuel)))
}

/// `One` iff every point of `A` has color `color`; `Zero` iff some point
/// has another color.
pub fn fixed_value(
    color: usize,
    a: &VkSet,
    f: &dyn Classifier,
    fuel: Fuel,
) -> Result<Outcome<TwoBot>> {
    check_color(color, f.colors())?;
    check_dims(f, a.dims())?;
    let yes = Verdict::from_bool(all_color(color, &a.compact, f, fuel));
    let witness = (0..f.colors())
        .filter(|&m| m != color)
        .find_map(|m| find_color(m, &a.overt, f, fuel));
    let value = race_verdicts(yes, Verdict::from_bool(witness.is_some()), fuel)?;
    Ok(Outcome {
        value,
        witnesses: witness.into_iter().collect(),
    })
}

/// `One` iff `f` is constant (and defined) on `A`; `Zero` iff for every
/// color some point of `A` has a different one.
pub fn constant_value(a: &VkSet, f: &dyn Classifier, fuel: Fuel) -> Result<Outcome<TwoBot>> {
    check_dims(f, a.dims())?;
    let k = f.colors();
    let yes = (0..k).any(|n| all_color(n, &a.compact, f, fuel));
    let found: Vec<Witness> = (0..k)
        .filter_map(|m| find_color(m, &a.overt, f, fuel))
        .collect();
    let colors: Vec<usize> = found
        .iter()
        .map(|w| match w {
            Witness::Point { color, .. } => *color,
            _ => unreachable!("point witnesses only"),
        })
        .collect();
    let no = k > 0 && (0..k).all(|n| colors.iter().any(|&m| m != n));
    let value = race_verdicts(Verdict::from_bool(yes), Verdict::from_bool(no), fuel)?;
    let witnesses = if value == TwoBot::Zero { found } else { vec![] };
    Ok(Outcome { value, witnesses })
}

/// `One` iff `f` takes a single defined value on the closed ball `B̄(x, r)`;
/// `Zero` iff two points of the open ball `B(x, r)` get distinct colors.
pub fn locally_constant(
    x: &[Rational],
    r: &Rational,
    metric: MetricKind,
    f: &dyn Classifier,
    fuel: Fuel,
) -> Result<Outcome<TwoBot>> {
    if !r.is_positive() {
        return Err(Error::NonpositiveRadius);
    }
    check_dims(f, x.len())?;
    let closed = closed_ball(x, r, metric)?;
    let open = open_ball(x, r, metric)?;
    let yes = (0..f.colors()).any(|n| all_color(n, &closed.compact, f, fuel));
    let found: Vec<Witness> = (0..f.colors())
        .filter_map(|m| find_color(m, &open, f, fuel))
        .take(2)
        .collect();
    let no = found.len() >= 2;
    let value = race_verdicts(Verdict::from_bool(yes), Verdict::from_bool(no), fuel)?;
    let witnesses = if value == TwoBot::Zero { found } else { vec![] };
    Ok(Outcome { value, witnesses })
}

fn check_ceiling(ceiling: &Rational) -> Result<()> {
    if ceiling.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidInput("ceiling must be positive".into()))
    }
}

/// Lower approximations of `sup { r : ∃ i ∀ y ∈ B̄(x, r). f(y) = i }`.
/// Negative radii qualify vacuously, so the approximations never fall
/// below `-2^-d` once anything is known; `+∞` is capped at `ceiling`.
pub fn radius_lower(
    x: &[Rational],
    metric: MetricKind,
    f: Arc<dyn Classifier>,
    ceiling: &Rational,
) -> Result<LowerReal> {
    check_ceiling(ceiling)?;
    check_dims(f.as_ref(), x.len())?;
    let x = x.to_vec();
    Ok(sup_of_confirmed_set(
        move |r, fuel| {
            if r.is_negative() {
                return Verdict::Confirmed;
            }
            let ball = closed_ball(&x, r, metric).expect("center validated");
            Verdict::from_bool(
                (0..f.colors()).any(|n| all_color(n, &ball.compact, f.as_ref(), fuel)),
            )
        },
        ceiling.clone(),
    ))
}

/// One fuel step of the upper radius bound: the smallest grid radius whose
/// closed ball contains an enumerated point colored differently from `x`,
/// together with that point.
pub fn radius_upper_at(
    x: &[Rational],
    metric: MetricKind,
    f: &dyn Classifier,
    ceiling: &Rational,
    fuel: Fuel,
) -> Result<(Approx, Option<Witness>)> {
    check_ceiling(ceiling)?;
    check_dims(f, x.len())?;
    let sentinel = Approx {
        value: ceiling.clone(),
        state: ApproxState::Sentinel,
    };
    let KBot::Color(c) = f.eval_point(x, fuel) else {
        return Ok((sentinel, None));
    };
    let search = closed_ball(x, ceiling, metric)?.overt;
    let nearest = search.minimize(
        fuel,
        x,
        |p| metric.key(p, x),
        |b| metric.key_range(b, x).lo().clone(),
        |p| matches!(f.eval_point(p, fuel), KBot::Color(m) if m != c),
        |b| {
            let env = f.eval_box(b, fuel);
            if !env.admits_other_than(c) {
                CellVerdict::Prune
            } else if env.certain().is_some_and(|m| m != c) {
                CellVerdict::Uniform(())
            } else {
                CellVerdict::Refine
            }
        },
    );
    let Some((point, key)) = nearest else {
        return Ok((sentinel, None));
    };
    let approx = inf_on_grid(ceiling, fuel, |r| metric.radius_key(r) >= key);
    let color = f
        .eval_point(&point, fuel)
        .color()
        .expect("accepted points have a color");
    Ok((approx, Some(Witness::Point { point, color })))
}

/// Upper approximations of `inf { r >= 0 : ∃ y ∈ B(x, r). ⊥ ≠ f(x) ≠ f(y) ≠ ⊥ }`.
pub fn radius_upper(
    x: &[Rational],
    metric: MetricKind,
    f: Arc<dyn Classifier>,
    ceiling: &Rational,
) -> Result<UpperReal> {
    check_ceiling(ceiling)?;
    check_dims(f.as_ref(), x.len())?;
    let x = x.to_vec();
    let c = ceiling.clone();
    Ok(UpperReal::from_fn(ceiling.clone(), move |fuel| {
        radius_upper_at(&x, metric, f.as_ref(), &c, fuel)
            .expect("inputs validated")
            .0
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusStep {
    pub fuel: Fuel,
    pub lower: Approx,
    pub upper: Approx,
}

/// Two-sided bracket of the optimal robustness radius at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusReport {
    pub point: Point,
    pub metric: MetricKind,
    pub lower: Approx,
    pub upper: Approx,
    pub trace: Vec<RadiusStep>,
    /// Both sides committed and within tolerance. `false` means the fuel
    /// cap was hit; a lower bound saturated at the ceiling with no upper
    /// witness suggests the point lies outside the operation's domain.
    pub converged: bool,
    pub fuel_used: Fuel,
    pub witness: Option<Witness>,
}

impl RadiusReport {
    pub fn gap(&self) -> Rational {
        &self.upper.value - &self.lower.value
    }
}

/// Raise fuel from 0 until the two radius bounds are within `tol`, or
/// `max_fuel` is spent. The domain conditions of the optimal radius (a
/// defined color at `x`, some other color somewhere, no ⊥-only shells) are
/// the caller's obligation.
pub fn optimal_radius(
    x: &[Rational],
    metric: MetricKind,
    f: Arc<dyn Classifier>,
    ceiling: &Rational,
    tol: &Rational,
    max_fuel: Fuel,
) -> Result<RadiusReport> {
    if tol.is_negative() {
        return Err(Error::InvalidInput("tolerance must be nonnegative".into()));
    }
    let lower_real = radius_lower(x, metric, f.clone(), ceiling)?;
    let mut trace = Vec::new();
    for d in 0..=max_fuel.0 {
        let fuel = Fuel(d);
        let lower = lower_real.approx(fuel);
        let (upper, witness) = radius_upper_at(x, metric, f.as_ref(), ceiling, fuel)?;
        trace.push(RadiusStep {
            fuel,
            lower: lower.clone(),
            upper: upper.clone(),
        });
        let converged =
            lower.is_committed() && upper.is_committed() && &upper.value - &lower.value <= *tol;
        if converged || d == max_fuel.0 {
            return Ok(RadiusReport {
                point: x.to_vec(),
                metric,
                lower,
                upper,
                trace,
                converged,
                fuel_used: fuel,
                witness,
            });
        }
    }
    unreachable!("loop returns at max_fuel")
}
