//! Compact and overt presentations of subsets of ℝⁿ.
//!
//! A [`CompactSet`] supports universal quantification (refinable box
//! covers); an [`OvertSet`] supports existential quantification (a dense,
//! graded enumeration of exact points). A [`VkSet`] carries both for the
//! same underlying set.

mod compact;
mod overt;
mod shape;

pub use compact::CompactSet;
pub use overt::{CellVerdict, OvertSet};
pub use shape::{GridKind, Shape};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::numerics::{Interval, IntervalBox, MetricKind, Point, Rational};

/// A set known both as a compact and as an overt set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VkSet {
    pub compact: CompactSet,
    pub overt: OvertSet,
}

impl VkSet {
    fn from_shape(shape: Shape, anchors: Vec<Point>) -> Self {
        Self {
            compact: CompactSet::new(shape.clone()),
            overt: OvertSet::new(shape, anchors),
        }
    }

    pub fn empty(dims: usize) -> Self {
        Self::from_shape(Shape::Empty { dims }, vec![])
    }

    pub fn shape(&self) -> &Shape {
        self.compact.shape()
    }

    pub fn dims(&self) -> usize {
        self.compact.dims()
    }
}

fn check_point(x: &[Rational]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::InvalidInput(
            "points need at least one coordinate".into(),
        ));
    }
    Ok(())
}

/// Closed ball `{ y : d(x, y) <= r }`; empty when `r < 0`.
pub fn closed_ball(x: &[Rational], r: &Rational, metric: MetricKind) -> Result<VkSet> {
    check_point(x)?;
    if r.is_negative() {
        return Ok(VkSet::empty(x.len()));
    }
    Ok(VkSet::from_shape(
        Shape::Ball {
            center: x.to_vec(),
            radius: r.clone(),
            metric,
            open: false,
        },
        vec![x.to_vec()],
    ))
}

/// Overt presentation of the open ball `{ y : d(x, y) < r }`.
pub fn open_ball(x: &[Rational], r: &Rational, metric: MetricKind) -> Result<OvertSet> {
    check_point(x)?;
    let shape = if r.is_positive() {
        Shape::Ball {
            center: x.to_vec(),
            radius: r.clone(),
            metric,
            open: true,
        }
    } else {
        Shape::Empty { dims: x.len() }
    };
    Ok(OvertSet::new(shape, vec![x.to_vec()]))
}

/// Product box from its sides.
pub fn domain_box(sides: Vec<Interval>) -> Result<VkSet> {
    let b = IntervalBox::new(sides)?;
    Ok(VkSet::from_shape(Shape::Box(b), vec![]))
}

/// `{ y : inner <= d(x, y) <= outer }`.
pub fn annulus(
    x: &[Rational],
    inner: &Rational,
    outer: &Rational,
    metric: MetricKind,
) -> Result<VkSet> {
    check_point(x)?;
    if inner > outer {
        return Err(Error::InvalidInput(format!(
            "annulus inner radius {} exceeds outer radius {}",
            inner, outer
        )));
    }
    Ok(VkSet::from_shape(
        Shape::Annulus {
            center: x.to_vec(),
            inner: inner.clone(),
            outer: outer.clone(),
            metric,
        },
        vec![],
    ))
}

fn outside_shape(
    domain: &VkSet,
    x: &[Rational],
    eps: &Rational,
    metric: MetricKind,
    strict: bool,
) -> Result<Shape> {
    if !eps.is_positive() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    if x.len() != domain.dims() {
        return Err(Error::DimensionMismatch {
            expected: domain.dims(),
            found: x.len(),
        });
    }
    Ok(Shape::Outside {
        base: Box::new(domain.shape().clone()),
        center: x.to_vec(),
        eps: eps.clone(),
        metric,
        strict,
    })
}

/// Overt presentation of `{ y ∈ domain : d(x, y) > eps }`, dense in its
/// closure. Use [`OvertSet::is_empty_up_to`] to flag a region that has not
/// produced a point yet.
pub fn outside_ball_overt(
    domain: &VkSet,
    x: &[Rational],
    eps: &Rational,
    metric: MetricKind,
) -> Result<OvertSet> {
    let shape = outside_shape(domain, x, eps, metric, true)?;
    Ok(OvertSet::new(shape, domain.overt.anchors().to_vec()))
}

/// Compact cover of `{ y ∈ domain : d(x, y) >= eps }`: the domain's cover
/// minus boxes lying strictly inside the open ball.
pub fn outside_ball_compact(
    domain: &VkSet,
    x: &[Rational],
    eps: &Rational,
    metric: MetricKind,
) -> Result<CompactSet> {
    let shape = outside_shape(domain, x, eps, metric, false)?;
    Ok(CompactSet::with_roots(
        shape,
        domain.compact.roots().to_vec(),
    ))
}
