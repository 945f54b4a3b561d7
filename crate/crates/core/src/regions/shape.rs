//! Symbolic descriptions of the subsets of ℝⁿ the engine quantifies over.

use std::fmt;

use num_traits::Signed;

use crate::numerics::{format_point, format_rational, IntervalBox, MetricKind, Point, Rational};

/// Which grid the overt side of a region enumerates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridKind {
    /// Points `j / 2^d`, shared by every region.
    Absolute,
    /// Points `lo + j (hi - lo) / 2^d` inside the region's bounding box.
    /// Dense even in degenerate or non-dyadic boxes.
    Relative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Empty {
        dims: usize,
    },
    Box(IntervalBox),
    /// `d(y, c) <= r`, or `< r` when `open`.
    Ball {
        center: Point,
        radius: Rational,
        metric: MetricKind,
        open: bool,
    },
    /// `inner <= d(y, c) <= outer`.
    Annulus {
        center: Point,
        inner: Rational,
        outer: Rational,
        metric: MetricKind,
    },
    /// Points of `base` with `d(y, c) > eps` (`strict`) or `>= eps`.
    Outside {
        base: std::boxed::Box<Shape>,
        center: Point,
        eps: Rational,
        metric: MetricKind,
        strict: bool,
    },
}

impl Shape {
    pub fn dims(&self) -> usize {
        match self {
            Shape::Empty { dims } => *dims,
            Shape::Box(b) => b.dims(),
            Shape::Ball { center, .. } | Shape::Annulus { center, .. } => center.len(),
            Shape::Outside { base, .. } => base.dims(),
        }
    }

    /// Bounding box, `None` when the set is known to be empty.
    pub fn bounds(&self) -> Option<IntervalBox> {
        match self {
            Shape::Empty { .. } => None,
            Shape::Box(b) => Some(b.clone()),
            Shape::Ball {
                center,
                radius,
                open,
                ..
            } => {
                if radius.is_negative() || (*open && !radius.is_positive()) {
                    None
                } else {
                    Some(IntervalBox::around(center, radius))
                }
            }
            Shape::Annulus {
                center,
                inner,
                outer,
                ..
            } => {
                if outer.is_negative() || inner > outer {
                    None
                } else {
                    Some(IntervalBox::around(center, outer))
                }
            }
            Shape::Outside { base, .. } => base.bounds(),
        }
    }

    pub fn grid(&self) -> GridKind {
        match self {
            Shape::Box(_) | Shape::Empty { .. } => GridKind::Relative,
            Shape::Ball { .. } | Shape::Annulus { .. } => GridKind::Absolute,
            Shape::Outside { base, .. } => base.grid(),
        }
    }

    /// Exact membership test.
    pub fn contains(&self, y: &[Rational]) -> bool {
        if y.len() != self.dims() {
            return false;
        }
        match self {
            Shape::Empty { .. } => false,
            Shape::Box(b) => b.contains(y),
            Shape::Ball {
                center,
                radius,
                metric,
                open,
            } => {
                if radius.is_negative() {
                    return false;
                }
                let key = metric.key(y, center);
                let rk = metric.radius_key(radius);
                if *open {
                    key < rk
                } else {
                    key <= rk
                }
            }
            Shape::Annulus {
                center,
                inner,
                outer,
                metric,
            } => {
                if outer.is_negative() {
                    return false;
                }
                let key = metric.key(y, center);
                let lower_ok = inner.is_negative() || key >= metric.radius_key(inner);
                lower_ok && key <= metric.radius_key(outer)
            }
            Shape::Outside {
                base,
                center,
                eps,
                metric,
                strict,
            } => {
                if !base.contains(y) {
                    return false;
                }
                let key = metric.key(y, center);
                let ek = metric.radius_key(eps);
                if *strict {
                    key > ek
                } else {
                    key >= ek
                }
            }
        }
    }

    /// Box filter: `false` guarantees the box misses the set.
    pub fn may_meet(&self, b: &IntervalBox) -> bool {
        if b.dims() != self.dims() {
            return false;
        }
        match self {
            Shape::Empty { .. } => false,
            Shape::Box(d) => d.intersect(b).is_some(),
            Shape::Ball {
                center,
                radius,
                metric,
                open,
            } => {
                if radius.is_negative() {
                    return false;
                }
                let range = metric.key_range(b, center);
                let rk = metric.radius_key(radius);
                if *open {
                    range.lo() < &rk
                } else {
                    range.lo() <= &rk
                }
            }
            Shape::Annulus {
                center,
                inner,
                outer,
                metric,
            } => {
                if outer.is_negative() || inner > outer {
                    return false;
                }
                let range = metric.key_range(b, center);
                let lower_ok = inner.is_negative() || range.hi() >= &metric.radius_key(inner);
                lower_ok && range.lo() <= &metric.radius_key(outer)
            }
            Shape::Outside {
                base,
                center,
                eps,
                metric,
                strict,
            } => {
                if !base.may_meet(b) {
                    return false;
                }
                let clipped = match base.bounds().and_then(|bb| bb.intersect(b)) {
                    Some(c) => c,
                    None => return false,
                };
                let range = metric.key_range(&clipped, center);
                let ek = metric.radius_key(eps);
                if *strict {
                    range.hi() > &ek
                } else {
                    range.hi() >= &ek
                }
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt = |p: &Point| format!("({})", format_point(p).join(", "));
        match self {
            Shape::Empty { dims } => write!(f, "empty(ℝ^{})", dims),
            Shape::Box(b) => write!(f, "box {}", b),
            Shape::Ball {
                center,
                radius,
                metric,
                open,
            } => write!(
                f,
                "{} ball center {} radius {} ({})",
                if *open { "open" } else { "closed" },
                pt(center),
                format_rational(radius),
                metric.name()
            ),
            Shape::Annulus {
                center,
                inner,
                outer,
                metric,
            } => write!(
                f,
                "annulus center {} radii [{}, {}] ({})",
                pt(center),
                format_rational(inner),
                format_rational(outer),
                metric.name()
            ),
            Shape::Outside {
                base,
                center,
                eps,
                metric,
                strict,
            } => write!(
                f,
                "points of {{{}}} with d(y, {}) {} {} ({})",
                base,
                pt(center),
                if *strict { ">" } else { ">=" },
                format_rational(eps),
                metric.name()
            ),
        }
    }
}
