//! Exact rational scalars, intervals, boxes, metrics and one-sided reals.

pub mod interval;
pub mod metric;
pub mod rational;
pub mod reals;

pub use interval::{Interval, IntervalBox};
pub use metric::{dist_range, MetricKind};
pub use rational::{
    dyadic_step, format_point, format_rational, int, parse_rational, point, rat, Point, Rational,
};
pub use reals::{
    inf_of_confirmed_set, inf_on_grid, sup_of_confirmed_set, sup_on_grid, Approx, ApproxState,
    LowerReal, UpperReal,
};
