#![allow(dead_code)]

use proptest::prelude::*;

use cverify::numerics::{rat, Interval, IntervalBox, MetricKind, Point, Rational};

pub fn rational(span: i64) -> impl Strategy<Value = Rational> {
    (
        -span * 16..=span * 16,
        prop::sample::select(vec![1i64, 2, 3, 4, 5, 8, 16]),
    )
        .prop_map(|(n, d)| rat(n, 16 * d))
}

pub fn dyadic(span: i64, bits: u32) -> impl Strategy<Value = Rational> {
    let den = 1i64 << bits;
    (-span * den..=span * den).prop_map(move |n| rat(n, den))
}

pub fn point(dims: usize, span: i64) -> impl Strategy<Value = Point> {
    prop::collection::vec(rational(span), dims)
}

pub fn interval(span: i64) -> impl Strategy<Value = Interval> {
    (rational(span), rational(span)).prop_map(|(a, b)| {
        if a <= b {
            Interval::new(a, b).unwrap()
        } else {
            Interval::new(b, a).unwrap()
        }
    })
}

/// A box together with a point inside it, picked by convex weights.
pub fn box_and_point(dims: usize, span: i64) -> impl Strategy<Value = (IntervalBox, Point)> {
    prop::collection::vec((interval(span), 0i64..=32), dims).prop_map(|sides| {
        let p = sides
            .iter()
            .map(|(s, t)| s.lo() + s.width() * rat(*t, 32))
            .collect();
        let b = IntervalBox::new(sides.into_iter().map(|(s, _)| s).collect()).unwrap();
        (b, p)
    })
}

pub fn metric() -> impl Strategy<Value = MetricKind> {
    prop::sample::select(vec![MetricKind::Max, MetricKind::EuclidSq])
}

/// Weights and offset of a plane in sixteenths, nonzero normal.
pub fn plane(dims: usize) -> impl Strategy<Value = (Vec<Rational>, Rational)> {
    (
        prop::collection::vec(-16i64..=16, dims)
            .prop_filter("nonzero normal", |w| w.iter().any(|&v| v != 0)),
        -16i64..=16,
    )
        .prop_map(|(w, b)| (w.into_iter().map(|v| rat(v, 16)).collect(), rat(b, 16)))
}

pub fn dot(w: &[Rational], x: &[Rational], b: &Rational) -> Rational {
    w.iter().zip(x).map(|(a, t)| a * t).sum::<Rational>() + b
}

pub fn abs(r: &Rational) -> Rational {
    if *r < Rational::from_integer(0.into()) {
        -r.clone()
    } else {
        r.clone()
    }
}
