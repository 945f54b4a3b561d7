use super::{Classifier, ColorEnvelope};
use crate::kernel::{Fuel, KBot};
use crate::numerics::{format_rational, Interval, IntervalBox, MetricKind, Point, Rational};

/// 1-nearest-neighbor classifier with a ⊥ band.
///
/// A query gets label `c` when its distance to the nearest `c`-labelled
/// sample point, plus the tie margin, is still strictly below its distance
/// to every point of another label. Distances are compared in metric key
/// units, so for `EuclidSq` the margin applies to squared distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearestNeighbor {
    points: Vec<(Point, usize)>,
    margin: Rational,
    metric: MetricKind,
    k: usize,
    dims: usize,
}

impl NearestNeighbor {
    pub fn new(
        points: Vec<(Point, usize)>,
        margin: Rational,
        metric: MetricKind,
        k: usize,
        dims: usize,
    ) -> Self {
        Self {
            points,
            margin,
            metric,
            k,
            dims,
        }
    }
}

fn per_label_min(k: usize, keys: impl Iterator<Item = (usize, Interval)>) -> Vec<Option<Interval>> {
    let mut best: Vec<Option<Interval>> = vec![None; k];
    for (label, r) in keys {
        if label >= k {
            continue;
        }
        best[label] = Some(match &best[label] {
            Some(b) => b.min(&r),
            None => r,
        });
    }
    best
}

/// Envelope of the 1-NN rule for every query in `query` and every
/// instantiation of the (possibly box-valued) training points.
pub fn nn_envelope(
    query: &IntervalBox,
    train: &[(IntervalBox, usize)],
    margin: &Rational,
    metric: MetricKind,
    k: usize,
) -> ColorEnvelope {
    let dist = per_label_min(
        k,
        train
            .iter()
            .map(|(b, l)| (*l, metric.key_range_boxes(query, b))),
    );
    let mut possible = Vec::new();
    let mut certain = false;
    for (c, dc) in dist.iter().enumerate() {
        let Some(dc) = dc else { continue };
        let others = || {
            dist.iter()
                .enumerate()
                .filter(move |&(l, _)| l != c)
                .filter_map(|(_, d)| d.as_ref())
        };
        let min_hi = others().map(|d| d.hi()).min();
        let min_lo = others().map(|d| d.lo()).min();
        if min_hi.is_none_or(|m| dc.lo() + margin < *m) {
            possible.push(c);
        }
        if min_lo.is_none_or(|m| dc.hi() + margin < *m) {
            certain = true;
        }
    }
    ColorEnvelope::new(possible, !certain)
}

impl Classifier for NearestNeighbor {
    fn colors(&self) -> usize {
        self.k
    }

    fn dims(&self) -> usize {
        self.dims
    }

    fn eval_point(&self, x: &[Rational], _fuel: Fuel) -> KBot {
        let dist = per_label_min(
            self.k,
            self.points
                .iter()
                .map(|(p, l)| (*l, Interval::point(self.metric.key(x, p)))),
        );
        for (c, dc) in dist.iter().enumerate() {
            let Some(dc) = dc else { continue };
            let beats_all = dist
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != c)
                .filter_map(|(_, d)| d.as_ref())
                .all(|d| dc.lo() + &self.margin < *d.lo());
            if beats_all {
                return KBot::Color(c);
            }
        }
        KBot::Bot
    }

    fn eval_box(&self, b: &IntervalBox, _fuel: Fuel) -> ColorEnvelope {
        let train: Vec<(IntervalBox, usize)> = self
            .points
            .iter()
            .map(|(p, l)| (IntervalBox::from_point(p), *l))
            .collect();
        nn_envelope(b, &train, &self.margin, self.metric, self.k)
    }

    fn describe(&self) -> String {
        format!(
            "1-nearest-neighbor over {} points, tie margin {} ({})",
            self.points.len(),
            format_rational(&self.margin),
            self.metric.name()
        )
    }
}
