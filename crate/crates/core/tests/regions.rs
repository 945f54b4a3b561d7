mod common;

use proptest::prelude::*;

use common::*;
use cverify::kernel::Fuel;
use cverify::numerics::{
    dyadic_step, int, rat, Interval, IntervalBox, MetricKind, Point, Rational,
};
use cverify::regions::{
    annulus, closed_ball, domain_box, outside_ball_compact, outside_ball_overt, VkSet,
};

fn volume(boxes: &[IntervalBox]) -> Rational {
    boxes
        .iter()
        .map(|b| b.sides().iter().map(|s| s.width()).product::<Rational>())
        .sum()
}

/// Independent membership: distance key against radius key.
fn key(m: MetricKind, y: &[Rational], x: &[Rational]) -> Rational {
    let d = y.iter().zip(x).map(|(a, b)| {
        let t = a - b;
        if t < int(0) {
            -t
        } else {
            t
        }
    });
    match m {
        MetricKind::Max => d.max().unwrap(),
        MetricKind::EuclidSq => d.map(|t| &t * &t).sum(),
    }
}

fn rkey(m: MetricKind, r: &Rational) -> Rational {
    match m {
        MetricKind::Max => r.clone(),
        MetricKind::EuclidSq => r * r,
    }
}

#[derive(Clone, Debug)]
enum Target {
    Ball(Point, Rational, MetricKind),
    Annulus(Point, Rational, Rational, MetricKind),
}

impl Target {
    fn build(&self) -> VkSet {
        match self {
            Target::Ball(c, r, m) => closed_ball(c, r, *m).unwrap(),
            Target::Annulus(c, i, o, m) => annulus(c, i, o, *m).unwrap(),
        }
    }

    fn contains(&self, y: &[Rational]) -> bool {
        match self {
            Target::Ball(c, r, m) => key(*m, y, c) <= rkey(*m, r),
            Target::Annulus(c, i, o, m) => {
                let k = key(*m, y, c);
                k >= rkey(*m, i) && k <= rkey(*m, o)
            }
        }
    }
}

fn target() -> impl Strategy<Value = Target> {
    (1usize..=2)
        .prop_flat_map(|dims| {
            (
                prop::collection::vec(dyadic(1, 3), dims),
                1i64..=8,
                0i64..=4,
                metric(),
                any::<bool>(),
            )
        })
        .prop_map(|(c, r, w, m, ring)| {
            let outer = rat(r, 8);
            if ring && r > w {
                Target::Annulus(c, rat(r - w, 8) - rat(1, 8), outer, m)
            } else {
                Target::Ball(c, outer, m)
            }
        })
}

fn corners(b: &IntervalBox) -> Vec<Point> {
    b.sides().iter().fold(vec![vec![]], |acc, s| {
        acc.into_iter()
            .flat_map(|p: Point| {
                [s.lo(), s.hi()].into_iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect()
    })
}

/// A point of the target's bounding box, by convex weights.
fn probe(t: &Target, weights: &[i64]) -> Point {
    let (c, r) = match t {
        Target::Ball(c, r, _) | Target::Annulus(c, _, r, _) => (c, r),
    };
    c.iter()
        .zip(weights)
        .map(|(x, w)| x - r + r * rat(2 * w, 64))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn covers_are_sound(t in target(), ws in prop::collection::vec(prop::collection::vec(0i64..=64, 2), 12)) {
        let set = t.build();
        let inside: Vec<Point> = ws.iter().map(|w| probe(&t, w)).filter(|p| t.contains(p)).collect();
        for d in 0..=5 {
            let cover = set.compact.cover_at(Fuel(d));
            for p in &inside {
                prop_assert!(cover.iter().any(|b| b.contains(p)), "fuel {d} misses {p:?}");
            }
        }
    }

    #[test]
    fn cover_overshoot_shrinks(t in target()) {
        let set = t.build();
        let vols: Vec<Rational> = (0..=6).map(|d| volume(&set.compact.cover_at(Fuel(d)))).collect();
        for w in vols.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        // Balls are convex, so a box with every corner inside lies inside.
        if let Target::Ball(..) = t {
            let excess = |d: u32| {
                let cover = set.compact.cover_at(Fuel(d));
                let boundary: Vec<IntervalBox> = cover
                    .into_iter()
                    .filter(|b| !corners(b).iter().all(|p| t.contains(p)))
                    .collect();
                volume(&boundary)
            };
            prop_assert!(excess(6) * int(4) <= vols[0].clone());
            prop_assert!(excess(6) <= excess(3));
        }
    }

    #[test]
    fn enumerated_points_belong(t in target()) {
        let set = t.build();
        for d in 0..=4 {
            for p in set.overt.points_at(Fuel(d)) {
                prop_assert!(t.contains(&p));
            }
        }
    }

    #[test]
    fn overt_points_are_covered(t in target()) {
        let set = t.build();
        for d in 0..=4 {
            let cover = set.compact.cover_at(Fuel(d));
            for p in set.overt.points_at(Fuel(d.min(3))) {
                prop_assert!(cover.iter().any(|b| b.contains(&p)));
            }
        }
    }

    #[test]
    fn enumeration_is_dense(t in target(), w in prop::collection::vec(0i64..=64, 2), d in 0u32..=4) {
        let y = probe(&t, &w);
        prop_assume!(t.contains(&y));
        let set = t.build();
        let step = dyadic_step(d);
        let found = set.overt.points_at(Fuel(d + 3)).iter().any(|p| key(MetricKind::Max, p, &y) <= step);
        prop_assert!(found);
    }

    #[test]
    fn outside_ball_sides_keep_strictness(
        x in dyadic(1, 3),
        e in 1i64..=4,
        w in 0i64..=64,
    ) {
        let domain = domain_box(vec![Interval::new(int(-1), int(1)).unwrap()]).unwrap();
        let eps = rat(e, 8);
        let xs = vec![x.clone()];
        let overt = outside_ball_overt(&domain, &xs, &eps, MetricKind::Max).unwrap();
        for p in overt.points_at(Fuel(5)) {
            prop_assert!(key(MetricKind::Max, &p, &xs) > eps);
        }
        let compact = outside_ball_compact(&domain, &xs, &eps, MetricKind::Max).unwrap();
        let y = int(-1) + rat(2 * w, 64);
        let on_edge = [&x + &eps, &x - &eps];
        for d in 0..=5 {
            let cover = compact.cover_at(Fuel(d));
            for p in on_edge.iter().chain([&y]) {
                let inside = *p >= int(-1) && *p <= int(1) && key(MetricKind::Max, std::slice::from_ref(p), &xs) >= eps;
                if inside {
                    prop_assert!(cover.iter().any(|b| b.contains(std::slice::from_ref(p))));
                }
            }
        }
    }
}
