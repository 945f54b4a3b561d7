mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::*;
use cverify::classifiers::{Classifier, Hyperplane};
use cverify::numerics::{int, rat, ApproxState, MetricKind, Point, Rational};
use cverify::regions::{closed_ball, VkSet};
use cverify::verify::{
    constant_value, exists_value, fixed_value, forall_value, locally_constant, optimal_radius,
    radius_lower, radius_upper, Witness,
};
use cverify::{Fuel, KBot, TwoBot, Verdict};

const MAX_FUEL: u32 = 6;

/// Exact distance key from `x` to the plane `w·y + b = 0`.
fn plane_key(w: &[Rational], b: &Rational, x: &[Rational], m: MetricKind) -> Rational {
    let v = dot(w, x, b);
    match m {
        // Dual of the max norm is the 1-norm.
        MetricKind::Max => abs(&v) / w.iter().map(abs).sum::<Rational>(),
        MetricKind::EuclidSq => &v * &v / w.iter().map(|t| t * t).sum::<Rational>(),
    }
}

fn rkey(m: MetricKind, r: &Rational) -> Rational {
    match m {
        MetricKind::Max => r.clone(),
        MetricKind::EuclidSq => r * r,
    }
}

fn monotone_verdicts(vs: &[Verdict]) -> bool {
    vs.windows(2)
        .all(|p| !p[0].is_confirmed() || p[1].is_confirmed())
}

fn monotone_two(vs: &[TwoBot]) -> bool {
    vs.windows(2).all(|p| !p[0].is_committed() || p[1] == p[0])
}

fn ball(c: &Point, r: &Rational, m: MetricKind) -> VkSet {
    closed_ball(c, r, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn region_queries_are_monotone(
        (w, b) in plane(2),
        c in point(2, 1),
        r in 1i64..=8,
        m in metric(),
        color in 0usize..2,
    ) {
        let f = Hyperplane::new(w, b).unwrap();
        let a = ball(&c, &rat(r, 8), m);
        let fuels = || (0..=MAX_FUEL).map(Fuel);
        let ex: Vec<Verdict> = fuels().map(|d| exists_value(color, &a.overt, &f, d).unwrap().value).collect();
        let fa: Vec<Verdict> = fuels().map(|d| forall_value(color, &a.compact, &f, d).unwrap()).collect();
        let fx: Vec<TwoBot> = fuels().map(|d| fixed_value(color, &a, &f, d).unwrap().value).collect();
        let cv: Vec<TwoBot> = fuels().map(|d| constant_value(&a, &f, d).unwrap().value).collect();
        prop_assert!(monotone_verdicts(&ex));
        prop_assert!(monotone_verdicts(&fa));
        prop_assert!(monotone_two(&fx));
        prop_assert!(monotone_two(&cv));
    }

    #[test]
    fn witnesses_replay(
        (w, b) in plane(2),
        c in point(2, 1),
        r in 1i64..=8,
        m in metric(),
    ) {
        let f = Hyperplane::new(w.clone(), b.clone()).unwrap();
        let rad = rat(r, 8);
        let a = ball(&c, &rad, m);
        for color in 0..2 {
            let out = exists_value(color, &a.overt, &f, Fuel(MAX_FUEL)).unwrap();
            for wit in out.witnesses {
                let Witness::Point { point, color: got } = wit else { panic!("point witness") };
                prop_assert_eq!(got, color);
                prop_assert!(m.key(&point, &c) <= rkey(m, &rad));
                let v = dot(&w, &point, &b);
                let right_side = if color == 1 { v > int(0) } else { v < int(0) };
                prop_assert!(right_side);
            }
        }
    }

    #[test]
    fn local_constancy_matches_plane_distance(
        (w, b) in plane(2),
        x in point(2, 1),
        r in 1i64..=16,
        m in metric(),
    ) {
        let f = Hyperplane::new(w.clone(), b.clone()).unwrap();
        let rad = rat(r, 16);
        let truth = plane_key(&w, &b, &x, m);
        let rk = rkey(m, &rad);
        let vs: Vec<TwoBot> = (0..=MAX_FUEL)
            .map(|d| locally_constant(&x, &rad, m, &f, Fuel(d)).unwrap().value)
            .collect();
        prop_assert!(monotone_two(&vs));
        match vs[MAX_FUEL as usize] {
            // The closed ball misses the plane.
            TwoBot::One => prop_assert!(rk < truth),
            // The open ball crosses it.
            TwoBot::Zero => prop_assert!(rk > truth),
            TwoBot::Bot => {}
        }
        // A smaller ball never reports a crossing that a larger one excludes.
        if vs[MAX_FUEL as usize] == TwoBot::One {
            let half = &rad / int(2);
            for d in 0..=MAX_FUEL {
                prop_assert_ne!(locally_constant(&x, &half, m, &f, Fuel(d)).unwrap().value, TwoBot::Zero);
            }
        }
    }

    #[test]
    fn radius_bounds_sandwich_the_plane_distance(
        (w, b) in plane(2),
        x in point(2, 1),
        m in metric(),
    ) {
        let f: Arc<dyn Classifier> = Arc::new(Hyperplane::new(w.clone(), b.clone()).unwrap());
        prop_assume!(f.eval_point(&x, Fuel(0)) != KBot::Bot);
        let truth = plane_key(&w, &b, &x, m);
        let ceiling = int(8);
        let lower = radius_lower(&x, m, f.clone(), &ceiling).unwrap();
        let upper = radius_upper(&x, m, f.clone(), &ceiling).unwrap();
        let mut prev: Option<(Rational, Rational)> = None;
        for d in 0..=MAX_FUEL {
            let (l, u) = (lower.approx(Fuel(d)), upper.approx(Fuel(d)));
            if l.value >= int(0) {
                prop_assert!(rkey(m, &l.value) <= truth);
            }
            if u.state == ApproxState::Confirmed {
                prop_assert!(rkey(m, &u.value) >= truth);
            }
            if let Some((pl, pu)) = &prev {
                prop_assert!(*pl <= l.value);
                prop_assert!(*pu >= u.value);
            }
            prev = Some((l.value, u.value));
        }
    }

    #[test]
    fn optimal_radius_brackets(
        (w, b) in plane(2),
        x in point(2, 1),
        m in metric(),
    ) {
        let f: Arc<dyn Classifier> = Arc::new(Hyperplane::new(w.clone(), b.clone()).unwrap());
        prop_assume!(f.eval_point(&x, Fuel(0)) != KBot::Bot);
        let truth = plane_key(&w, &b, &x, m);
        let tol = rat(1, 8);
        let rep = optimal_radius(&x, m, f, &int(8), &tol, Fuel(MAX_FUEL + 2)).unwrap();
        if rep.lower.value >= int(0) {
            prop_assert!(rkey(m, &rep.lower.value) <= truth);
        }
        if rep.converged {
            prop_assert!(rkey(m, &rep.upper.value) >= truth);
            prop_assert!(rep.gap() <= tol);
        }
    }
}
