mod common;

use proptest::prelude::*;

use common::*;
use cverify::kernel::{race_verdicts, Fuel, TwoBot, Verdict};
use cverify::numerics::{
    dist_range, dyadic_step, format_rational, inf_of_confirmed_set, int, parse_rational,
    sup_of_confirmed_set, ApproxState, Interval,
};

proptest! {
    #[test]
    fn dist_range_contains_every_distance(
        (b, y) in box_and_point(3, 2),
        x in point(3, 2),
        m in metric(),
    ) {
        let r = dist_range(&b, &x, m).unwrap();
        prop_assert!(r.contains(&m.key(&y, &x)));
    }

    #[test]
    fn interval_ops_are_sound(
        a in interval(3), b in interval(3),
        s in 0i64..=16, t in 0i64..=16, c in rational(2),
    ) {
        let pick = |i: &Interval, w: i64| i.lo() + i.width() * cverify::numerics::rat(w, 16);
        let (x, y) = (pick(&a, s), pick(&b, t));
        prop_assert!(a.add(&b).contains(&(&x + &y)));
        prop_assert!(a.sub(&b).contains(&(&x - &y)));
        prop_assert!(a.scale(&c).contains(&(&x * &c)));
        prop_assert!(a.shift(&c).contains(&(&x + &c)));
        prop_assert!(a.square().contains(&(&x * &x)));
        let ax = if x < int(0) { -x.clone() } else { x.clone() };
        prop_assert!(a.abs().contains(&ax));
        prop_assert!(a.relu().contains(&x.clone().max(int(0))));
        prop_assert!(a.max(&b).contains(&x.clone().max(y.clone())));
        prop_assert!(a.min(&b).contains(&x.min(y)));
    }

    #[test]
    fn split_all_covers_parent((b, y) in box_and_point(2, 2)) {
        let kids = b.split_all();
        prop_assert!(kids.iter().any(|k| k.contains(&y)));
        for k in &kids {
            prop_assert!(b.intersect(k).as_ref() == Some(k));
        }
    }

    #[test]
    fn rationals_round_trip(r in rational(50)) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn sup_of_lower_ray_converges(c in rational(3), d in 0u32..10) {
        let cut = c.clone();
        let lower = sup_of_confirmed_set(move |r, _| Verdict::from_bool(r < &cut), int(4));
        let a = lower.approx(Fuel(d));
        prop_assert!(a.value <= c);
        prop_assert!(&c - &a.value <= dyadic_step(d) * int(2));
    }

    #[test]
    fn inf_of_upper_ray_converges(c in rational(3).prop_filter("in range", |c| *c >= int(0)), d in 0u32..10) {
        let cut = c.clone();
        let upper = inf_of_confirmed_set(move |r, _| Verdict::from_bool(r > &cut), int(4));
        let a = upper.approx(Fuel(d));
        prop_assert!(a.value >= c);
        prop_assert!(&a.value - &c <= dyadic_step(d) * int(2));
    }

    #[test]
    fn one_sided_reals_are_monotone(c in rational(3), d in 0u32..8, e in 0u32..4) {
        // Membership that only becomes visible with enough fuel.
        let (cut, cut2) = (c.clone(), c.clone());
        let lower = sup_of_confirmed_set(
            move |r, f| Verdict::from_bool(r < &cut && f.0 >= 2),
            int(4),
        );
        let upper = inf_of_confirmed_set(
            move |r, f| Verdict::from_bool(r > &cut2 && f.0 >= 2),
            int(4),
        );
        let (l0, l1) = (lower.approx(Fuel(d)), lower.approx(Fuel(d + e)));
        let (u0, u1) = (upper.approx(Fuel(d)), upper.approx(Fuel(d + e)));
        prop_assert!(l0.value <= l1.value);
        prop_assert!(u0.value >= u1.value);
        if l0.state != ApproxState::Sentinel {
            prop_assert!(l1.state != ApproxState::Sentinel);
        }
    }

    #[test]
    fn race_never_commits_both_ways(y in 0u32..12, n in 0u32..12) {
        let mut seen = Vec::new();
        for d in 0..16 {
            let yes = Verdict::from_bool(d >= y);
            let no = Verdict::from_bool(d >= n);
            match race_verdicts(yes, no, Fuel(d)) {
                Ok(v) if v.is_committed() => seen.push(v),
                Ok(_) => {}
                Err(_) => prop_assert!(d >= y && d >= n),
            }
        }
        prop_assert!(!(seen.contains(&TwoBot::One) && seen.contains(&TwoBot::Zero)));
    }
}
