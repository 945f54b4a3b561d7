use num_traits::{Signed, Zero};

use super::{Classifier, ColorEnvelope};
use crate::error::{Error, Result};
use crate::kernel::{Fuel, KBot};
use crate::numerics::{format_rational, Interval, IntervalBox, Rational};

/// Two-color linear classifier: color 1 where `w·x + b > 0`, color 0 where
/// `w·x + b < 0`, ⊥ on the hyperplane itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.is_empty() {
            return Err(Error::InvalidInput(
                "hyperplane needs at least one weight".into(),
            ));
        }
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::ZeroNormal);
        }
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .map(|(w, t)| w * t)
            .sum::<Rational>()
            + &self.offset
    }

    /// Exact range of `w·x + b` over the box.
    pub fn range(&self, b: &IntervalBox) -> Interval {
        self.normal
            .iter()
            .zip(b.sides())
            .map(|(w, s)| s.scale(w))
            .fold(Interval::point(self.offset.clone()), |acc, t| acc.add(&t))
    }
}

impl Classifier for Hyperplane {
    fn colors(&self) -> usize {
        2
    }

    fn dims(&self) -> usize {
        self.normal.len()
    }

    fn eval_point(&self, x: &[Rational], _fuel: Fuel) -> KBot {
        let v = self.value(x);
        if v.is_positive() {
            KBot::Color(1)
        } else if v.is_negative() {
            KBot::Color(0)
        } else {
            KBot::Bot
        }
    }

    fn eval_box(&self, b: &IntervalBox, _fuel: Fuel) -> ColorEnvelope {
        let r = self.range(b);
        let mut possible = Vec::with_capacity(2);
        if r.lo().is_negative() {
            possible.push(0);
        }
        if r.hi().is_positive() {
            possible.push(1);
        }
        let maybe_bot = !r.lo().is_positive() && !r.hi().is_negative();
        ColorEnvelope::new(possible, maybe_bot)
    }

    fn describe(&self) -> String {
        let w: Vec<String> = self.normal.iter().map(format_rational).collect();
        format!(
            "hyperplane w=({}) b={}",
            w.join(", "),
            format_rational(&self.offset)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn h() -> Hyperplane {
        Hyperplane::new(vec![int(1), int(0)], int(0)).unwrap()
    }

    fn bx(a: (Rational, Rational), b: (Rational, Rational)) -> IntervalBox {
        IntervalBox::new(vec![
            Interval::new(a.0, a.1).unwrap(),
            Interval::new(b.0, b.1).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn positive_box_is_color_one() {
        let e = h().eval_box(&bx((rat(1, 2), int(1)), (int(-1), int(1))), Fuel(0));
        assert_eq!(e, ColorEnvelope::exactly(1));
    }

    #[test]
    fn straddling_box() {
        let e = h().eval_box(&bx((int(-1), int(1)), (int(-1), int(1))), Fuel(0));
        assert_eq!(e, ColorEnvelope::new([0, 1], true));
    }

    #[test]
    fn touching_box_may_be_bot() {
        let e = h().eval_box(&bx((int(0), int(1)), (int(0), int(1))), Fuel(0));
        assert_eq!(e, ColorEnvelope::new([1], true));
    }

    #[test]
    fn point_on_plane_is_bot_at_every_fuel() {
        for d in 0..8 {
            assert_eq!(h().eval_point(&[int(0), int(0)], Fuel(d)), KBot::Bot);
        }
        assert_eq!(
            h().eval_point(&[rat(-1, 9), int(5)], Fuel(0)),
            KBot::Color(0)
        );
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(
            Hyperplane::new(vec![int(0), int(0)], int(1)),
            Err(Error::ZeroNormal)
        );
    }
}
