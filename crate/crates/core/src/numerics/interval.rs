//! Closed intervals and axis-aligned boxes with exact rational endpoints.
//!
//! Rationals are closed under the operations used here, so every result is
//! the exact image range rather than an outward-rounded enclosure.

use std::fmt;

use num_traits::{Signed, Zero};

use super::rational::{format_rational, rat, Point, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "interval lower end {} exceeds upper end {}",
                lo, hi
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * rat(1, 2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn bisect(&self) -> (Interval, Interval) {
        let mid = self.midpoint();
        (
            Interval {
                lo: self.lo.clone(),
                hi: mid.clone(),
            },
            Interval {
                lo: mid,
                hi: self.hi.clone(),
            },
        )
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn shift(&self, c: &Rational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn relu(&self) -> Interval {
        let zero = Rational::zero();
        Interval {
            lo: (&self.lo).max(&zero).clone(),
            hi: (&self.hi).max(&zero).clone(),
        }
    }

    /// Range of `|t|` for `t` in the interval.
    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: Rational::zero(),
                hi: (-&self.lo).max(self.hi.clone()),
            }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Interval {
                lo: -&self.hi,
                hi: -&self.lo,
            }
        } else {
            self.clone()
        }
    }

    /// Range of `t²`.
    pub fn square(&self) -> Interval {
        let a = self.abs();
        Interval {
            lo: &a.lo * &a.lo,
            hi: &a.hi * &a.hi,
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).max(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).min(&other.hi).clone(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// An axis-aligned product of closed intervals in ℝⁿ, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalBox {
    sides: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(sides: Vec<Interval>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::InvalidInput("a box needs at least one side".into()));
        }
        Ok(Self { sides })
    }

    pub fn from_point(p: &[Rational]) -> Self {
        Self {
            sides: p.iter().cloned().map(Interval::point).collect(),
        }
    }

    /// The box `[x - r, x + r]` in every coordinate.
    pub fn around(center: &[Rational], radius: &Rational) -> Self {
        Self {
            sides: center
                .iter()
                .map(|c| Interval {
                    lo: c - radius,
                    hi: c + radius,
                })
                .collect(),
        }
    }

    pub fn dims(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Interval] {
        &self.sides
    }

    pub fn side(&self, i: usize) -> &Interval {
        &self.sides[i]
    }

    /// Largest side width.
    pub fn width(&self) -> Rational {
        self.sides
            .iter()
            .map(Interval::width)
            .max()
            .expect("box has at least one side")
    }

    pub fn lower_corner(&self) -> Point {
        self.sides.iter().map(|s| s.lo.clone()).collect()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.sides.len() && self.sides.iter().zip(p).all(|(s, x)| s.contains(x))
    }

    pub fn intersect(&self, other: &IntervalBox) -> Option<IntervalBox> {
        if self.dims() != other.dims() {
            return None;
        }
        let sides = self
            .sides
            .iter()
            .zip(&other.sides)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()?;
        Some(IntervalBox { sides })
    }

    /// Bisect along the widest side (lowest index on ties).
    pub fn bisect(&self) -> (IntervalBox, IntervalBox) {
        let (axis, _) =
            self.sides
                .iter()
                .enumerate()
                .fold((0, None::<Rational>), |(best, bw), (i, s)| {
                    let w = s.width();
                    match bw {
                        Some(b) if b >= w => (best, Some(b)),
                        _ => (i, Some(w)),
                    }
                });
        let (a, b) = self.sides[axis].bisect();
        let mut left = self.sides.clone();
        let mut right = self.sides.clone();
        left[axis] = a;
        right[axis] = b;
        (IntervalBox { sides: left }, IntervalBox { sides: right })
    }

    /// Halve every nondegenerate side at once: up to `2^n` children in
    /// lexicographic order (first coordinate most significant, lower half
    /// first). A fully degenerate box yields itself.
    pub fn split_all(&self) -> Vec<IntervalBox> {
        let halves: Vec<Option<(Interval, Interval)>> = self
            .sides
            .iter()
            .map(|s| (!s.is_degenerate()).then(|| s.bisect()))
            .collect();
        let mut out = vec![Vec::with_capacity(self.sides.len())];
        for (side, half) in self.sides.iter().zip(&halves) {
            out = match half {
                None => out
                    .into_iter()
                    .map(|mut v| {
                        v.push(side.clone());
                        v
                    })
                    .collect(),
                Some((a, b)) => out
                    .into_iter()
                    .flat_map(|v| {
                        let mut l = v.clone();
                        l.push(a.clone());
                        let mut r = v;
                        r.push(b.clone());
                        [l, r]
                    })
                    .collect(),
            };
        }
        out.into_iter().map(|sides| IntervalBox { sides }).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.sides.iter().all(Interval::is_degenerate)
    }

    pub fn check_dims(&self, n: usize) -> Result<()> {
        if self.dims() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.dims(),
            })
        }
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}
