use crate::kernel::Fuel;
use crate::numerics::IntervalBox;
use crate::par;

use super::shape::Shape;

/// Recursion depth below which subtrees are fanned out in parallel.
const PAR_DEPTH: u32 = 2;

/// A compact set presented by refinable box covers.
///
/// `cover_at(d)` subdivides the root boxes `d` times (every side halved per
/// level) and keeps the boxes that may meet the set. Every cover contains
/// the set; box widths shrink as `2^-d` times the root width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactSet {
    shape: Shape,
    roots: Vec<IntervalBox>,
}

impl CompactSet {
    pub fn new(shape: Shape) -> Self {
        let roots = shape
            .bounds()
            .filter(|b| shape.may_meet(b))
            .into_iter()
            .collect();
        Self { shape, roots }
    }

    /// A cover restricted to the given roots, e.g. a domain's cover boxes.
    pub fn with_roots(shape: Shape, roots: Vec<IntervalBox>) -> Self {
        let roots = roots.into_iter().filter(|b| shape.may_meet(b)).collect();
        Self { shape, roots }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> usize {
        self.shape.dims()
    }

    pub fn roots(&self) -> &[IntervalBox] {
        &self.roots
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Sub-boxes of `b` one level down that may still meet the set.
    pub fn refine(&self, b: &IntervalBox) -> Vec<IntervalBox> {
        b.split_all()
            .into_iter()
            .filter(|c| self.shape.may_meet(c))
            .collect()
    }

    pub fn cover_at(&self, fuel: Fuel) -> Vec<IntervalBox> {
        let mut cover = self.roots.clone();
        for _ in 0..fuel.depth() {
            cover = cover.iter().flat_map(|b| self.refine(b)).collect();
        }
        cover
    }

    /// `true` iff every box of the cover at this fuel satisfies `pass`,
    /// refining lazily: a box that passes is not subdivided further. Sound
    /// whenever `pass(b)` means the property holds on all of `b`.
    pub fn check_all<F>(&self, fuel: Fuel, pass: F) -> bool
    where
        F: Fn(&IntervalBox) -> bool + Sync + Send,
    {
        par::all(&self.roots, |b| self.check_box(b, 0, fuel.depth(), &pass))
    }

    fn check_box<F>(&self, b: &IntervalBox, depth: u32, max: u32, pass: &F) -> bool
    where
        F: Fn(&IntervalBox) -> bool + Sync + Send,
    {
        if pass(b) {
            return true;
        }
        if depth >= max || b.is_degenerate() {
            return false;
        }
        let kids = self.refine(b);
        if depth < PAR_DEPTH {
            par::all(&kids, |c| self.check_box(c, depth + 1, max, pass))
        } else {
            kids.iter().all(|c| self.check_box(c, depth + 1, max, pass))
        }
    }

    /// Universal check over ordered `len`-tuples of cover boxes.
    ///
    /// A failing tuple refines its shallowest nondegenerate slot (first on
    /// ties); the choice does not depend on fuel, so the explored tree at
    /// fuel `d + 1` extends the tree at fuel `d`.
    pub fn check_all_tuples<F>(&self, fuel: Fuel, len: usize, pass: F) -> bool
    where
        F: Fn(&[IntervalBox]) -> bool + Sync + Send,
    {
        if len == 0 {
            return pass(&[]);
        }
        let mut starts: Vec<Vec<(IntervalBox, u32)>> = vec![vec![]];
        for _ in 0..len {
            starts = starts
                .into_iter()
                .flat_map(|t| {
                    self.roots.iter().map(move |r| {
                        let mut t = t.clone();
                        t.push((r.clone(), 0));
                        t
                    })
                })
                .collect();
        }
        par::all(&starts, |t| {
            self.check_tuple(t.clone(), fuel.depth(), &pass)
        })
    }

    fn check_tuple<F>(&self, slots: Vec<(IntervalBox, u32)>, max: u32, pass: &F) -> bool
    where
        F: Fn(&[IntervalBox]) -> bool + Sync + Send,
    {
        let boxes: Vec<IntervalBox> = slots.iter().map(|(b, _)| b.clone()).collect();
        if pass(&boxes) {
            return true;
        }
        let pick = slots
            .iter()
            .enumerate()
            .filter(|(_, (b, _))| !b.is_degenerate())
            .min_by_key(|(i, (_, d))| (*d, *i));
        let (i, depth) = match pick {
            Some((i, (_, d))) if *d < max => (i, *d),
            _ => return false,
        };
        self.refine(&slots[i].0).into_iter().all(|c| {
            let mut next = slots.clone();
            next[i] = (c, depth + 1);
            self.check_tuple(next, max, pass)
        })
    }
}
