use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::kernel::Fuel;
use crate::numerics::rational::{ceil_int, dyadic, floor_int, scale_pow2};
use crate::numerics::{Interval, IntervalBox, Point, Rational};
use crate::par;

use super::shape::{GridKind, Shape};

const PAR_DEPTH: u32 = 2;

/// An overt set presented by a graded enumeration of exact points.
///
/// `points_at(d)` lists the anchor points (exact points known to lie in the
/// set, e.g. a ball's center) followed by the grid points of level `d` that
/// satisfy the set's defining predicate. Levels are nested, so enumerations
/// only grow with fuel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvertSet {
    shape: Shape,
    anchors: Vec<Point>,
}

/// A block of grid indices `[lo_i, hi_i]` per coordinate.
#[derive(Clone, Debug)]
struct Cell {
    ranges: Vec<(BigInt, BigInt)>,
}

impl Cell {
    fn is_point(&self) -> bool {
        self.ranges.iter().all(|(a, b)| a == b)
    }

    fn extent(&self) -> BigInt {
        self.ranges
            .iter()
            .map(|(a, b)| b - a)
            .max()
            .unwrap_or_default()
    }

    fn split(&self) -> Vec<Cell> {
        let mut out = vec![Vec::with_capacity(self.ranges.len())];
        for (a, b) in &self.ranges {
            if a == b {
                for v in &mut out {
                    v.push((a.clone(), b.clone()));
                }
            } else {
                let mid = (a + b).div_floor(&BigInt::from(2));
                let lo = (a.clone(), mid.clone());
                let hi = (mid + 1, b.clone());
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        let mut l = v.clone();
                        l.push(lo.clone());
                        let mut r = v;
                        r.push(hi.clone());
                        [l, r]
                    })
                    .collect();
            }
        }
        out.into_iter().map(|ranges| Cell { ranges }).collect()
    }
}

/// Index-to-coordinate map of one grid level.
struct Lattice {
    depth: u32,
    kind: GridKind,
    bounds: IntervalBox,
}

impl Lattice {
    fn new(shape: &Shape, depth: u32) -> Option<(Self, Cell)> {
        let bounds = shape.bounds()?;
        let kind = shape.grid();
        let ranges = match kind {
            GridKind::Absolute => bounds
                .sides()
                .iter()
                .map(|s| {
                    (
                        ceil_int(&scale_pow2(s.lo(), depth)),
                        floor_int(&scale_pow2(s.hi(), depth)),
                    )
                })
                .collect::<Vec<_>>(),
            GridKind::Relative => bounds
                .sides()
                .iter()
                .map(|s| {
                    let top = if s.is_degenerate() {
                        BigInt::from(0)
                    } else {
                        BigInt::one() << depth as usize
                    };
                    (BigInt::from(0), top)
                })
                .collect(),
        };
        if ranges.iter().any(|(a, b)| a > b) {
            return None;
        }
        Some((
            Self {
                depth,
                kind,
                bounds,
            },
            Cell { ranges },
        ))
    }

    fn coord(&self, axis: usize, j: &BigInt) -> Rational {
        match self.kind {
            GridKind::Absolute => dyadic(j, self.depth),
            GridKind::Relative => {
                let s = self.bounds.side(axis);
                s.lo() + s.width() * dyadic(j, self.depth)
            }
        }
    }

    fn point(&self, cell: &Cell) -> Point {
        cell.ranges
            .iter()
            .enumerate()
            .map(|(i, (a, _))| self.coord(i, a))
            .collect()
    }

    fn real_box(&self, cell: &Cell) -> IntervalBox {
        IntervalBox::new(
            cell.ranges
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    Interval::new(self.coord(i, a), self.coord(i, b)).expect("ordered indices")
                })
                .collect(),
        )
        .expect("nonempty cell")
    }

    /// The grid point of `cell` closest to `x` in every coordinate; for the
    /// supported metrics this minimizes the distance over the cell.
    fn nearest(&self, cell: &Cell, x: &[Rational]) -> Point {
        cell.ranges
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                let t = match self.kind {
                    GridKind::Absolute => scale_pow2(&x[i], self.depth),
                    GridKind::Relative => {
                        let s = self.bounds.side(i);
                        if s.is_degenerate() {
                            return s.lo().clone();
                        }
                        scale_pow2(&((&x[i] - s.lo()) / s.width()), self.depth)
                    }
                };
                let clamp = |j: BigInt| j.max(a.clone()).min(b.clone());
                let lo = clamp(floor_int(&t));
                let hi = clamp(ceil_int(&t));
                let (cl, ch) = (self.coord(i, &lo), self.coord(i, &hi));
                if num_traits::Signed::abs(&(&cl - &x[i]))
                    <= num_traits::Signed::abs(&(&ch - &x[i]))
                {
                    cl
                } else {
                    ch
                }
            })
            .collect()
    }
}

/// Search-tree slot of a tuple search: a fixed anchor or a grid cell.
#[derive(Clone, Debug)]
enum Slot {
    Anchor(usize),
    Cell(Cell),
}

/// What a cell-level visitor may conclude about a block of grid points.
pub enum CellVerdict<T> {
    /// No point of the block is a hit.
    Prune,
    /// Undecided; keep refining.
    Refine,
    /// Every grid point of the block is a hit; the payload is computed for
    /// the given representative.
    Uniform(T),
}

impl OvertSet {
    pub fn new(shape: Shape, anchors: Vec<Point>) -> Self {
        let anchors = anchors.into_iter().filter(|a| shape.contains(a)).collect();
        Self { shape, anchors }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> usize {
        self.shape.dims()
    }

    pub fn anchors(&self) -> &[Point] {
        &self.anchors
    }

    /// Explicit enumeration: anchors, then grid points in lexicographic
    /// order. Intended for small fuels and tests; searches use [`Self::search`].
    pub fn points_at(&self, fuel: Fuel) -> Vec<Point> {
        let mut out = self.anchors.clone();
        let Some((lattice, root)) = Lattice::new(&self.shape, fuel.depth()) else {
            return out;
        };
        let mut idx: Vec<BigInt> = root.ranges.iter().map(|(a, _)| a.clone()).collect();
        loop {
            let p: Point = idx
                .iter()
                .enumerate()
                .map(|(i, j)| lattice.coord(i, j))
                .collect();
            if self.shape.contains(&p) {
                out.push(p);
            }
            let mut axis = idx.len();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if idx[axis] < root.ranges[axis].1 {
                    idx[axis] += 1;
                    break;
                }
                idx[axis] = root.ranges[axis].0.clone();
            }
        }
    }

    /// First enumerated point (anchors first, then a fixed depth-first grid
    /// order) for which `hit` returns a value. `may_hit(b)` returning `false`
    /// must guarantee that no point of `b` is a hit.
    pub fn search<T, P, H>(&self, fuel: Fuel, may_hit: P, hit: H) -> Option<(Point, T)>
    where
        T: Send,
        P: Fn(&IntervalBox) -> bool + Sync + Send,
        H: Fn(&Point) -> Option<T> + Sync + Send,
    {
        self.search_cells(
            fuel,
            |b| {
                if may_hit(b) {
                    CellVerdict::Refine
                } else {
                    CellVerdict::Prune
                }
            },
            hit,
        )
    }

    /// Like [`Self::search`], with a visitor that may settle a whole block.
    pub fn search_cells<T, V, H>(&self, fuel: Fuel, visit: V, hit: H) -> Option<(Point, T)>
    where
        T: Send,
        V: Fn(&IntervalBox) -> CellVerdict<T> + Sync + Send,
        H: Fn(&Point) -> Option<T> + Sync + Send,
    {
        if let Some(found) = self
            .anchors
            .iter()
            .find_map(|a| hit(a).map(|t| (a.clone(), t)))
        {
            return Some(found);
        }
        let (lattice, root) = Lattice::new(&self.shape, fuel.depth())?;
        self.search_cell(&lattice, root, 0, &visit, &hit)
    }

    fn search_cell<T, V, H>(
        &self,
        lattice: &Lattice,
        cell: Cell,
        depth: u32,
        visit: &V,
        hit: &H,
    ) -> Option<(Point, T)>
    where
        T: Send,
        V: Fn(&IntervalBox) -> CellVerdict<T> + Sync + Send,
        H: Fn(&Point) -> Option<T> + Sync + Send,
    {
        if cell.is_point() {
            let p = lattice.point(&cell);
            if !self.shape.contains(&p) {
                return None;
            }
            return hit(&p).map(|t| (p, t));
        }
        let rb = lattice.real_box(&cell);
        if !self.shape.may_meet(&rb) {
            return None;
        }
        match visit(&rb) {
            CellVerdict::Prune => return None,
            CellVerdict::Uniform(t) => {
                // only a representative inside the set is a valid witness
                let p = lattice.point(&cell);
                if self.shape.contains(&p) {
                    return Some((p, t));
                }
            }
            CellVerdict::Refine => {}
        }
        let kids = cell.split();
        let go = |c: &Cell| self.search_cell(lattice, c.clone(), depth + 1, visit, hit);
        if depth < PAR_DEPTH {
            par::find_map_first(&kids, go)
        } else {
            kids.iter().find_map(go)
        }
    }

    /// Minimum of `key(p)` over enumerated points `p` accepted by `accept`,
    /// by best-first branch and bound. `lower(b)` must bound `key` from
    /// below on `b`. Cells for which `uniform(b)` holds are known to consist
    /// of accepted points only and are resolved through their grid point
    /// nearest `target` (exact for distance keys to `target`).
    pub fn minimize<K, L, A, U>(
        &self,
        fuel: Fuel,
        target: &[Rational],
        key: K,
        lower: L,
        accept: A,
        uniform: U,
    ) -> Option<(Point, Rational)>
    where
        K: Fn(&Point) -> Rational,
        L: Fn(&IntervalBox) -> Rational,
        A: Fn(&Point) -> bool,
        U: Fn(&IntervalBox) -> CellVerdict<()>,
    {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;

        let mut best: Option<(Point, Rational)> = None;
        let better = |best: &Option<(Point, Rational)>, k: &Rational| match best {
            Some((_, b)) => k < b,
            None => true,
        };
        for a in &self.anchors {
            if accept(a) {
                let k = key(a);
                if better(&best, &k) {
                    best = Some((a.clone(), k));
                }
            }
        }
        let Some((lattice, root)) = Lattice::new(&self.shape, fuel.depth()) else {
            return best;
        };
        let mut heap = BinaryHeap::new();
        let mut cells = Vec::new();
        let push = |heap: &mut BinaryHeap<Reverse<(Rational, usize)>>,
                    cells: &mut Vec<Option<Cell>>,
                    c: Cell| {
            let rb = lattice.real_box(&c);
            if !self.shape.may_meet(&rb) {
                return;
            }
            heap.push(Reverse((lower(&rb), cells.len())));
            cells.push(Some(c));
        };
        push(&mut heap, &mut cells, root);
        while let Some(Reverse((lb, id))) = heap.pop() {
            if !better(&best, &lb) {
                break;
            }
            let cell = cells[id].take().expect("each cell popped once");
            if cell.is_point() {
                let p = lattice.point(&cell);
                if self.shape.contains(&p) && accept(&p) {
                    let k = key(&p);
                    if better(&best, &k) {
                        best = Some((p, k));
                    }
                }
                continue;
            }
            let rb = lattice.real_box(&cell);
            match uniform(&rb) {
                CellVerdict::Prune => continue,
                CellVerdict::Uniform(()) => {
                    let p = lattice.nearest(&cell, target);
                    if self.shape.contains(&p) {
                        let k = key(&p);
                        if better(&best, &k) {
                            best = Some((p, k));
                        }
                        continue;
                    }
                }
                CellVerdict::Refine => {}
            }
            for c in cell.split() {
                push(&mut heap, &mut cells, c);
            }
        }
        best
    }

    /// First ordered `len`-tuple of enumerated points accepted by `hit`.
    /// `may_hit` sees one box per slot (degenerate for anchors) and must
    /// return `false` only when no instantiation is a hit.
    pub fn search_tuples<T, P, H>(
        &self,
        fuel: Fuel,
        len: usize,
        may_hit: P,
        hit: H,
    ) -> Option<(Vec<Point>, T)>
    where
        T: Send,
        P: Fn(&[IntervalBox]) -> bool + Sync + Send,
        H: Fn(&[Point]) -> Option<T> + Sync + Send,
    {
        if len == 0 {
            return hit(&[]).map(|t| (vec![], t));
        }
        let lattice = Lattice::new(&self.shape, fuel.depth());
        let mut starts: Vec<Slot> = (0..self.anchors.len()).map(Slot::Anchor).collect();
        if let Some((_, root)) = &lattice {
            starts.push(Slot::Cell(root.clone()));
        }
        let mut tuples: Vec<Vec<Slot>> = vec![vec![]];
        for _ in 0..len {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    starts.iter().map(move |s| {
                        let mut t = t.clone();
                        t.push(s.clone());
                        t
                    })
                })
                .collect();
        }
        let lattice = lattice.map(|(l, _)| l);
        par::find_map_first(&tuples, |t| {
            self.search_tuple(lattice.as_ref(), t.clone(), &may_hit, &hit)
        })
    }

    fn search_tuple<T, P, H>(
        &self,
        lattice: Option<&Lattice>,
        slots: Vec<Slot>,
        may_hit: &P,
        hit: &H,
    ) -> Option<(Vec<Point>, T)>
    where
        P: Fn(&[IntervalBox]) -> bool,
        H: Fn(&[Point]) -> Option<T>,
    {
        let mut boxes = Vec::with_capacity(slots.len());
        for s in &slots {
            match s {
                Slot::Anchor(i) => boxes.push(IntervalBox::from_point(&self.anchors[*i])),
                Slot::Cell(c) => {
                    let l = lattice.expect("cells only exist with a lattice");
                    let rb = l.real_box(c);
                    if !self.shape.may_meet(&rb) {
                        return None;
                    }
                    boxes.push(rb);
                }
            }
        }
        if !may_hit(&boxes) {
            return None;
        }
        let widest = slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Slot::Cell(c) if !c.is_point() => Some((i, c.extent())),
                _ => None,
            })
            .fold(None::<(usize, BigInt)>, |acc, (i, e)| match acc {
                Some((_, ref best)) if *best >= e => acc,
                _ => Some((i, e)),
            });
        match widest {
            None => {
                let mut pts = Vec::with_capacity(slots.len());
                for s in &slots {
                    match s {
                        Slot::Anchor(i) => pts.push(self.anchors[*i].clone()),
                        Slot::Cell(c) => {
                            let p = lattice.expect("lattice").point(c);
                            if !self.shape.contains(&p) {
                                return None;
                            }
                            pts.push(p);
                        }
                    }
                }
                hit(&pts).map(|t| (pts, t))
            }
            Some((i, _)) => {
                let Slot::Cell(c) = &slots[i] else {
                    unreachable!("widest slot is a cell")
                };
                c.split().into_iter().find_map(|child| {
                    let mut next = slots.clone();
                    next[i] = Slot::Cell(child);
                    self.search_tuple(lattice, next, may_hit, hit)
                })
            }
        }
    }

    /// `true` when nothing is enumerated up to and including this fuel.
    pub fn is_empty_up_to(&self, fuel: Fuel) -> bool {
        self.search(fuel, |_| true, |_| Some(())).is_none()
    }
}
