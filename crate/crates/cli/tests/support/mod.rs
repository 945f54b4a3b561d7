//! Shared fixtures for the integration suites: random instance generators
//! and an exhaustive grid oracle that shares no code with the engine.
//!
//! Oracle coordinates are integers in units of 2^-10; classifier weights
//! are integers in units of 1/16. Every comparison is exact i128 arithmetic.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use cverify::classifiers::{Classifier, Hyperplane, Layer, ThresholdNet};
use cverify::numerics::{rat, Interval, MetricKind, Point};
use cverify::regions::{annulus, closed_ball, domain_box, open_ball, OvertSet, VkSet};

/// Oracle grid resolution: points are `i / GRID`.
pub const GRID: i64 = 1024;
/// Weight resolution: weights are `w / WEIGHT`.
pub const WEIGHT: i64 = 16;

pub fn to_point(p: &[i64]) -> Point {
    p.iter().map(|&v| rat(v, GRID)).collect()
}

#[derive(Clone, Debug)]
pub struct Affine {
    pub w: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub relu: bool,
}

#[derive(Clone, Debug)]
pub enum Model {
    Plane { w: Vec<i64>, b: i64 },
    Net { layers: Vec<Affine>, margin: i64 },
}

impl Model {
    pub fn dims(&self) -> usize {
        match self {
            Model::Plane { w, .. } => w.len(),
            Model::Net { layers, .. } => layers[0].w[0].len(),
        }
    }

    pub fn colors(&self) -> usize {
        match self {
            Model::Plane { .. } => 2,
            Model::Net { layers, .. } => layers.last().unwrap().b.len(),
        }
    }

    pub fn build(&self) -> Arc<dyn Classifier> {
        let q = |v: &i64| rat(*v, WEIGHT);
        match self {
            Model::Plane { w, b } => {
                Arc::new(Hyperplane::new(w.iter().map(q).collect(), q(b)).unwrap())
            }
            Model::Net { layers, margin } => Arc::new(
                ThresholdNet::new(
                    layers
                        .iter()
                        .map(|l| Layer {
                            weights: l.w.iter().map(|row| row.iter().map(q).collect()).collect(),
                            bias: l.b.iter().map(q).collect(),
                            relu: l.relu,
                        })
                        .collect(),
                    q(margin),
                    self.colors(),
                )
                .unwrap(),
            ),
        }
    }

    /// Exact color at the grid point `p`, `None` for ⊥.
    pub fn oracle(&self, p: &[i64]) -> Option<usize> {
        match self {
            Model::Plane { w, b } => {
                let v: i128 = w
                    .iter()
                    .zip(p)
                    .map(|(a, x)| *a as i128 * *x as i128)
                    .sum::<i128>()
                    + *b as i128 * GRID as i128;
                match v.signum() {
                    1 => Some(1),
                    -1 => Some(0),
                    _ => None,
                }
            }
            Model::Net { layers, margin } => {
                let mut vals: Vec<i128> = p.iter().map(|&x| x as i128).collect();
                let mut scale: i128 = GRID as i128;
                for l in layers {
                    vals = l
                        .w
                        .iter()
                        .zip(&l.b)
                        .map(|(row, b)| {
                            let s: i128 = row.iter().zip(&vals).map(|(a, v)| *a as i128 * v).sum();
                            let s = s + *b as i128 * scale;
                            if l.relu {
                                s.max(0)
                            } else {
                                s
                            }
                        })
                        .collect();
                    scale *= WEIGHT as i128;
                }
                let m = *margin as i128 * scale / WEIGHT as i128;
                (0..vals.len()).find(|&j| {
                    (0..vals.len())
                        .filter(|&i| i != j)
                        .all(|i| vals[j] - vals[i] > m)
                })
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Region {
    Ball {
        c: Vec<i64>,
        r: i64,
        metric: MetricKind,
        open: bool,
    },
    Annulus {
        c: Vec<i64>,
        inner: i64,
        outer: i64,
        metric: MetricKind,
    },
    Box {
        lo: Vec<i64>,
        hi: Vec<i64>,
    },
}

fn key(metric: MetricKind, p: &[i64], c: &[i64]) -> i128 {
    let d = p
        .iter()
        .zip(c)
        .map(|(a, b)| (*a as i128 - *b as i128).abs());
    match metric {
        MetricKind::Max => d.max().unwrap(),
        MetricKind::EuclidSq => d.map(|t| t * t).sum(),
    }
}

fn rkey(metric: MetricKind, r: i64) -> i128 {
    match metric {
        MetricKind::Max => r as i128,
        MetricKind::EuclidSq => r as i128 * r as i128,
    }
}

impl Region {
    pub fn dims(&self) -> usize {
        match self {
            Region::Ball { c, .. } | Region::Annulus { c, .. } => c.len(),
            Region::Box { lo, .. } => lo.len(),
        }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        match self {
            Region::Ball { c, r, metric, open } => {
                let k = key(*metric, p, c);
                if *open {
                    k < rkey(*metric, *r)
                } else {
                    k <= rkey(*metric, *r)
                }
            }
            Region::Annulus {
                c,
                inner,
                outer,
                metric,
            } => {
                let k = key(*metric, p, c);
                k >= rkey(*metric, *inner) && k <= rkey(*metric, *outer)
            }
            Region::Box { lo, hi } => p
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(x, (a, b))| a <= x && x <= b),
        }
    }

    pub fn bounds(&self) -> (Vec<i64>, Vec<i64>) {
        match self {
            Region::Ball { c, r, .. } => (
                c.iter().map(|v| v - r).collect(),
                c.iter().map(|v| v + r).collect(),
            ),
            Region::Annulus { c, outer, .. } => (
                c.iter().map(|v| v - outer).collect(),
                c.iter().map(|v| v + outer).collect(),
            ),
            Region::Box { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn build(&self) -> VkSet {
        match self {
            Region::Ball {
                c,
                r,
                metric,
                open: false,
            } => closed_ball(&to_point(c), &rat(*r, GRID), *metric).unwrap(),
            Region::Ball { open: true, .. } => panic!("open balls are overt only"),
            Region::Annulus {
                c,
                inner,
                outer,
                metric,
            } => annulus(
                &to_point(c),
                &rat(*inner, GRID),
                &rat(*outer, GRID),
                *metric,
            )
            .unwrap(),
            Region::Box { lo, hi } => domain_box(
                lo.iter()
                    .zip(hi)
                    .map(|(a, b)| Interval::new(rat(*a, GRID), rat(*b, GRID)).unwrap())
                    .collect(),
            )
            .unwrap(),
        }
    }

    pub fn build_overt(&self) -> OvertSet {
        match self {
            Region::Ball {
                c,
                r,
                metric,
                open: true,
            } => open_ball(&to_point(c), &rat(*r, GRID), *metric).unwrap(),
            _ => self.build().overt,
        }
    }

    /// Every oracle grid point of the region.
    pub fn grid_points(&self) -> Vec<Vec<i64>> {
        let (lo, hi) = self.bounds();
        let mut out = vec![vec![]];
        for (a, b) in lo.iter().zip(&hi) {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (*a..=*b).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out.retain(|p| self.contains(p));
        out
    }
}

/// Colors a model takes on a region's grid points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub colors: BTreeSet<usize>,
    pub bot: bool,
    pub points: usize,
}

impl Summary {
    pub fn of(model: &Model, region: &Region) -> Summary {
        let mut s = Summary::default();
        for p in region.grid_points() {
            s.points += 1;
            match model.oracle(&p) {
                Some(c) => {
                    s.colors.insert(c);
                }
                None => s.bot = true,
            }
        }
        s
    }

    /// Every grid point has color `n`.
    pub fn all(&self, n: usize) -> bool {
        !self.bot && self.colors.iter().all(|&c| c == n)
    }

    pub fn some_other(&self, n: usize) -> bool {
        self.colors.iter().any(|&c| c != n)
    }

    pub fn constant(&self) -> bool {
        !self.bot && self.colors.len() <= 1
    }
}

/// A multiple of `1/16` in grid units, drawn from `[lo, hi]` sixteenths.
pub fn sixteenths<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi) * (GRID / 16)
}

pub fn random_point<R: Rng>(rng: &mut R, dims: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..dims).map(|_| sixteenths(rng, lo, hi)).collect()
}

pub fn random_metric<R: Rng>(rng: &mut R) -> MetricKind {
    if rng.gen_bool(0.5) {
        MetricKind::Max
    } else {
        MetricKind::EuclidSq
    }
}

fn nonzero_weights<R: Rng>(rng: &mut R, dims: usize) -> Vec<i64> {
    loop {
        let w: Vec<i64> = (0..dims).map(|_| rng.gen_range(-16..=16)).collect();
        if w.iter().any(|&v| v != 0) {
            return w;
        }
    }
}

/// A hyperplane whose zero set passes within about `1/16` of `near`
/// (given in grid units, multiples of 1/16).
pub fn random_plane<R: Rng>(rng: &mut R, near: &[i64]) -> Model {
    let w = nonzero_weights(rng, near.len());
    let at: i64 = w.iter().zip(near).map(|(a, x)| a * x).sum::<i64>() / GRID;
    let b = -at + rng.gen_range(-2..=2);
    Model::Plane { w, b }
}

/// One hidden ReLU layer of width 2 or 3, two output scores, margin 1/8.
pub fn random_net<R: Rng>(rng: &mut R, near: &[i64]) -> Model {
    let dims = near.len();
    let width = rng.gen_range(2..=3);
    let mut w1 = Vec::new();
    let mut b1 = Vec::new();
    for _ in 0..width {
        let w = nonzero_weights(rng, dims);
        let at: i64 = w.iter().zip(near).map(|(a, x)| a * x).sum::<i64>() / GRID;
        b1.push(-at + rng.gen_range(-2..=2));
        w1.push(w);
    }
    let w2: Vec<Vec<i64>> = (0..2)
        .map(|_| (0..width).map(|_| rng.gen_range(-16..=16)).collect())
        .collect();
    let b2 = vec![rng.gen_range(-1..=1), rng.gen_range(-1..=1)];
    Model::Net {
        layers: vec![
            Affine {
                w: w1,
                b: b1,
                relu: true,
            },
            Affine {
                w: w2,
                b: b2,
                relu: false,
            },
        ],
        margin: 2,
    }
}
