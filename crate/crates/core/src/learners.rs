//! Learners: deterministic maps from labelled samples to classifiers, and
//! the robustness questions one can ask of them under data augmentation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use crate::classifiers::{nn_envelope, Classifier, ColorEnvelope, Constant, NearestNeighbor};
use crate::error::{Error, Result};
use crate::kernel::{race_verdicts, Fuel, KBot, TwoBot, Verdict};
use crate::numerics::{format_point, format_rational, IntervalBox, MetricKind, Point, Rational};
use crate::par;
use crate::regions::{outside_ball_compact, outside_ball_overt, VkSet};
use crate::verify::{check_color, Outcome, Witness};

/// Largest augmentation size accepted by [`sprs_or_dns`].
pub const AUGMENTATION_CAP: usize = 3;

/// An ordered list of labelled points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    dims: usize,
    points: Vec<(Point, usize)>,
}

impl Sample {
    pub fn new(dims: usize, points: Vec<(Point, usize)>) -> Result<Self> {
        if let Some((p, _)) = points.iter().find(|(p, _)| p.len() != dims) {
            return Err(Error::DimensionMismatch {
                expected: dims,
                found: p.len(),
            });
        }
        Ok(Self { dims, points })
    }

    pub fn empty(dims: usize) -> Self {
        Self {
            dims,
            points: vec![],
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn points(&self) -> &[(Point, usize)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// This sample followed by `extra`.
    pub fn extended(&self, extra: &[(Point, usize)]) -> Sample {
        let mut points = self.points.clone();
        points.extend_from_slice(extra);
        Sample {
            dims: self.dims,
            points,
        }
    }

    pub fn check_labels(&self, k: usize) -> Result<()> {
        match self.points.iter().find(|(_, l)| *l >= k) {
            Some((_, l)) => Err(Error::ColorOutOfRange { color: *l, k }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(p, l)| format!("({})->{}", format_point(p).join(", "), l))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub trait Learner: Send + Sync + fmt::Debug {
    fn colors(&self) -> usize;

    fn train(&self, s: &Sample) -> Result<Arc<dyn Classifier>>;

    /// Sound envelope of `train(s ++ extra)(x)` over every instantiation of
    /// the boxes in `extra`.
    fn envelope_at(
        &self,
        s: &Sample,
        extra: &[(IntervalBox, usize)],
        x: &[Rational],
        fuel: Fuel,
    ) -> ColorEnvelope;

    fn describe(&self) -> String;
}

/// 1-nearest-neighbor learner; see [`NearestNeighbor`] for the ⊥ band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NnLearner {
    margin: Rational,
    metric: MetricKind,
    k: usize,
}

pub fn nn_learner(margin: Rational, metric: MetricKind, k: usize) -> Result<NnLearner> {
    if !margin.is_positive() {
        return Err(Error::InvalidInput("tie margin must be positive".into()));
    }
    Ok(NnLearner { margin, metric, k })
}

impl Learner for NnLearner {
    fn colors(&self) -> usize {
        self.k
    }

    fn train(&self, s: &Sample) -> Result<Arc<dyn Classifier>> {
        s.check_labels(self.k)?;
        Ok(Arc::new(NearestNeighbor::new(
            s.points.clone(),
            self.margin.clone(),
            self.metric,
            self.k,
            s.dims,
        )))
    }

    fn envelope_at(
        &self,
        s: &Sample,
        extra: &[(IntervalBox, usize)],
        x: &[Rational],
        _fuel: Fuel,
    ) -> ColorEnvelope {
        let train: Vec<(IntervalBox, usize)> = s
            .points
            .iter()
            .map(|(p, l)| (IntervalBox::from_point(p), *l))
            .chain(extra.iter().cloned())
            .collect();
        nn_envelope(
            &IntervalBox::from_point(x),
            &train,
            &self.margin,
            self.metric,
            self.k,
        )
    }

    fn describe(&self) -> String {
        format!(
            "nn(tieMargin={}, metric={}, k={})",
            format_rational(&self.margin),
            self.metric.name(),
            self.k
        )
    }
}

/// Ignores positions: the constant majority label, or ⊥ on a tie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityLearner {
    k: usize,
}

pub fn majority_learner(k: usize) -> MajorityLearner {
    MajorityLearner { k }
}

fn majority(k: usize, labels: impl Iterator<Item = usize>) -> KBot {
    let mut counts = vec![0usize; k];
    for l in labels {
        if l < k {
            counts[l] += 1;
        }
    }
    let Some(&top) = counts.iter().max() else {
        return KBot::Bot;
    };
    let mut at_top = counts.iter().enumerate().filter(|(_, &c)| c == top);
    match (at_top.next(), at_top.next()) {
        (Some((j, _)), None) if top > 0 => KBot::Color(j),
        _ => KBot::Bot,
    }
}

impl Learner for MajorityLearner {
    fn colors(&self) -> usize {
        self.k
    }

    fn train(&self, s: &Sample) -> Result<Arc<dyn Classifier>> {
        s.check_labels(self.k)?;
        let value = majority(self.k, s.points.iter().map(|(_, l)| *l));
        Ok(Arc::new(Constant::new(value, self.k, s.dims)))
    }

    fn envelope_at(
        &self,
        s: &Sample,
        extra: &[(IntervalBox, usize)],
        _x: &[Rational],
        _fuel: Fuel,
    ) -> ColorEnvelope {
        let labels = s
            .points
            .iter()
            .map(|(_, l)| *l)
            .chain(extra.iter().map(|(_, l)| *l));
        match majority(self.k, labels) {
            KBot::Color(c) => ColorEnvelope::exactly(c),
            KBot::Bot => ColorEnvelope::bot(),
        }
    }

    fn describe(&self) -> String {
        format!("majority(k={})", self.k)
    }
}

/// Always returns the same constant classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantLearner {
    value: KBot,
    k: usize,
}

impl ConstantLearner {
    pub fn new(value: KBot, k: usize) -> Self {
        Self { value, k }
    }
}

impl Learner for ConstantLearner {
    fn colors(&self) -> usize {
        self.k
    }

    fn train(&self, s: &Sample) -> Result<Arc<dyn Classifier>> {
        s.check_labels(self.k)?;
        Ok(Arc::new(Constant::new(self.value, self.k, s.dims)))
    }

    fn envelope_at(
        &self,
        _s: &Sample,
        _extra: &[(IntervalBox, usize)],
        _x: &[Rational],
        _fuel: Fuel,
    ) -> ColorEnvelope {
        match self.value {
            KBot::Color(c) => ColorEnvelope::exactly(c),
            KBot::Bot => ColorEnvelope::bot(),
        }
    }

    fn describe(&self) -> String {
        match self.value {
            KBot::Color(c) => format!("constant({c}, k={})", self.k),
            KBot::Bot => format!("constant(bot, k={})", self.k),
        }
    }
}

/// All `k^len` label assignments in lexicographic order.
pub fn label_assignments(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |n| {
                    let mut t = t.clone();
                    t.push(n);
                    t
                })
            })
            .collect();
    }
    out
}

fn distinct_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n)
                    .filter(|i| !t.contains(i))
                    .map(|i| {
                        let mut next = t.clone();
                        next.push(i);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// `(len, grid depth)` stages unlocked at `fuel`, in search order.
fn deviation_stages(fuel: Fuel) -> Vec<(usize, u32)> {
    let budget = fuel.0 / 2;
    let mut stages = Vec::new();
    for total in 1..=budget {
        for len in 1..=total {
            stages.push((len as usize, total - len));
        }
    }
    stages
}

/// Semi-decides whether `L` ever mislabels one of its own training points:
/// some sample of pairwise-distinct domain points and some index `m` with
/// `L(sample)(x_m)` a color other than `n_m`.
pub fn does_deviate(l: &dyn Learner, domain: &VkSet, fuel: Fuel) -> Result<Outcome<Verdict>> {
    let k = l.colors();
    let dims = domain.dims();
    for (len, depth) in deviation_stages(fuel) {
        let mut pts = domain.overt.points_at(Fuel(depth));
        let mut seen = std::collections::BTreeSet::new();
        pts.retain(|p| seen.insert(p.clone()));
        if pts.len() < len {
            continue;
        }
        let tuples = distinct_tuples(pts.len(), len);
        let labelings = label_assignments(k, len);
        let found = par::find_map_first(&tuples, |t| {
            labelings.iter().find_map(|labels| {
                let points: Vec<(Point, usize)> = t
                    .iter()
                    .zip(labels)
                    .map(|(&i, &n)| (pts[i].clone(), n))
                    .collect();
                let sample = Sample::new(dims, points).ok()?;
                let f = l.train(&sample).ok()?;
                sample.points.iter().enumerate().find_map(|(m, (p, n))| {
                    match f.eval_point(p, fuel) {
                        KBot::Color(c) if c != *n => Some(Witness::Deviation {
                            sample: sample.points.clone(),
                            index: m,
                            color: c,
                        }),
                        _ => None,
                    }
                })
            })
        });
        if let Some(w) = found {
            return Ok(Outcome {
                value: Verdict::Confirmed,
                witnesses: vec![w],
            });
        }
    }
    Ok(Outcome::bare(Verdict::Unknown))
}

fn check_query(l: &dyn Learner, s: &Sample, x: &[Rational], domain: &VkSet) -> Result<()> {
    s.check_labels(l.colors())?;
    for n in [x.len(), domain.dims()] {
        if n != s.dims() {
            return Err(Error::DimensionMismatch {
                expected: s.dims(),
                found: n,
            });
        }
    }
    Ok(())
}

/// `One` iff no single added labelled domain point changes the (defined)
/// answer of `L` at `x`; `Zero` iff one changes it to another color.
pub fn robust_point(
    x: &[Rational],
    s: &Sample,
    l: &dyn Learner,
    domain: &VkSet,
    fuel: Fuel,
) -> Result<Outcome<TwoBot>> {
    check_query(l, s, x, domain)?;
    let k = l.colors();
    let KBot::Color(c) = l.train(s)?.eval_point(x, fuel) else {
        return Ok(Outcome::bare(TwoBot::Bot));
    };
    let yes = domain.compact.check_all(fuel, |b| {
        (0..k).all(|n| l.envelope_at(s, &[(b.clone(), n)], x, fuel).is_exactly(c))
    });
    let flip = domain.overt.search(
        fuel,
        |b| {
            (0..k).any(|n| {
                l.envelope_at(s, &[(b.clone(), n)], x, fuel)
                    .admits_other_than(c)
            })
        },
        |p| {
            (0..k).find_map(|n| {
                let added = vec![(p.to_vec(), n)];
                let f = l.train(&s.extended(&added)).ok()?;
                match f.eval_point(x, fuel) {
                    KBot::Color(m) if m != c => Some(Witness::Augmentation { added, color: m }),
                    _ => None,
                }
            })
        },
    );
    let value = race_verdicts(
        Verdict::from_bool(yes),
        Verdict::from_bool(flip.is_some()),
        fuel,
    )?;
    Ok(Outcome {
        value,
        witnesses: flip.map(|(_, w)| w).into_iter().collect(),
    })
}

fn augment_for_color(
    color: usize,
    l: &dyn Learner,
    s: &Sample,
    x: &[Rational],
    region: &crate::regions::OvertSet,
    n_max: usize,
    fuel: Fuel,
) -> Option<Witness> {
    let k = l.colors();
    (0..=n_max).find_map(|len| {
        label_assignments(k, len).into_iter().find_map(|labels| {
            region
                .search_tuples(
                    fuel,
                    len,
                    |boxes| {
                        let extra: Vec<(IntervalBox, usize)> =
                            boxes.iter().cloned().zip(labels.iter().copied()).collect();
                        l.envelope_at(s, &extra, x, fuel).admits(color)
                    },
                    |pts| {
                        let added: Vec<(Point, usize)> =
                            pts.iter().cloned().zip(labels.iter().copied()).collect();
                        let f = l.train(&s.extended(&added)).ok()?;
                        (f.eval_point(x, fuel) == KBot::Color(color)).then_some(added)
                    },
                )
                .map(|(_, added)| Witness::Augmentation { added, color })
        })
    })
}

/// Races sparsity against density of `s` at `x`: `Zero` when two
/// extensions by at most `n_max` points farther than `eps` from `x` commit
/// to distinct colors, `One` when every extension by at most `n_max`
/// points at distance at least `eps` commits to the same color as `s`.
#[allow(clippy::too_many_arguments)]
pub fn sprs_or_dns(
    l: &dyn Learner,
    n_max: usize,
    eps: &Rational,
    s: &Sample,
    x: &[Rational],
    domain: &VkSet,
    metric: MetricKind,
    fuel: Fuel,
) -> Result<Outcome<TwoBot>> {
    if n_max > AUGMENTATION_CAP {
        return Err(Error::AugmentationCapExceeded {
            requested: n_max,
            cap: AUGMENTATION_CAP,
        });
    }
    if !eps.is_positive() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    check_query(l, s, x, domain)?;
    let k = l.colors();
    let far = outside_ball_overt(domain, x, eps, metric)?;
    let found: BTreeMap<usize, Witness> = (0..k)
        .filter_map(|m| augment_for_color(m, l, s, x, &far, n_max, fuel).map(|w| (m, w)))
        .collect();
    let sparse = found.len() >= 2;

    let dense = match l.train(s)?.eval_point(x, fuel) {
        KBot::Bot => false,
        KBot::Color(c) => {
            check_color(c, k)?;
            let near_closed = outside_ball_compact(domain, x, eps, metric)?;
            (1..=n_max).all(|len| {
                label_assignments(k, len).iter().all(|labels| {
                    near_closed.check_all_tuples(fuel, len, |boxes| {
                        let extra: Vec<(IntervalBox, usize)> =
                            boxes.iter().cloned().zip(labels.iter().copied()).collect();
                        l.envelope_at(s, &extra, x, fuel).is_exactly(c)
                    })
                })
            })
        }
    };
    let value = race_verdicts(Verdict::from_bool(dense), Verdict::from_bool(sparse), fuel)?;
    let witnesses = if value == TwoBot::Zero {
        found.into_values().take(2).collect()
    } else {
        vec![]
    };
    Ok(Outcome { value, witnesses })
}
