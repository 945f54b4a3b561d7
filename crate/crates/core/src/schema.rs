//! JSON file formats for classifiers, learners, samples and regions.
//! Every number is a rational string such as `"3/4"`, `"-2"` or `"0.25"`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classifiers::{Classifier, Hyperplane, Layer, ThresholdNet};
use crate::error::{Error, Result};
use crate::kernel::KBot;
use crate::learners::{majority_learner, nn_learner, ConstantLearner, Learner, Sample};
use crate::numerics::{parse_rational, Interval, MetricKind, Point, Rational};
use crate::regions::{
    annulus, closed_ball, domain_box, outside_ball_compact, outside_ball_overt, VkSet,
};

fn default_k() -> usize {
    2
}

pub fn parse_point(xs: &[String]) -> Result<Point> {
    xs.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    #[default]
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    pub weights: Vec<Vec<String>>,
    pub bias: Vec<String>,
    #[serde(default)]
    pub activation: Activation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ClassifierSpec {
    Hyperplane {
        w: Vec<String>,
        b: String,
    },
    Net {
        layers: Vec<LayerSpec>,
        margin: String,
        k: usize,
    },
}

impl ClassifierSpec {
    pub fn build(&self) -> Result<Arc<dyn Classifier>> {
        Ok(match self {
            ClassifierSpec::Hyperplane { w, b } => {
                Arc::new(Hyperplane::new(parse_point(w)?, parse_rational(b)?)?)
            }
            ClassifierSpec::Net { layers, margin, k } => {
                let layers = layers
                    .iter()
                    .map(|l| {
                        Ok(Layer {
                            weights: l
                                .weights
                                .iter()
                                .map(|row| parse_point(row))
                                .collect::<Result<_>>()?,
                            bias: parse_point(&l.bias)?,
                            relu: l.activation == Activation::Relu,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Arc::new(ThresholdNet::new(layers, parse_rational(margin)?, *k)?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LearnerSpec {
    Nn {
        #[serde(rename = "tieMargin")]
        tie_margin: String,
        #[serde(default = "default_k")]
        k: usize,
        #[serde(default)]
        metric: Option<MetricKind>,
    },
    Majority {
        #[serde(default = "default_k")]
        k: usize,
    },
    /// `value: null` is the constant-⊥ learner.
    Constant {
        value: Option<usize>,
        #[serde(default = "default_k")]
        k: usize,
    },
}

impl LearnerSpec {
    pub fn build(&self, default_metric: MetricKind) -> Result<Arc<dyn Learner>> {
        Ok(match self {
            LearnerSpec::Nn {
                tie_margin,
                k,
                metric,
            } => Arc::new(nn_learner(
                parse_rational(tie_margin)?,
                metric.unwrap_or(default_metric),
                *k,
            )?),
            LearnerSpec::Majority { k } => Arc::new(majority_learner(*k)),
            LearnerSpec::Constant { value, k } => {
                if let Some(c) = value {
                    if c >= k {
                        return Err(Error::ColorOutOfRange { color: *c, k: *k });
                    }
                }
                Arc::new(ConstantLearner::new(
                    value.map_or(KBot::Bot, KBot::Color),
                    *k,
                ))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledPointSpec {
    pub x: Vec<String>,
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub points: Vec<LabeledPointSpec>,
}

impl SampleSpec {
    pub fn build(&self, dims: usize) -> Result<Sample> {
        let points = self
            .points
            .iter()
            .map(|p| Ok((parse_point(&p.x)?, p.label)))
            .collect::<Result<Vec<_>>>()?;
        Sample::new(dims, points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RegionSpec {
    Ball {
        center: Vec<String>,
        radius: String,
        #[serde(default)]
        metric: Option<MetricKind>,
    },
    Box {
        sides: Vec<[String; 2]>,
    },
    Annulus {
        center: Vec<String>,
        inner: String,
        outer: String,
        #[serde(default)]
        metric: Option<MetricKind>,
    },
    /// Points of `domain` at distance `> eps` (overt side) or `>= eps`
    /// (compact side) from `center`.
    OutsideBall {
        domain: std::boxed::Box<RegionSpec>,
        center: Vec<String>,
        eps: String,
        #[serde(default)]
        metric: Option<MetricKind>,
    },
    Empty {
        dims: usize,
    },
}

impl RegionSpec {
    pub fn build(&self, default_metric: MetricKind) -> Result<VkSet> {
        let m = |metric: &Option<MetricKind>| metric.unwrap_or(default_metric);
        match self {
            RegionSpec::Ball {
                center,
                radius,
                metric,
            } => closed_ball(&parse_point(center)?, &parse_rational(radius)?, m(metric)),
            RegionSpec::Box { sides } => domain_box(
                sides
                    .iter()
                    .map(|[lo, hi]| Interval::new(parse_rational(lo)?, parse_rational(hi)?))
                    .collect::<Result<Vec<_>>>()?,
            ),
            RegionSpec::Annulus {
                center,
                inner,
                outer,
                metric,
            } => annulus(
                &parse_point(center)?,
                &parse_rational(inner)?,
                &parse_rational(outer)?,
                m(metric),
            ),
            RegionSpec::OutsideBall {
                domain,
                center,
                eps,
                metric,
            } => {
                let domain = domain.build(default_metric)?;
                let x = parse_point(center)?;
                let eps: Rational = parse_rational(eps)?;
                Ok(VkSet {
                    compact: outside_ball_compact(&domain, &x, &eps, m(metric))?,
                    overt: outside_ball_overt(&domain, &x, &eps, m(metric))?,
                })
            }
            RegionSpec::Empty { dims } => Ok(VkSet::empty(*dims)),
        }
    }
}
