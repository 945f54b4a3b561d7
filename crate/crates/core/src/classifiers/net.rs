use num_traits::{Signed, Zero};

use super::{Classifier, ColorEnvelope};
use crate::error::{Error, Result};
use crate::kernel::{Fuel, KBot};
use crate::numerics::{format_rational, Interval, IntervalBox, Rational};

/// Affine map `y = W x + c`, optionally followed by ReLU.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub weights: Vec<Vec<Rational>>,
    pub bias: Vec<Rational>,
    pub relu: bool,
}

impl Layer {
    fn inputs(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    fn outputs(&self) -> usize {
        self.weights.len()
    }

    fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(row, c)| {
                let v = row.iter().zip(x).map(|(w, t)| w * t).sum::<Rational>() + c;
                if self.relu && v.is_negative() {
                    Rational::zero()
                } else {
                    v
                }
            })
            .collect()
    }

    fn apply_interval(&self, x: &[Interval]) -> Vec<Interval> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(row, c)| {
                let v = row
                    .iter()
                    .zip(x)
                    .map(|(w, t)| t.scale(w))
                    .fold(Interval::point(c.clone()), |acc, t| acc.add(&t));
                if self.relu {
                    v.relu()
                } else {
                    v
                }
            })
            .collect()
    }
}

/// Feedforward ReLU network with one score per color. Color `j` is
/// assigned where its score beats every other score by more than the
/// margin; everywhere else the output is ⊥.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdNet {
    layers: Vec<Layer>,
    margin: Rational,
}

impl ThresholdNet {
    pub fn new(layers: Vec<Layer>, margin: Rational, k: usize) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::ShapeMismatch("network has no layers".into()));
        }
        if !margin.is_positive() {
            return Err(Error::InvalidInput("margin must be positive".into()));
        }
        for (i, l) in layers.iter().enumerate() {
            if l.outputs() == 0 || l.inputs() == 0 {
                return Err(Error::ShapeMismatch(format!("layer {} is empty", i)));
            }
            if l.weights.iter().any(|r| r.len() != l.inputs()) {
                return Err(Error::ShapeMismatch(format!("layer {} has ragged rows", i)));
            }
            if l.bias.len() != l.outputs() {
                return Err(Error::ShapeMismatch(format!(
                    "layer {} has {} rows but {} biases",
                    i,
                    l.outputs(),
                    l.bias.len()
                )));
            }
            if i > 0 && layers[i - 1].outputs() != l.inputs() {
                return Err(Error::ShapeMismatch(format!(
                    "layer {} expects {} inputs, previous layer gives {}",
                    i,
                    l.inputs(),
                    layers[i - 1].outputs()
                )));
            }
        }
        let out = layers.last().expect("nonempty").outputs();
        if out != k {
            return Err(Error::ShapeMismatch(format!(
                "network has {} outputs for {} colors",
                out, k
            )));
        }
        Ok(Self { layers, margin })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn margin(&self) -> &Rational {
        &self.margin
    }

    pub fn scores(&self, x: &[Rational]) -> Vec<Rational> {
        self.layers.iter().fold(x.to_vec(), |acc, l| l.apply(&acc))
    }

    pub fn score_ranges(&self, b: &IntervalBox) -> Vec<Interval> {
        self.layers
            .iter()
            .fold(b.sides().to_vec(), |acc, l| l.apply_interval(&acc))
    }
}

impl Classifier for ThresholdNet {
    fn colors(&self) -> usize {
        self.layers.last().expect("nonempty").outputs()
    }

    fn dims(&self) -> usize {
        self.layers[0].inputs()
    }

    fn eval_point(&self, x: &[Rational], _fuel: Fuel) -> KBot {
        let s = self.scores(x);
        for (j, sj) in s.iter().enumerate() {
            let runner_up = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, v)| v)
                .max();
            let wins = match runner_up {
                Some(r) => sj - r > self.margin,
                None => true,
            };
            if wins {
                return KBot::Color(j);
            }
        }
        KBot::Bot
    }

    fn eval_box(&self, b: &IntervalBox, _fuel: Fuel) -> ColorEnvelope {
        let s = self.score_ranges(b);
        let mut possible = Vec::new();
        let mut certain = false;
        for (j, sj) in s.iter().enumerate() {
            let others = || s.iter().enumerate().filter(move |&(i, _)| i != j);
            let max_lo = others().map(|(_, v)| v.lo()).max();
            let max_hi = others().map(|(_, v)| v.hi()).max();
            let upper_ok = max_lo.is_none_or(|m| sj.hi() - m > self.margin);
            let lower_ok = max_hi.is_none_or(|m| sj.lo() - m > self.margin);
            if upper_ok {
                possible.push(j);
            }
            certain |= lower_ok;
        }
        ColorEnvelope::new(possible, !certain)
    }

    fn describe(&self) -> String {
        format!(
            "threshold net, {} layers, {} inputs, {} colors, margin {}",
            self.layers.len(),
            self.dims(),
            self.colors(),
            format_rational(&self.margin)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    /// scores (x1, -x1) on a two-dimensional input
    fn mirror() -> ThresholdNet {
        ThresholdNet::new(
            vec![Layer {
                weights: vec![vec![int(1), int(0)], vec![int(-1), int(0)]],
                bias: vec![int(0), int(0)],
                relu: false,
            }],
            rat(1, 10),
            2,
        )
        .unwrap()
    }

    #[test]
    fn clear_winner() {
        assert_eq!(
            mirror().eval_point(&[int(1), int(0)], Fuel(0)),
            KBot::Color(0)
        );
    }

    #[test]
    fn symmetric_scores_are_bot() {
        assert_eq!(mirror().eval_point(&[int(0), int(0)], Fuel(0)), KBot::Bot);
    }

    #[test]
    fn margin_is_strict() {
        // margin exactly 1/10 at x1 = 1/20
        assert_eq!(
            mirror().eval_point(&[rat(1, 20), int(0)], Fuel(0)),
            KBot::Bot
        );
        assert_eq!(
            mirror().eval_point(&[rat(1, 19), int(0)], Fuel(0)),
            KBot::Color(0)
        );
    }

    #[test]
    fn box_margin_interval() {
        let b = IntervalBox::new(vec![
            Interval::new(int(1), int(2)).unwrap(),
            Interval::new(int(0), int(1)).unwrap(),
        ])
        .unwrap();
        assert_eq!(mirror().eval_box(&b, Fuel(0)), ColorEnvelope::exactly(0));
    }

    #[test]
    fn relu_hidden_layer() {
        let net = ThresholdNet::new(
            vec![
                Layer {
                    weights: vec![vec![int(1)], vec![int(-1)]],
                    bias: vec![int(0), int(0)],
                    relu: true,
                },
                Layer {
                    weights: vec![vec![int(1), int(0)], vec![int(0), int(1)]],
                    bias: vec![int(0), int(0)],
                    relu: false,
                },
            ],
            rat(1, 10),
            2,
        )
        .unwrap();
        assert_eq!(net.eval_point(&[int(-1)], Fuel(0)), KBot::Color(1));
        assert_eq!(net.scores(&[int(2)]), vec![int(2), int(0)]);
        let b = IntervalBox::new(vec![Interval::new(int(-1), int(1)).unwrap()]).unwrap();
        assert_eq!(net.eval_box(&b, Fuel(0)), ColorEnvelope::new([0, 1], true));
    }

    #[test]
    fn shape_errors() {
        let bad_bias = Layer {
            weights: vec![vec![int(1)]],
            bias: vec![],
            relu: false,
        };
        assert!(matches!(
            ThresholdNet::new(vec![bad_bias], rat(1, 10), 1),
            Err(Error::ShapeMismatch(_))
        ));
        let l = Layer {
            weights: vec![vec![int(1)]],
            bias: vec![int(0)],
            relu: false,
        };
        assert!(matches!(
            ThresholdNet::new(vec![l], rat(1, 10), 2),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
