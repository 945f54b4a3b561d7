//! Query files: parsing, operand loading and validation.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use cverify::classifiers::Classifier;
use cverify::learners::{Learner, Sample, AUGMENTATION_CAP};
use cverify::numerics::{int, parse_rational, MetricKind, Point, Rational};
use cverify::regions::VkSet;
use cverify::schema::{parse_point, ClassifierSpec, LearnerSpec, RegionSpec, SampleSpec};

use crate::CliError;

pub const DEFAULT_MAX_FUEL: u32 = 12;

/// An operand given inline or as a path relative to the query file.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Operand<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct QuerySpec {
    pub op: String,
    pub classifier: Option<Operand<ClassifierSpec>>,
    pub learner: Option<Operand<LearnerSpec>>,
    pub sample: Option<Operand<SampleSpec>>,
    pub region: Option<RegionSpec>,
    pub domain: Option<RegionSpec>,
    pub point: Option<Vec<String>>,
    pub color: Option<usize>,
    pub radius: Option<String>,
    pub tol: Option<String>,
    pub ceiling: Option<String>,
    pub eps: Option<String>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub metric: Option<MetricKind>,
    pub max_fuel: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpName {
    ExistsValue,
    ForallValue,
    FixedValue,
    ConstantValue,
    LocallyConstant,
    RadiusLower,
    RadiusUpper,
    OptimalRadius,
    DoesDeviate,
    RobustPoint,
    SprsOrDns,
}

impl OpName {
    pub const ALL: [OpName; 11] = [
        OpName::ExistsValue,
        OpName::ForallValue,
        OpName::FixedValue,
        OpName::ConstantValue,
        OpName::LocallyConstant,
        OpName::RadiusLower,
        OpName::RadiusUpper,
        OpName::OptimalRadius,
        OpName::DoesDeviate,
        OpName::RobustPoint,
        OpName::SprsOrDns,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpName::ExistsValue => "existsValue",
            OpName::ForallValue => "forallValue",
            OpName::FixedValue => "fixedValue",
            OpName::ConstantValue => "constantValue",
            OpName::LocallyConstant => "locallyConstant",
            OpName::RadiusLower => "radiusLower",
            OpName::RadiusUpper => "radiusUpper",
            OpName::OptimalRadius => "optimalRadius",
            OpName::DoesDeviate => "doesDeviate",
            OpName::RobustPoint => "robustPoint",
            OpName::SprsOrDns => "sprsOrDns",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Self::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| CliError::Validation(format!("unknown op {s:?}")))
    }
}

/// A validated query with every operand built.
#[derive(Clone, Debug)]
pub struct Query {
    pub op: OpName,
    pub metric: MetricKind,
    pub max_fuel: u32,
    pub classifier: Option<Arc<dyn Classifier>>,
    pub learner: Option<Arc<dyn Learner>>,
    pub sample: Option<Sample>,
    pub region: Option<VkSet>,
    pub domain: Option<VkSet>,
    pub point: Option<Point>,
    pub color: Option<usize>,
    pub radius: Option<Rational>,
    pub tol: Option<Rational>,
    pub ceiling: Option<Rational>,
    pub eps: Option<Rational>,
    pub n: Option<usize>,
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

fn load<T>(op: &Operand<T>, base: &Path, what: &str) -> Result<T, CliError>
where
    T: DeserializeOwned + Clone,
{
    match op {
        Operand::Inline(t) => Ok(t.clone()),
        Operand::Path(p) => {
            let path: PathBuf = base.join(p);
            let text = fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("{what} {}: {e}", path.display())))?;
            parse_json(&text, &format!("{what} {}", path.display()))
        }
    }
}

fn rational(s: &Option<String>) -> Result<Option<Rational>, CliError> {
    s.as_deref()
        .map(parse_rational)
        .transpose()
        .map_err(CliError::from)
}

fn require<T>(v: Option<T>, field: &str, op: OpName) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Validation(format!("{} needs \"{field}\"", op.name())))
}

fn dims_match(what: &str, expected: usize, found: usize) -> Result<(), CliError> {
    if expected == found {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{what} has dimension {found}, expected {expected}"
        )))
    }
}

impl Query {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_str(&text, base)
    }

    pub fn from_str(text: &str, base: &Path) -> Result<Self, CliError> {
        let spec: QuerySpec = parse_json(text, "query")?;
        Self::from_spec(&spec, base)
    }

    pub fn from_spec(spec: &QuerySpec, base: &Path) -> Result<Self, CliError> {
        let op = OpName::parse(&spec.op)?;
        let metric = spec.metric.unwrap_or_default();
        let classifier = spec
            .classifier
            .as_ref()
            .map(|c| load(c, base, "classifier")?.build().map_err(CliError::from))
            .transpose()?;
        let learner = spec
            .learner
            .as_ref()
            .map(|l| {
                load(l, base, "learner")?
                    .build(metric)
                    .map_err(CliError::from)
            })
            .transpose()?;
        let point = spec.point.as_deref().map(parse_point).transpose()?;
        let region = spec.region.as_ref().map(|r| r.build(metric)).transpose()?;
        let domain = spec.domain.as_ref().map(|r| r.build(metric)).transpose()?;
        let sample = match &spec.sample {
            Some(s) => {
                let dims = point
                    .as_ref()
                    .map(|p| p.len())
                    .or_else(|| domain.as_ref().map(|d| d.dims()))
                    .ok_or_else(|| {
                        CliError::Validation("sample needs \"point\" or \"domain\"".into())
                    })?;
                Some(load(s, base, "sample")?.build(dims)?)
            }
            None => None,
        };
        let q = Query {
            op,
            metric,
            max_fuel: spec.max_fuel.unwrap_or(DEFAULT_MAX_FUEL),
            classifier,
            learner,
            sample,
            region,
            domain,
            point,
            color: spec.color,
            radius: rational(&spec.radius)?,
            tol: rational(&spec.tol)?,
            ceiling: rational(&spec.ceiling)?,
            eps: rational(&spec.eps)?,
            n: spec.n,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn classifier(&self) -> Result<&dyn Classifier, CliError> {
        require(self.classifier.as_deref(), "classifier", self.op)
    }

    pub fn learner(&self) -> Result<&dyn Learner, CliError> {
        require(self.learner.as_deref(), "learner", self.op)
    }

    fn validate(&self) -> Result<(), CliError> {
        use OpName::*;
        let op = self.op;
        let positive = |v: &Option<Rational>, field: &str| -> Result<(), CliError> {
            if *require(v.as_ref(), field, op)? > int(0) {
                Ok(())
            } else {
                Err(CliError::Validation(format!(
                    "\"{field}\" must be positive"
                )))
            }
        };
        match op {
            ExistsValue | ForallValue | FixedValue | ConstantValue => {
                let f = self.classifier()?;
                let region = require(self.region.as_ref(), "region", op)?;
                dims_match("region", f.dims(), region.dims())?;
                if op != ConstantValue {
                    let c = require(self.color, "color", op)?;
                    if c >= f.colors() {
                        return Err(CliError::Validation(format!(
                            "color {c} out of range for k = {}",
                            f.colors()
                        )));
                    }
                }
            }
            LocallyConstant | RadiusLower | RadiusUpper | OptimalRadius => {
                let f = self.classifier()?;
                let x = require(self.point.as_ref(), "point", op)?;
                dims_match("point", f.dims(), x.len())?;
                if op == LocallyConstant {
                    positive(&self.radius, "radius")?;
                } else {
                    positive(&self.ceiling, "ceiling")?;
                }
                if op == OptimalRadius && *require(self.tol.as_ref(), "tol", op)? < int(0) {
                    return Err(CliError::Validation("\"tol\" must be nonnegative".into()));
                }
            }
            DoesDeviate => {
                self.learner()?;
                require(self.domain.as_ref(), "domain", op)?;
            }
            RobustPoint | SprsOrDns => {
                let l = self.learner()?;
                let x = require(self.point.as_ref(), "point", op)?;
                let domain = require(self.domain.as_ref(), "domain", op)?;
                let s = require(self.sample.as_ref(), "sample", op)?;
                dims_match("domain", x.len(), domain.dims())?;
                s.check_labels(l.colors())?;
                if op == SprsOrDns {
                    let n = require(self.n, "N", op)?;
                    if n > AUGMENTATION_CAP {
                        return Err(CliError::Validation(format!(
                            "N = {n} exceeds the augmentation cap {AUGMENTATION_CAP}"
                        )));
                    }
                    positive(&self.eps, "eps")?;
                }
            }
        }
        Ok(())
    }
}
