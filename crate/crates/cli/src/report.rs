//! Reports: the serialized outcome of one query.

use serde::Serialize;

use cverify::numerics::{format_point, format_rational, Approx, ApproxState, Point};
use cverify::schema::LabeledPointSpec;
use cverify::verify::Witness;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub op: String,
    pub verdict: String,
    pub committed: bool,
    pub fuel_used: u32,
    pub max_fuel: u32,
    pub trace: Vec<TraceEntry>,
    pub witnesses: Vec<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<RadiusJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub fuel: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RadiusJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_state: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_state: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessJson {
    Point {
        point: Vec<String>,
        color: usize,
    },
    Augmentation {
        added: Vec<LabeledPointSpec>,
        color: usize,
    },
    Deviation {
        sample: Vec<LabeledPointSpec>,
        index: usize,
        color: usize,
    },
}

fn labeled(points: &[(Point, usize)]) -> Vec<LabeledPointSpec> {
    points
        .iter()
        .map(|(p, l)| LabeledPointSpec {
            x: format_point(p),
            label: *l,
        })
        .collect()
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Point { point, color } => WitnessJson::Point {
                point: format_point(point),
                color: *color,
            },
            Witness::Augmentation { added, color } => WitnessJson::Augmentation {
                added: labeled(added),
                color: *color,
            },
            Witness::Deviation {
                sample,
                index,
                color,
            } => WitnessJson::Deviation {
                sample: labeled(sample),
                index: *index,
                color: *color,
            },
        }
    }
}

pub fn state_name(a: &Approx) -> &'static str {
    match a.state {
        ApproxState::Sentinel => "sentinel",
        ApproxState::Confirmed => "confirmed",
        ApproxState::Saturated => "saturated",
    }
}

pub fn approx_string(a: &Approx) -> String {
    format_rational(&a.value)
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.committed {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("op:        {}\n", self.op));
        out.push_str(&format!("verdict:   {}\n", self.verdict));
        out.push_str(&format!(
            "fuel used: {} of {}\n",
            self.fuel_used, self.max_fuel
        ));
        if let Some(r) = &self.radius {
            if let (Some(l), Some(s)) = (&r.lower, r.lower_state) {
                out.push_str(&format!("lower:     {l} ({s})\n"));
            }
            if let (Some(u), Some(s)) = (&r.upper, r.upper_state) {
                out.push_str(&format!("upper:     {u} ({s})\n"));
            }
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness:   {}\n", witness_text(w)));
        }
        out.push_str("trace:\n");
        for t in &self.trace {
            let mut parts = vec![format!("  {:>3}", t.fuel)];
            parts.extend(t.value.clone());
            parts.extend(t.lower.as_ref().map(|l| format!("lower {l}")));
            parts.extend(t.upper.as_ref().map(|u| format!("upper {u}")));
            out.push_str(&parts.join("  "));
            out.push('\n');
        }
        out
    }
}

fn tuple(p: &[String]) -> String {
    format!("({})", p.join(", "))
}

fn labeled_text(ps: &[LabeledPointSpec]) -> String {
    let parts: Vec<String> = ps
        .iter()
        .map(|p| format!("{} -> {}", tuple(&p.x), p.label))
        .collect();
    format!("[{}]", parts.join(", "))
}

fn witness_text(w: &WitnessJson) -> String {
    match w {
        WitnessJson::Point { point, color } => format!("f{} = {color}", tuple(point)),
        WitnessJson::Augmentation { added, color } => {
            format!("adding {} gives {color}", labeled_text(added))
        }
        WitnessJson::Deviation {
            sample,
            index,
            color,
        } => format!(
            "training on {} gives {color} at index {index}",
            labeled_text(sample)
        ),
    }
}
