//! Fuel iteration: runs a validated query from fuel 0 up to its budget.

use cverify::kernel::{Fuel, TwoBot, Verdict};
use cverify::learners::{does_deviate, robust_point, sprs_or_dns};
use cverify::numerics::Approx;
use cverify::verify::{
    constant_value, exists_value, fixed_value, forall_value, locally_constant, optimal_radius,
    radius_lower, radius_upper_at, Outcome, Witness,
};

use crate::query::{OpName, Query};
use crate::report::{approx_string, state_name, RadiusJson, Report, TraceEntry, WitnessJson};
use crate::CliError;

trait Answer {
    fn label(&self) -> &'static str;
    fn committed(&self) -> bool;
}

impl Answer for Verdict {
    fn label(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Unknown => "unknown",
        }
    }

    fn committed(&self) -> bool {
        self.is_confirmed()
    }
}

impl Answer for TwoBot {
    fn label(&self) -> &'static str {
        match self {
            TwoBot::Zero => "0",
            TwoBot::One => "1",
            TwoBot::Bot => "bot",
        }
    }

    fn committed(&self) -> bool {
        self.is_committed()
    }
}

fn iterate<T, F>(op: OpName, max_fuel: u32, step: F) -> Result<Report, CliError>
where
    T: Answer,
    F: Fn(Fuel) -> cverify::Result<Outcome<T>>,
{
    let mut trace = Vec::new();
    let mut d = 0;
    loop {
        let out = step(Fuel(d))?;
        trace.push(TraceEntry {
            fuel: d,
            value: Some(out.value.label().to_string()),
            lower: None,
            upper: None,
        });
        if out.value.committed() || d == max_fuel {
            return Ok(Report {
                op: op.name().to_string(),
                verdict: out.value.label().to_string(),
                committed: out.value.committed(),
                fuel_used: d,
                max_fuel,
                trace,
                witnesses: out.witnesses.iter().map(WitnessJson::from).collect(),
                radius: None,
            });
        }
        d += 1;
    }
}

fn one_sided(
    op: OpName,
    max_fuel: u32,
    lower: bool,
    step: impl Fn(Fuel) -> Result<(Approx, Option<Witness>), CliError>,
) -> Result<Report, CliError> {
    let mut trace = Vec::new();
    let mut last = None;
    for d in 0..=max_fuel {
        let (a, w) = step(Fuel(d))?;
        let s = Some(approx_string(&a));
        trace.push(TraceEntry {
            fuel: d,
            value: None,
            lower: if lower { s.clone() } else { None },
            upper: if lower { None } else { s },
        });
        last = Some((a, w));
    }
    let (a, w) = last.expect("fuel range is nonempty");
    let committed = a.is_committed();
    let side = (Some(approx_string(&a)), Some(state_name(&a)));
    let radius = if lower {
        RadiusJson {
            lower: side.0,
            lower_state: side.1,
            upper: None,
            upper_state: None,
        }
    } else {
        RadiusJson {
            lower: None,
            lower_state: None,
            upper: side.0,
            upper_state: side.1,
        }
    };
    Ok(Report {
        op: op.name().to_string(),
        verdict: if committed { "confirmed" } else { "unknown" }.to_string(),
        committed,
        fuel_used: max_fuel,
        max_fuel,
        trace,
        witnesses: w.iter().map(WitnessJson::from).collect(),
        radius: Some(radius),
    })
}

/// Runs `q` with fuel `0, 1, ...` up to its budget, stopping at the first
/// committed answer (or convergence, for `optimalRadius`).
pub fn run_query(q: &Query) -> Result<Report, CliError> {
    use OpName::*;
    let max = q.max_fuel;
    let m = q.metric;
    match q.op {
        ExistsValue => {
            let (f, a, c) = (
                q.classifier()?,
                q.region.as_ref().unwrap(),
                q.color.unwrap(),
            );
            iterate(q.op, max, |d| exists_value(c, &a.overt, f, d))
        }
        ForallValue => {
            let (f, a, c) = (
                q.classifier()?,
                q.region.as_ref().unwrap(),
                q.color.unwrap(),
            );
            iterate(q.op, max, |d| {
                Ok(Outcome::bare(forall_value(c, &a.compact, f, d)?))
            })
        }
        FixedValue => {
            let (f, a, c) = (
                q.classifier()?,
                q.region.as_ref().unwrap(),
                q.color.unwrap(),
            );
            iterate(q.op, max, |d| fixed_value(c, a, f, d))
        }
        ConstantValue => {
            let (f, a) = (q.classifier()?, q.region.as_ref().unwrap());
            iterate(q.op, max, |d| constant_value(a, f, d))
        }
        LocallyConstant => {
            let (f, x, r) = (
                q.classifier()?,
                q.point.as_ref().unwrap(),
                q.radius.as_ref().unwrap(),
            );
            iterate(q.op, max, |d| locally_constant(x, r, m, f, d))
        }
        RadiusLower => {
            let f = q.classifier.clone().unwrap();
            let lower = radius_lower(q.point.as_ref().unwrap(), m, f, q.ceiling.as_ref().unwrap())?;
            one_sided(q.op, max, true, |d| Ok((lower.approx(d), None)))
        }
        RadiusUpper => {
            let (f, x, c) = (
                q.classifier()?,
                q.point.as_ref().unwrap(),
                q.ceiling.as_ref().unwrap(),
            );
            one_sided(q.op, max, false, |d| Ok(radius_upper_at(x, m, f, c, d)?))
        }
        OptimalRadius => {
            let rep = optimal_radius(
                q.point.as_ref().unwrap(),
                m,
                q.classifier.clone().unwrap(),
                q.ceiling.as_ref().unwrap(),
                q.tol.as_ref().unwrap(),
                Fuel(max),
            )?;
            Ok(Report {
                op: q.op.name().to_string(),
                verdict: if rep.converged {
                    "confirmed"
                } else {
                    "unknown"
                }
                .to_string(),
                committed: rep.converged,
                fuel_used: rep.fuel_used.0,
                max_fuel: max,
                trace: rep
                    .trace
                    .iter()
                    .map(|s| TraceEntry {
                        fuel: s.fuel.0,
                        value: None,
                        lower: Some(approx_string(&s.lower)),
                        upper: Some(approx_string(&s.upper)),
                    })
                    .collect(),
                witnesses: rep.witness.iter().map(WitnessJson::from).collect(),
                radius: Some(RadiusJson {
                    lower: Some(approx_string(&rep.lower)),
                    lower_state: Some(state_name(&rep.lower)),
                    upper: Some(approx_string(&rep.upper)),
                    upper_state: Some(state_name(&rep.upper)),
                }),
            })
        }
        DoesDeviate => {
            let (l, dom) = (q.learner()?, q.domain.as_ref().unwrap());
            iterate(q.op, max, |d| does_deviate(l, dom, d))
        }
        RobustPoint => {
            let l = q.learner()?;
            let (x, s, dom) = (
                q.point.as_ref().unwrap(),
                q.sample.as_ref().unwrap(),
                q.domain.as_ref().unwrap(),
            );
            iterate(q.op, max, |d| robust_point(x, s, l, dom, d))
        }
        SprsOrDns => {
            let l = q.learner()?;
            let (x, s, dom) = (
                q.point.as_ref().unwrap(),
                q.sample.as_ref().unwrap(),
                q.domain.as_ref().unwrap(),
            );
            let (n, eps) = (q.n.unwrap(), q.eps.as_ref().unwrap());
            iterate(q.op, max, |d| sprs_or_dns(l, n, eps, s, x, dom, m, d))
        }
    }
}
