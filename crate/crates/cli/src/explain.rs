//! Static description of what a query computes. Nothing is evaluated.

use cverify::numerics::format_point;

use crate::query::{OpName, Query};

struct Plan {
    realizes: &'static str,
    one: &'static str,
    zero: &'static str,
    branches: &'static [&'static str],
}

fn plan(op: OpName) -> Plan {
    use OpName::*;
    match op {
        ExistsValue => Plan {
            realizes: "semi-decision  ∃ x ∈ A. f(x) = n",
            one: "confirmed: a point of the overt enumeration of A evaluates to n",
            zero: "",
            branches: &["∃ over the overt side of A (branch-and-bound over grid cells; witness point reported)"],
        },
        ForallValue => Plan {
            realizes: "semi-decision  ∀ x ∈ A. f(x) = n",
            one: "confirmed: every box of a refined compact cover of A has envelope exactly {n}",
            zero: "",
            branches: &["∀ over the compact side of A (lazy box refinement)"],
        },
        FixedValue => Plan {
            realizes: "race  (∀ x ∈ A. f(x) = n)  vs  (∃ x ∈ A. f(x) ∈ k \\ {n})",
            one: "∀ over the compact side of A",
            zero: "∃ over the overt side of A, one search per other color",
            branches: &[],
        },
        ConstantValue => Plan {
            realizes: "race  (∃ n. ∀ x ∈ A. f(x) = n)  vs  (∀ n. ∃ x ∈ A. f(x) ∈ k \\ {n})",
            one: "∀ over the compact side of A, one check per color",
            zero: "∃ over the overt side of A, one search per color",
            branches: &[],
        },
        LocallyConstant => Plan {
            realizes: "race  (∃ i. ∀ y ∈ B̄(x, r). f(y) = i)  vs  (∃ y, z ∈ B(x, r). ⊥ ≠ f(y) ≠ f(z) ≠ ⊥)",
            one: "∀ over the compact cover of the closed ball, one check per color",
            zero: "∃ over the overt enumeration of the open ball (two distinct committed colors)",
            branches: &[],
        },
        RadiusLower => Plan {
            realizes: "lower real  sup { r : ∃ i. ∀ y ∈ B̄(x, r). f(y) = i }",
            one: "",
            zero: "",
            branches: &[
                "sup side: scan the dyadic radius grid from the ceiling down",
                "each radius is accepted by a ∀ check over the closed ball's compact cover",
            ],
        },
        RadiusUpper => Plan {
            realizes: "upper real  inf { r : ∃ y ∈ B(x, r). ⊥ ≠ f(x) ≠ f(y) ≠ ⊥ }",
            one: "",
            zero: "",
            branches: &[
                "inf side: nearest enumerated point with another committed color",
                "rounded up to the dyadic radius grid",
            ],
        },
        OptimalRadius => Plan {
            realizes: "two-sided bracket of the optimal robustness radius",
            one: "",
            zero: "",
            branches: &[
                "sup side (lower bound): ∀ checks over closed balls",
                "inf side (upper bound): ∃ search for a differently colored point",
                "stops once both sides are committed and within tol",
            ],
        },
        DoesDeviate => Plan {
            realizes: "semi-decision  ∃ distinct (x_i, n_i) ∃ m. L((x_i, n_i))(x_m) ∈ k \\ {n_m}",
            one: "confirmed: a tuple drawn from the domain enumeration is mislabeled after training",
            zero: "",
            branches: &["∃ over tuples of distinct domain points and all label assignments, dovetailed by length and grid depth"],
        },
        RobustPoint => Plan {
            realizes: "race  (∀ y ∈ D ∀ n. L(s ++ (y, n))(x) = L(s)(x) ∈ k)  vs  (∃ y ∈ D ∃ n. ⊥ ≠ L(s)(x) ≠ L(s ++ (y, n))(x) ≠ ⊥)",
            one: "∀ over the compact cover of the domain via the learner's box-retrain envelope",
            zero: "∃ over the overt enumeration of the domain, every label",
            branches: &[],
        },
        SprsOrDns => Plan {
            realizes: "race  dense  vs  sparse  for extensions by at most N points",
            one: "dense: ∀ tuples of boxes from {d(y, x) >= eps} and all labels, every retrained answer at x equals L(s)(x) ≠ ⊥",
            zero: "sparse: ∃ two extensions by points with d(y, x) > eps whose answers at x are distinct colors",
            branches: &[],
        },
    }
}

pub fn explain(q: &Query) -> String {
    let p = plan(q.op);
    let mut out = format!("operation: {}\nrealizes:  {}\n", q.op.name(), p.realizes);
    if !p.one.is_empty() && !p.zero.is_empty() {
        out.push_str(&format!("branch 1:  {}\n", p.one));
        out.push_str(&format!("branch 0:  {}\n", p.zero));
        out.push_str("both branches run at every fuel; the first to confirm commits the answer\n");
    } else if !p.one.is_empty() {
        out.push_str(&format!("{}\n", p.one));
    }
    for b in p.branches {
        out.push_str(&format!("  - {b}\n"));
    }
    out.push_str(&format!("metric:    {}\n", q.metric.name()));
    if let Some(x) = &q.point {
        out.push_str(&format!("point:     ({})\n", format_point(x).join(", ")));
    }
    if let Some(f) = &q.classifier {
        out.push_str(&format!("classifier: {}\n", f.describe()));
    }
    if let Some(l) = &q.learner {
        out.push_str(&format!("learner:   {}\n", l.describe()));
    }
    out.push_str(&format!("max fuel:  {}\n", q.max_fuel));
    out
}
