//! Golden corpus bundled into the binary. Each case runs twice; the two
//! outputs must be byte-identical and match the expected verdict and exit
//! code.

use std::path::Path;

use serde::Deserialize;

use crate::query::Query;
use crate::run::run_query;

pub const CORPUS: [(&str, &str); 10] = [
    (
        "01_constant_ball",
        include_str!("../golden/01_constant_ball.json"),
    ),
    (
        "02_locally_constant_tangent",
        include_str!("../golden/02_locally_constant_tangent.json"),
    ),
    (
        "03_locally_constant_crossing",
        include_str!("../golden/03_locally_constant_crossing.json"),
    ),
    (
        "04_exists_net",
        include_str!("../golden/04_exists_net.json"),
    ),
    (
        "05_forall_straddle",
        include_str!("../golden/05_forall_straddle.json"),
    ),
    (
        "06_optimal_radius",
        include_str!("../golden/06_optimal_radius.json"),
    ),
    (
        "07_robust_majority",
        include_str!("../golden/07_robust_majority.json"),
    ),
    ("08_sparse_nn", include_str!("../golden/08_sparse_nn.json")),
    (
        "09_deviate_majority",
        include_str!("../golden/09_deviate_majority.json"),
    ),
    (
        "10_malformed_rational",
        include_str!("../golden/10_malformed_rational.json"),
    ),
];

#[derive(Debug, Deserialize)]
pub struct Expect {
    pub verdict: Option<String>,
    pub exit: i32,
}

#[derive(Debug, Deserialize)]
pub struct GoldenCase {
    pub name: String,
    pub expect: Expect,
    pub query: serde_json::Value,
}

/// What one run of a query produced: the exit code, the verdict (if a
/// report was made) and the exact bytes that would be printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub exit: i32,
    pub verdict: Option<String>,
    pub bytes: String,
}

pub fn run_json(query: &str, base: &Path) -> RunOutput {
    match Query::from_str(query, base).and_then(|q| run_query(&q)) {
        Ok(r) => RunOutput {
            exit: r.exit_code(),
            verdict: Some(r.verdict.clone()),
            bytes: r.to_json(),
        },
        Err(e) => RunOutput {
            exit: e.exit_code(),
            verdict: None,
            bytes: format!("{e}\n"),
        },
    }
}

pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn run_case(text: &str) -> CaseResult {
    let case: GoldenCase = match serde_json::from_str(text) {
        Ok(c) => c,
        Err(e) => {
            return CaseResult {
                name: "?".into(),
                passed: false,
                detail: format!("unreadable case: {e}"),
            }
        }
    };
    let query = case.query.to_string();
    let first = run_json(&query, Path::new("."));
    let second = run_json(&query, Path::new("."));
    let mut problems = Vec::new();
    if first != second {
        problems.push("outputs differ between runs".to_string());
    }
    if first.exit != case.expect.exit {
        problems.push(format!(
            "exit {} (expected {})",
            first.exit, case.expect.exit
        ));
    }
    if first.verdict != case.expect.verdict {
        problems.push(format!(
            "verdict {:?} (expected {:?})",
            first.verdict, case.expect.verdict
        ));
    }
    let shown = first.verdict.as_deref().unwrap_or("error");
    CaseResult {
        name: case.name,
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("verdict={shown} exit={}", first.exit)
        } else {
            problems.join("; ")
        },
    }
}

/// Runs the whole corpus; returns the printed summary and whether every
/// case passed.
pub fn selftest() -> (String, bool) {
    let mut out = String::new();
    let mut ok = 0;
    for (_, text) in CORPUS {
        let r = run_case(text);
        ok += usize::from(r.passed);
        out.push_str(&format!(
            "{} {:<28} {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        ));
    }
    out.push_str(&format!("{ok}/{} golden cases passed\n", CORPUS.len()));
    (out, ok == CORPUS.len())
}
