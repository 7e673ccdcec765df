//! Named verification suites and their machine-readable reports.
//!
//! A suite is a list of tasks; each task yields one or more [`Check`]s and
//! every check becomes one case. Tasks may run concurrently on the ambient
//! rayon pool. Cases are sorted by name, so the report depends only on the
//! parameters (up to `runtime_ms`).

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lambda::{odd_power_sum_series, rank_eight_lambda_identities, triple_product_borel};
use crate::report::Check;
use crate::symfun::{
    box_partition_counts, hgr_quotient, kronecker_pairing, newton_table, pairing_bruteforce, partitions_of, DualWord,
};
use crate::tower::{denominator_identity, phi_map, rho_basis, s_q_image_report, stable_operation_tower, tau_basis};
use crate::wittm::{f10_squared_identity, product_closure};

pub const SUITE_NAMES: [&str; 11] = [
    "lemma-8-1",
    "lemma-8-2",
    "series-9-1",
    "tower-rho",
    "tower-tau",
    "tower-phi",
    "m-module",
    "pairing-5-8",
    "symfun-newton",
    "hgr-quotient",
    "all",
];

/// Values of `check` accepted by the `m-module` suite.
pub const M_MODULE_CHECKS: [&str; 3] = ["f10-squared", "closure", "denominators"];

/// Overrides for a suite run; `None` selects the suite's default.
///
/// `max_degree` is the series degree, the largest partition size in the
/// pairing suite and the Newton degree. `truncation` is the tower truncation
/// `N` and the largest `n` in the quotient suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub max_degree: Option<usize>,
    pub truncation: Option<usize>,
    pub tower_length: Option<usize>,
    pub j_max: Option<u32>,
    pub n_window: Option<i64>,
    pub check: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub cases: Vec<CaseResult>,
    pub status: Status,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    /// The report with every `runtime_ms` zeroed, for byte-level comparison.
    pub fn without_timings(&self) -> SuiteReport {
        let mut r = self.clone();
        r.cases.iter_mut().for_each(|c| c.runtime_ms = 0);
        r
    }

    /// One line per case and a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!("[{}] {} ({} ms)\n", c.status, c.name, c.runtime_ms));
            if c.status == Status::Fail {
                out.push_str(&format!("    expected: {}\n    actual:   {}\n", c.expected, c.actual));
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "suite {}: {} ({} cases, {} failed)\n",
            self.suite,
            self.status,
            self.cases.len(),
            failed
        ));
        out
    }
}

type TaskFn = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync>;

struct Task {
    name: String,
    run: TaskFn,
}

fn task(name: impl Into<String>, run: impl Fn() -> Result<Vec<Check>> + Send + Sync + 'static) -> Task {
    Task { name: name.into(), run: Box::new(run) }
}

struct Plan {
    params: BTreeMap<String, Value>,
    tasks: Vec<Task>,
}

fn plan(name: &str, p: &SuiteParams) -> Result<Plan> {
    let invalid = |msg: String| Err(Error::InvalidArgument(msg));
    if p.check.is_some() && name != "m-module" {
        return invalid(format!("--check applies only to m-module, not {name}"));
    }
    let mut params = BTreeMap::new();
    let tasks = match name {
        "lemma-8-1" => vec![task("exterior-powers", rank_eight_lambda_identities)],
        "lemma-8-2" => vec![task("borel", || {
            Ok(triple_product_borel()?.checks.into_iter().filter(|c| c.name.starts_with("borel-")).collect())
        })],
        "series-9-1" => {
            let d = p.max_degree.unwrap_or(41);
            if d < 3 {
                return invalid(format!("series degree must be at least 3, got {d}"));
            }
            params.insert("max-degree".into(), json!(d));
            vec![task("series", move || Ok(odd_power_sum_series(d)?.checks))]
        }
        "tower-rho" | "tower-tau" | "tower-phi" => {
            let n = p.truncation.unwrap_or(40);
            let l = p.tower_length.unwrap_or(20);
            if l == 0 || n < l {
                return invalid(format!("tower needs truncation >= length >= 1, got N={n}, L={l}"));
            }
            params.insert("truncation".into(), json!(n));
            params.insert("tower-length".into(), json!(l));
            match name {
                "tower-rho" => vec![
                    task("image", move || Ok(prefixed("image", s_q_image_report(n)))),
                    task("rho", move || Ok(prefixed("rho", rho_basis(n)?.checks))),
                    task("stable", move || Ok(prefixed("stable", stable_operation_tower(n, l)?.checks))),
                ],
                "tower-tau" => vec![task("tau", move || Ok(prefixed("tau", tau_basis(n)?.checks)))],
                _ => vec![task("phi", move || Ok(prefixed("phi", phi_map(l as i64, l as u32 + 1).checks)))],
            }
        }
        "m-module" => {
            let j = p.j_max.unwrap_or(3);
            let w = p.n_window.unwrap_or(2);
            if w < 0 {
                return invalid(format!("n-window must be non-negative, got {w}"));
            }
            let selected = match p.check.as_deref() {
                None => M_MODULE_CHECKS.to_vec(),
                Some(c) if M_MODULE_CHECKS.contains(&c) => vec![c],
                Some(c) => {
                    return invalid(format!("unknown m-module check {c:?}; expected one of {M_MODULE_CHECKS:?}"))
                }
            };
            if let Some(c) = &p.check {
                params.insert("check".into(), json!(c));
            }
            let mut tasks = Vec::new();
            if selected.contains(&"f10-squared") {
                tasks.push(task("f10-squared", || Ok(f10_squared_identity())));
            }
            if selected.contains(&"closure") {
                params.insert("j-max".into(), json!(j));
                params.insert("n-window".into(), json!(w));
                tasks.push(task("closure", move || Ok(product_closure(j, w).checks)));
            }
            if selected.contains(&"denominators") {
                tasks.push(task("denominators", || Ok(prefixed("denominators", denominator_identity(10).1))));
            }
            tasks
        }
        "pairing-5-8" => {
            let d = p.max_degree.unwrap_or(8);
            if d > 12 {
                return invalid(format!("pairing size above 12 is not supported, got {d}"));
            }
            params.insert("max-degree".into(), json!(d));
            (0..=d as u32).map(|k| task(format!("size-{k:02}"), move || Ok(vec![pairing_check(k)]))).collect()
        }
        "symfun-newton" => {
            let d = p.max_degree.unwrap_or(12);
            if d == 0 {
                return invalid("Newton degree must be at least 1".into());
            }
            params.insert("max-degree".into(), json!(d));
            params.insert("variables".into(), json!(8));
            (1..=8usize).map(|r| task(format!("r{r}"), move || newton_checks(r, d))).collect()
        }
        "hgr-quotient" => {
            let n = p.truncation.unwrap_or(6);
            if n == 0 || n > 10 {
                return invalid(format!("quotient n must be in 1..=10, got {n}"));
            }
            params.insert("truncation".into(), json!(n));
            (1..=n)
                .flat_map(|m| (1..=m).map(move |r| (r, m)))
                .map(|(r, m)| task(format!("r{r}-n{m}"), move || hgr_check(r, m)))
                .collect()
        }
        other => return invalid(format!("unknown suite {other:?}; expected one of {SUITE_NAMES:?}")),
    };
    Ok(Plan { params, tasks })
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| Check { name: format!("{prefix}-{}", c.name), ..c }).collect()
}

fn pairing_check(k: u32) -> Check {
    let parts = partitions_of(k);
    let mut mismatches = Vec::new();
    let mut pairs = 0usize;
    for lambda in &parts {
        for mu in &parts {
            let word = DualWord::new(mu.multiplicities());
            pairs += 1;
            if kronecker_pairing(lambda, &word) != pairing_bruteforce(lambda, &word) {
                mismatches.push(format!("{lambda} vs {mu}"));
            }
        }
    }
    let expected = format!("{pairs} pairs agree");
    let actual = if mismatches.is_empty() { expected.clone() } else { mismatches.join(", ") };
    Check::new(format!("size-{k:02}"), mismatches.is_empty(), expected, actual)
}

fn newton_checks(r: usize, d: usize) -> Result<Vec<Check>> {
    let t = newton_table(r, d)?;
    let mut bad_p = Vec::new();
    let mut bad_h = Vec::new();
    for k in 1..=d {
        let want = t.e_expected(k);
        if t.e_roundtrip_via_p(k)? != want {
            bad_p.push(k);
        }
        if t.e_roundtrip_via_h(k)? != want {
            bad_h.push(k);
        }
    }
    let check = |via: &str, bad: Vec<usize>| {
        Check::new(
            format!("r{r}-via-{via}"),
            bad.is_empty(),
            format!("identity through degree {d}"),
            if bad.is_empty() { format!("identity through degree {d}") } else { format!("fails at {bad:?}") },
        )
    };
    Ok(vec![check("p", bad_p), check("h", bad_h)])
}

fn hgr_check(r: usize, n: usize) -> Result<Vec<Check>> {
    let dims = hgr_quotient(r, n)?.dimensions();
    let mut counts = box_partition_counts(r, n);
    counts.resize(dims.len().max(counts.len()), 0);
    let mut got = dims;
    got.resize(counts.len(), 0);
    Ok(vec![Check::new(format!("r{r}-n{n}"), got == counts, format!("{counts:?}"), format!("{got:?}"))])
}

fn execute(suite: &str, plan: Plan) -> SuiteReport {
    let mut cases: Vec<CaseResult> = plan
        .tasks
        .par_iter()
        .flat_map_iter(|t| {
            let start = Instant::now();
            let outcome = (t.run)();
            let ms = start.elapsed().as_millis() as u64;
            let checks = outcome.unwrap_or_else(|e| vec![Check::new(format!("{}-error", t.name), false, "ok", e)]);
            checks.into_iter().map(move |c| CaseResult {
                name: c.name,
                status: Status::of(c.passed),
                expected: c.expected,
                actual: c.actual,
                runtime_ms: ms,
            })
        })
        .collect();
    cases.sort_by(|a, b| a.name.cmp(&b.name));
    let status = Status::of(cases.iter().all(|c| c.status == Status::Pass));
    SuiteReport { suite: suite.to_string(), params: plan.params, cases, status }
}

/// Runs one named suite, or every suite for `all` with case names prefixed by `suite/`.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    if name != "all" {
        return Ok(execute(name, plan(name, params)?));
    }
    let mut all_params = BTreeMap::new();
    let mut tasks = Vec::new();
    for &suite in SUITE_NAMES.iter().filter(|&&s| s != "all") {
        let mut p = params.clone();
        if suite != "m-module" {
            p.check = None;
        }
        let sub = plan(suite, &p)?;
        all_params.insert(suite.to_string(), json!(sub.params));
        for t in sub.tasks {
            let prefix = suite.to_string();
            let run = t.run;
            tasks.push(task(format!("{suite}/{}", t.name), move || {
                Ok(run()?.into_iter().map(|c| Check { name: format!("{prefix}/{}", c.name), ..c }).collect())
            }));
        }
    }
    Ok(execute("all", Plan { params: all_params, tasks }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_product_suite_has_four_cases() {
        let r = run_suite("lemma-8-2", &SuiteParams::default()).unwrap();
        assert_eq!(r.cases.len(), 4);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn unknown_suite_and_bad_ranges() {
        assert!(run_suite("lemma-9-9", &SuiteParams::default()).is_err());
        let bad = SuiteParams { truncation: Some(4), tower_length: Some(6), ..Default::default() };
        assert!(run_suite("tower-rho", &bad).is_err());
        let bad = SuiteParams { check: Some("nope".into()), ..Default::default() };
        assert!(run_suite("m-module", &bad).is_err());
        let stray = SuiteParams { check: Some("closure".into()), ..Default::default() };
        assert!(run_suite("lemma-8-1", &stray).is_err());
    }

    #[test]
    fn cases_sorted_and_failures_propagate() {
        let p = SuiteParams { max_degree: Some(9), ..Default::default() };
        let r = run_suite("series-9-1", &p).unwrap();
        assert!(r.cases.windows(2).all(|w| w[0].name <= w[1].name));
        let mut broken = r.clone();
        broken.cases[0].status = Status::Fail;
        assert_eq!(broken.failures().count(), 1);
    }
}
