//! Seeded law checker.
//!
//! Every catalog entry owns a generator and a checker. The generator writes
//! an instance as workspace JSON; the checker reads it back and evaluates
//! both sides of each equation or inequality exactly. Because instances
//! round-trip through JSON, a counterexample from a report can be replayed
//! verbatim with [`check_law`].
//!
//! Each case gets its own RNG, seeded from `(seed, law id, case)`, so adding
//! or removing a law never changes another law's instances.

mod catalog;

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gen::SizeBudget;
use crate::json::{self, Workspace};
use crate::measure::Measure;
use crate::rational::Rational;

pub use catalog::catalog;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    /// Must hold on every instance.
    Asserted,
    /// Known not to hold in general; the suite must find a case where it fails.
    ExpectedCounterexample,
}

/// One entry of the catalog.
pub struct LawEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub instance_shape: &'static str,
    pub kind: LawKind,
    pub generate: fn(&mut ChaCha8Rng, &SizeBudget, usize) -> Value,
    pub check: fn(&Workspace) -> Result<Checks>,
}

/// The first failing comparison of a case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub lhs: Value,
    pub rhs: Value,
}

/// Accumulates the comparisons made while checking one instance and keeps
/// the first one that fails.
#[derive(Clone, Debug, Default)]
pub struct Checks {
    count: usize,
    failure: Option<Failure>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failure(&self) -> Option<&Failure> {
        self.failure.as_ref()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    fn record(&mut self, ok: bool, what: &str, lhs: impl FnOnce() -> Value, rhs: impl FnOnce() -> Value) {
        self.count += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Failure {
                check: what.to_string(),
                lhs: lhs(),
                rhs: rhs(),
            });
        }
    }

    pub fn measures(&mut self, what: &str, lhs: &Measure, rhs: &Measure) {
        self.record(lhs == rhs, what, || json::measure_to_json(lhs), || json::measure_to_json(rhs));
    }

    pub fn rationals(&mut self, what: &str, lhs: &Rational, rhs: &Rational) {
        self.record(lhs == rhs, what, || json::rational_to_json(lhs), || json::rational_to_json(rhs));
    }

    /// `lhs <= rhs`.
    pub fn at_most(&mut self, what: &str, lhs: &Rational, rhs: &Rational) {
        self.record(lhs <= rhs, what, || json::rational_to_json(lhs), || json::rational_to_json(rhs));
    }

    pub fn truth(&mut self, what: &str, value: bool) {
        self.record(value, what, || Value::Bool(value), || Value::Bool(true));
    }
}

/// A failing or counterexample case, with the instance needed to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: usize,
    pub instance: Value,
    pub check: Option<String>,
    pub lhs: Value,
    pub rhs: Value,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawResult {
    pub id: String,
    pub statement: String,
    pub instance_shape: String,
    pub kind: LawKind,
    pub cases_run: usize,
    /// Cases where an asserted law failed or the checker errored. For an
    /// expected counterexample, 1 if none was found.
    pub failures: usize,
    /// Cases where an expected counterexample law did not hold.
    pub counterexamples_found: usize,
    pub status: String,
    pub first_counterexample: Option<Counterexample>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub schema_version: u32,
    pub seed: u64,
    pub cases: usize,
    pub budget: SizeBudget,
    pub all_passed: bool,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn law(&self, id: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.id == id)
    }
}

/// Outcome of replaying one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub holds: bool,
    pub checks: usize,
    pub failure: Option<Failure>,
}

/// FNV-1a over the seed, the law id and the case index.
pub fn case_seed(seed: u64, id: &str, case: usize) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    seed.to_le_bytes()
        .iter()
        .chain(id.as_bytes())
        .chain(&(case as u64).to_le_bytes())
        .fold(OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}

pub fn find(id: &str) -> Result<&'static LawEntry> {
    catalog()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "checker panicked".into())
}

fn evaluate(entry: &LawEntry, instance: &Value) -> Result<Checks> {
    let ws = Workspace::from_value(instance.clone())?;
    catch_unwind(AssertUnwindSafe(|| (entry.check)(&ws)))
        .unwrap_or_else(|p| Err(Error::Certificate(panic_message(p))))
}

/// Replays one serialized instance of law `id`.
pub fn check_law(id: &str, instance: Value) -> Result<Verdict> {
    let entry = find(id)?;
    let ws = Workspace::from_value(instance)?;
    let checks = (entry.check)(&ws)?;
    Ok(Verdict {
        id: id.to_string(),
        holds: checks.holds(),
        checks: checks.count(),
        failure: checks.failure,
    })
}

/// Generates the instance of `case` for law `id`.
pub fn instance(id: &str, seed: u64, case: usize, budget: &SizeBudget) -> Result<Value> {
    let entry = find(id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(seed, id, case));
    Ok((entry.generate)(&mut rng, budget, case))
}

fn run_entry(entry: &LawEntry, seed: u64, cases: usize, budget: &SizeBudget) -> LawResult {
    let outcomes: Vec<(Value, Result<Checks>)> = (0..cases)
        .into_par_iter()
        .map(|case| {
            let mut rng = ChaCha8Rng::seed_from_u64(case_seed(seed, entry.id, case));
            let instance = catch_unwind(AssertUnwindSafe(|| (entry.generate)(&mut rng, budget, case)));
            match instance {
                Ok(instance) => {
                    let checks = evaluate(entry, &instance);
                    (instance, checks)
                }
                Err(p) => (Value::Null, Err(Error::Certificate(format!("generator: {}", panic_message(p))))),
            }
        })
        .collect();

    let mut errors = 0;
    let mut violations = 0;
    let mut first: Option<Counterexample> = None;
    for (case, (instance, outcome)) in outcomes.into_iter().enumerate() {
        let example = match outcome {
            Err(e) => {
                errors += 1;
                Counterexample {
                    case,
                    instance,
                    check: None,
                    lhs: Value::Null,
                    rhs: Value::Null,
                    error: Some(e.to_string()),
                }
            }
            Ok(checks) => match checks.failure {
                None => continue,
                Some(f) => {
                    violations += 1;
                    Counterexample {
                        case,
                        instance,
                        check: Some(f.check),
                        lhs: f.lhs,
                        rhs: f.rhs,
                        error: None,
                    }
                }
            },
        };
        let replace = match (&first, &example.error) {
            (None, _) => true,
            // For an expected counterexample, prefer a genuine violation
            // over an earlier checker error.
            (Some(prev), None) => entry.kind == LawKind::ExpectedCounterexample && prev.error.is_some(),
            _ => false,
        };
        if replace {
            first = Some(example);
        }
    }

    let (failures, found, status) = match entry.kind {
        LawKind::Asserted => {
            let failures = errors + violations;
            (failures, 0, if failures == 0 { "pass" } else { "fail" })
        }
        LawKind::ExpectedCounterexample => {
            let missing = usize::from(violations == 0);
            let status = if missing == 1 {
                "expected-counterexample missing"
            } else if errors > 0 {
                "fail"
            } else {
                "expected-counterexample found"
            };
            (errors + missing, violations, status)
        }
    };
    LawResult {
        id: entry.id.to_string(),
        statement: entry.statement.to_string(),
        instance_shape: entry.instance_shape.to_string(),
        kind: entry.kind,
        cases_run: cases,
        failures,
        counterexamples_found: found,
        status: status.to_string(),
        first_counterexample: first,
    }
}

/// Runs the listed laws (all of them when `ids` is empty), ordered by id.
pub fn run_laws(seed: u64, cases: usize, budget: &SizeBudget, ids: &[&str]) -> Result<LawReport> {
    let mut entries: Vec<&LawEntry> = if ids.is_empty() {
        catalog().iter().collect()
    } else {
        ids.iter().map(|id| find(id)).collect::<Result<_>>()?
    };
    entries.sort_by_key(|e| e.id);
    entries.dedup_by_key(|e| e.id);
    let laws: Vec<LawResult> = entries
        .par_iter()
        .map(|e| run_entry(e, seed, cases, budget))
        .collect();
    Ok(LawReport {
        schema_version: SCHEMA_VERSION,
        seed,
        cases,
        budget: *budget,
        all_passed: laws.iter().all(LawResult::passed),
        laws,
    })
}

/// Every catalog law on `cases` fresh instances.
pub fn run_suite(seed: u64, cases: usize, budget: &SizeBudget) -> LawReport {
    run_laws(seed, cases, budget, &[]).expect("catalog ids are known")
}

/// Human-readable one-line-per-law summary.
pub fn summary(report: &LawReport) -> String {
    let mut out = format!("seed {} cases {}\n", report.seed, report.cases);
    for law in &report.laws {
        out.push_str(&format!("{:<32} {:<30} failures {}\n", law.id, law.status, law.failures));
        if let Some(c) = &law.first_counterexample {
            if !law.passed() || law.kind == LawKind::ExpectedCounterexample {
                match (&c.error, &c.check) {
                    (Some(e), _) => out.push_str(&format!("    case {}: error: {e}\n", c.case)),
                    (None, Some(check)) => out.push_str(&format!(
                        "    case {}: {check}\n      lhs = {}\n      rhs = {}\n",
                        c.case, c.lhs, c.rhs
                    )),
                    _ => {}
                }
            }
        }
    }
    let failed = report.laws.iter().filter(|l| !l.passed()).count();
    out.push_str(&format!("{} laws, {} failed\n", report.laws.len(), failed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted_in_reports() {
        let mut ids: Vec<&str> = catalog().iter().map(|e| e.id).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
        let report = run_laws(1, 1, &SizeBudget::default(), &["nabla_unital", "delta_nabla_id"]).unwrap();
        assert_eq!(report.laws[0].id, "delta_nabla_id");
        assert!(report.all_passed);
    }

    #[test]
    fn case_seeds_differ_by_law_and_case() {
        assert_ne!(case_seed(0, "a", 0), case_seed(0, "b", 0));
        assert_ne!(case_seed(0, "a", 0), case_seed(0, "a", 1));
        assert_ne!(case_seed(0, "a", 0), case_seed(1, "a", 0));
    }

    #[test]
    fn unknown_law() {
        assert_eq!(check_law("nope", Value::Null).unwrap_err(), Error::UnknownLaw("nope".into()));
    }
}
