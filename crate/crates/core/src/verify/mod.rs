//! Enumeration-driven property suites. Every suite returns a
//! [`SuiteReport`]; each failure carries a reproducer string that
//! [`replay`] turns back into the failing check.

mod diagrams;
mod enumerate;
mod instance_suites;
mod oracle;
mod random;
mod replay;
mod suites;

pub use diagrams::*;
pub use enumerate::{
    brute_force_exprs, enumerate_exprs, enumerate_monomials, enumerate_normal_forms, for_each_expr,
    normal_forms_in, ExprTable,
};
pub use instance_suites::{
    diagram_transport_suite, instance_axiom_suite, instance_axiom_suite_with, span_world,
    InstanceKind, SpanWorld,
};
pub use oracle::oracle_normal_form;
pub use random::{random_expr, random_expr_in, sample_rng};
pub use replay::{parse_normal_form, replay, Mutation};
pub use suites::{
    left_distributivity_suite, oracle_suite, pc_axiom_suite, pc_axiom_suite_with,
    random_oracle_suite, round_trip_suite, strict_law_suite, strictification_suite, witness_suite,
};

use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub reproducer: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Combines several reports under one name, keeping failure order.
    pub fn merge(suite: &str, parts: Vec<SuiteReport>) -> SuiteReport {
        let mut out = SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            failures: Vec::new(),
            seed: parts.iter().find_map(|p| p.seed),
            elapsed_ms: 0,
        };
        for p in parts {
            out.cases += p.cases;
            out.elapsed_ms += p.elapsed_ms;
            for f in p.failures {
                if out.failures.len() < MAX_FAILURES {
                    out.failures.push(f);
                }
            }
        }
        out
    }
}

/// Reports keep at most this many failures; the count of cases is exact.
pub const MAX_FAILURES: usize = 100;

pub(crate) struct Recorder {
    suite: String,
    cases: u64,
    failures: Vec<Failure>,
    seed: Option<u64>,
    start: Instant,
}

impl Recorder {
    pub(crate) fn new(suite: &str, seed: Option<u64>) -> Self {
        Recorder {
            suite: suite.to_string(),
            cases: 0,
            failures: Vec::new(),
            seed,
            start: Instant::now(),
        }
    }

    pub(crate) fn record(
        &mut self,
        ok: bool,
        case: impl FnOnce() -> String,
        reproducer: impl FnOnce() -> String,
    ) {
        self.cases += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(Failure {
                case: case(),
                reproducer: reproducer(),
            });
        }
    }

    pub(crate) fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            cases: self.cases,
            failures: self.failures,
            seed: self.seed,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}
