//! Test budgets and the report types every checker emits.
//!
//! Reports are plain data: a failed law is a counterexample in a report, not
//! an error. Serialization is canonical — struct fields keep declaration
//! order, maps are sorted, rationals print as `p/q` — so identical inputs
//! and seeds always produce byte-identical JSON.

use std::collections::BTreeMap;

use serde::Serialize;

/// How hard the checkers work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Seed for the deterministic samplers.
    pub seed: u64,
    /// Enumeration order for infinite carriers (Farey order / smooth bound).
    pub order: u32,
    /// Tuples per law on the sampled path.
    pub samples: usize,
    /// Carriers up to this size are checked exhaustively.
    pub exhaustive_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            seed: 0,
            order: 4,
            samples: 1000,
            exhaustive_limit: 200,
        }
    }
}

impl Budget {
    pub fn with_seed(self, seed: u64) -> Self {
        Budget { seed, ..self }
    }

    pub fn with_order(self, order: u32) -> Self {
        Budget { order, ..self }
    }
}

/// Aggregate outcome of a law suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Variable assignment refuting one law.
pub type Counterexample = BTreeMap<String, String>;

/// Outcome of one law on one carrier.
#[derive(Debug, Clone, Serialize)]
pub struct LawResult {
    pub law: String,
    pub cases: u64,
    pub exhaustive: bool,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

impl LawResult {
    pub fn passing(law: &str, cases: u64, exhaustive: bool) -> Self {
        LawResult {
            law: law.to_string(),
            cases,
            exhaustive,
            pass: true,
            counterexample: None,
        }
    }
}

/// Per-law results for one carrier instance.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub instance: String,
    pub seed: u64,
    pub order: u32,
    pub laws: Vec<LawResult>,
    pub verdict: Verdict,
}

impl LawReport {
    pub fn new(instance: String, budget: &Budget, laws: Vec<LawResult>) -> Self {
        let verdict = if laws.iter().all(|l| l.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        LawReport {
            instance,
            seed: budget.seed,
            order: budget.order,
            laws,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }
}

/// Epistemic status of a quasi-identity verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    /// Backed by a structural argument in addition to the enumerated cases.
    Certified,
    /// Backed by the enumerated cases only.
    Tested,
}

/// Verdict on a quasi-identity (`x.y = 0 => ...` and friends).
#[derive(Debug, Clone, Serialize)]
pub struct DomainReport {
    pub instance: String,
    pub property: String,
    pub seed: u64,
    pub cases: u64,
    pub exhaustive: bool,
    pub status: CheckStatus,
    pub certificate: Option<String>,
    pub hypothesis_met: Option<bool>,
    pub witness: Option<Counterexample>,
    pub verdict: bool,
}

impl DomainReport {
    pub fn holds(&self) -> bool {
        self.verdict
    }
}
