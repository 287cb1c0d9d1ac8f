//! The acceptance suite: each criterion replays a computation against an
//! independent oracle and reports a single pass/fail line.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

mod bethe_checks;
mod combinat_checks;
pub mod latex;
pub mod oracles;
mod symbolic_checks;
pub mod transcription;
mod vertex_checks;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub title: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0 && self.elapsed_ms <= self.budget_ms
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] C{} {}: {} cases, {} failures, {:.2} s (budget {} s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.cases,
            self.failures.len(),
            self.elapsed_ms as f64 / 1000.0,
            self.budget_ms / 1000
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

/// Counts cases and keeps failure messages.
#[derive(Default)]
pub(crate) struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    /// One case per entry; `Some` carries a failure message.
    pub(crate) fn record(&mut self, outcomes: Vec<Option<String>>) {
        for o in outcomes {
            self.cases += 1;
            self.failures.extend(o);
        }
    }

    pub(crate) fn fail(&mut self, msg: String) {
        self.cases += 1;
        self.failures.push(msg);
    }
}

fn timed(id: u8, title: &'static str, budget: Duration, body: impl FnOnce(&mut Tally)) -> CheckReport {
    let start = Instant::now();
    let mut t = Tally::default();
    body(&mut t);
    CheckReport {
        id,
        title,
        cases: t.cases,
        failures: t.failures,
        elapsed_ms: start.elapsed().as_millis(),
        budget_ms: budget.as_millis(),
    }
}

/// Groups of criteria runnable together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Gamma,
    Combinat,
    Vertex,
    Bethe,
    All,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Gamma => &[1, 2],
            Suite::Combinat => &[8],
            Suite::Vertex => &[3, 4, 9],
            Suite::Bethe => &[5, 6, 7],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gamma" => Ok(Suite::Gamma),
            "combinat" => Ok(Suite::Combinat),
            "vertex" => Ok(Suite::Vertex),
            "bethe" => Ok(Suite::Bethe),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}` (expected gamma, combinat, vertex, bethe or all)")),
        }
    }
}

const SECOND: Duration = Duration::from_secs(1);

/// Run one criterion by number.
pub fn run_criterion(id: u8) -> Option<CheckReport> {
    Some(match id {
        1 => timed(1, "gamma calculus", SECOND, symbolic_checks::gamma_calculus),
        2 => timed(2, "chi on P1 table", SECOND, symbolic_checks::chi_table),
        3 => timed(3, "Hilb vertex Euler form vs Gamma form", 300 * SECOND, vertex_checks::gamma_form),
        4 => timed(4, "Mellin-Barnes residues vs series", 120 * SECOND, vertex_checks::mellin_barnes),
        5 => timed(5, "saddle derivation vs closed form", 60 * SECOND, bethe_checks::derivation),
        6 => timed(6, "saddle displays", SECOND, bethe_checks::transcriptions),
        7 => timed(7, "numeric solver", 30 * SECOND, bethe_checks::numeric),
        8 => timed(8, "combinatorial oracles", 60 * SECOND, combinat_checks::counts),
        9 => timed(9, "structural invariants", 300 * SECOND, vertex_checks::invariants),
        _ => return None,
    })
}

pub fn run_suite(suite: Suite) -> Vec<CheckReport> {
    suite.criteria().iter().filter_map(|&id| run_criterion(id)).collect()
}
