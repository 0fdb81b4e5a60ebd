//! Bounded entailment: top-down resolution with depth, inference and time
//! limits, plus a forward-chaining least model for function-free programs.

mod builtins;
mod machine;
mod model;

use std::collections::BTreeSet;
use std::time::Duration;

use crate::logic::{Atom, Clause, PredKey};

pub use builtins::NAMES as BUILTIN_NAMES;
pub use machine::Program;
pub use model::{least_model, ModelError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalLimits {
    pub max_resolution_depth: u32,
    pub per_query_timeout: Duration,
    /// Deterministic cap on resolution steps; reached long before the
    /// wall-clock limit on ordinary hardware, so verdicts do not depend on
    /// machine load.
    pub max_inferences: u64,
    pub max_model_size: usize,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits {
            max_resolution_depth: 40,
            per_query_timeout: Duration::from_millis(1),
            max_inferences: 20_000,
            max_model_size: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    NotProven,
    Exhausted,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TestOutcome {
    pub covered_pos: BTreeSet<Atom>,
    pub uncovered_pos: BTreeSet<Atom>,
    pub covered_neg: BTreeSet<Atom>,
    pub timed_out: BTreeSet<Atom>,
}

impl TestOutcome {
    pub fn is_solution(&self) -> bool {
        self.uncovered_pos.is_empty() && self.covered_neg.is_empty() && self.timed_out.is_empty()
    }
}

/// Background knowledge compiled once and queried with or without a
/// hypothesis on top.
pub struct Evaluator {
    bk: Program,
    pub limits: EvalLimits,
    pub builtins: bool,
}

impl Evaluator {
    pub fn new(bk: &[Clause], limits: EvalLimits) -> Evaluator {
        Evaluator { bk: Program::new(bk), limits, builtins: true }
    }

    /// Whether `k` can be called: defined in the background or built in.
    pub fn knows(&self, k: &PredKey) -> bool {
        self.bk.defines(k) || (self.builtins && builtins::lookup(k).is_some())
    }

    pub fn query(&self, hyp: Option<&Program>, goal: &Atom) -> Verdict {
        machine::Machine::new(&self.bk, hyp, self.builtins, self.limits).prove(goal)
    }

    /// Distinct answer instances of a possibly non-ground goal, at most
    /// `max`. The flag is false if the enumeration may be incomplete.
    pub fn answers(&self, goal: &Atom, max: usize) -> (Vec<Atom>, bool) {
        machine::Machine::new(&self.bk, None, self.builtins, self.limits).answers(goal, max)
    }

    pub fn covers(&self, h: &[Clause], e: &Atom) -> Verdict {
        let p = Program::new(h);
        self.query(Some(&p), e)
    }

    pub fn test_hypothesis<'e>(
        &self,
        h: &[Clause],
        pos: impl IntoIterator<Item = &'e Atom>,
        neg: impl IntoIterator<Item = &'e Atom>,
    ) -> TestOutcome {
        let p = Program::new(h);
        let mut out = TestOutcome::default();
        for e in pos {
            match self.query(Some(&p), e) {
                Verdict::Proven => out.covered_pos.insert(e.clone()),
                Verdict::NotProven => out.uncovered_pos.insert(e.clone()),
                Verdict::Exhausted => out.timed_out.insert(e.clone()),
            };
        }
        for e in neg {
            match self.query(Some(&p), e) {
                Verdict::Proven => out.covered_neg.insert(e.clone()),
                Verdict::NotProven => false,
                Verdict::Exhausted => out.timed_out.insert(e.clone()),
            };
        }
        out
    }
}

/// One-shot query of a whole program.
pub fn query(program: &[Clause], goal: &Atom, lim: EvalLimits) -> Verdict {
    Evaluator::new(program, lim).query(None, goal)
}
