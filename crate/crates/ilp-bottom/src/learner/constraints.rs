use std::fmt;

use crate::eval::TestOutcome;
use crate::logic::{Clause, LanguageBias};
use crate::subsume::{clause_generalizes_bottom, VariantIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    /// No generalization of the hypothesis is consistent.
    Generalization,
    /// No specialization of the hypothesis is complete.
    Specialization,
    /// No non-recursive hypothesis containing it is optimal.
    Elimination,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintKind::Generalization => "generalization",
            ConstraintKind::Specialization => "specialization",
            ConstraintKind::Elimination => "elimination",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnedConstraint {
    pub kind: ConstraintKind,
    /// Canonical clauses of the failed hypothesis.
    pub hypothesis: Vec<Clause>,
}

impl LearnedConstraint {
    pub fn recursive(&self) -> bool {
        self.hypothesis.iter().any(Clause::is_recursive)
    }
}

/// Constraints from bottom preprocessing, fixed once installed, followed by
/// those learned from tested hypotheses.
#[derive(Default)]
pub struct ConstraintStore {
    pub bottom_neg: Vec<VariantIndex>,
    pub bottom_pos: Vec<VariantIndex>,
    pub learned: Vec<LearnedConstraint>,
    /// Every positive example has an installed bottom clause, so a clause
    /// that generalizes none of them covers no positive.
    pub positives_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BottomViolation {
    /// Clause `clause` generalizes the negative bottom clause `example`.
    Negative { clause: usize, example: usize },
    /// No clause generalizes the positive bottom clause `example`.
    Positive { example: usize },
}

impl ConstraintStore {
    pub fn is_empty(&self) -> bool {
        self.bottom_neg.is_empty() && self.bottom_pos.is_empty() && self.learned.is_empty()
    }

    pub fn variants(&self) -> usize {
        self.bottom_neg.iter().chain(self.bottom_pos.iter()).map(VariantIndex::len).sum()
    }

    pub fn clause_hits_negative(&self, c: &Clause, bias: &LanguageBias) -> Option<usize> {
        self.bottom_neg.iter().position(|vi| clause_generalizes_bottom(c, vi, bias.recursion, bias))
    }

    /// Bit `i` set when `c` generalizes positive bottom clause `i`.
    pub fn positive_bits(&self, c: &Clause, bias: &LanguageBias) -> Vec<bool> {
        self.bottom_pos.iter().map(|vi| clause_generalizes_bottom(c, vi, bias.recursion, bias)).collect()
    }

    /// The first bottom-preprocessing constraint that `h` breaks.
    pub fn bottom_violation(&self, h: &[Clause], bias: &LanguageBias) -> Option<BottomViolation> {
        for (ci, c) in h.iter().enumerate() {
            if let Some(e) = self.clause_hits_negative(c, bias) {
                return Some(BottomViolation::Negative { clause: ci, example: e });
            }
        }
        for (e, vi) in self.bottom_pos.iter().enumerate() {
            if !h.iter().any(|c| clause_generalizes_bottom(c, vi, bias.recursion, bias)) {
                return Some(BottomViolation::Positive { example: e });
            }
        }
        None
    }
}

/// Constraints implied by a failed test of `h`.
pub fn lff_constraints_from_failure(h: &[Clause], outcome: &TestOutcome) -> Vec<LearnedConstraint> {
    let mut out = Vec::new();
    let mk = |kind| LearnedConstraint { kind, hypothesis: h.to_vec() };
    if !outcome.covered_neg.is_empty() {
        out.push(mk(ConstraintKind::Generalization));
    }
    if !outcome.uncovered_pos.is_empty() {
        out.push(mk(ConstraintKind::Specialization));
    }
    // a timed-out example might be a positive that is in fact covered
    if outcome.covered_pos.is_empty() && !outcome.uncovered_pos.is_empty() && outcome.timed_out.is_empty() {
        out.push(mk(ConstraintKind::Elimination));
    }
    out
}
