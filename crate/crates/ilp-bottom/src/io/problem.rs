use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use crate::eval::{Evaluator, Verdict};
use crate::logic::{Atom, Clause, LanguageBias};

use super::{parse_bias, parse_bk, parse_examples, render_bias, render_bk, render_examples, IoError};

/// A learning task: background knowledge, language bias and examples.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInput {
    pub bk: Vec<Clause>,
    pub bias: LanguageBias,
    pub pos: BTreeSet<Atom>,
    pub neg: BTreeSet<Atom>,
}

pub const BIAS_FILE: &str = "bias.pl";
pub const BK_FILE: &str = "bk.pl";
pub const EXAMPLES_FILE: &str = "exs.pl";

fn read(dir: &Path, name: &str) -> Result<String, IoError> {
    let p = dir.join(name);
    std::fs::read_to_string(&p).map_err(|source| IoError::File { path: p.display().to_string(), source })
}

impl ProblemInput {
    pub fn from_texts(bias: &str, bk: &str, examples: &str) -> Result<ProblemInput, IoError> {
        let (pos, neg) = parse_examples(examples)?;
        Ok(ProblemInput { bk: parse_bk(bk)?, bias: parse_bias(bias)?, pos, neg })
    }

    /// Reads `bias.pl`, `bk.pl` and `exs.pl` from a directory.
    pub fn load(dir: impl AsRef<Path>) -> Result<ProblemInput, IoError> {
        let dir = dir.as_ref();
        ProblemInput::from_texts(&read(dir, BIAS_FILE)?, &read(dir, BK_FILE)?, &read(dir, EXAMPLES_FILE)?)
    }

    pub fn save(&self, dir: impl AsRef<Path>) -> Result<(), IoError> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(BIAS_FILE), render_bias(&self.bias))?;
        std::fs::write(dir.join(BK_FILE), render_bk(&self.bk))?;
        std::fs::write(dir.join(EXAMPLES_FILE), render_examples(&self.pos, &self.neg))?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemViolation {
    BkEntailsPositive(Atom),
    BkEntailsNegative(Atom),
    Unverifiable(Atom),
    HeadPredicateInBk(Clause),
    ExampleNotHeadPredicate(Atom),
    ExampleBothSigns(Atom),
}

impl fmt::Display for ProblemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemViolation::BkEntailsPositive(a) => write!(f, "B entails positive example {}", a),
            ProblemViolation::BkEntailsNegative(a) => write!(f, "B entails negative example {}", a),
            ProblemViolation::Unverifiable(a) => write!(f, "unverifiable: evaluation of {} ran out of resources", a),
            ProblemViolation::HeadPredicateInBk(c) => write!(f, "head predicate in BK body: {}", c),
            ProblemViolation::ExampleNotHeadPredicate(a) => write!(f, "example {} is not over a head predicate", a),
            ProblemViolation::ExampleBothSigns(a) => write!(f, "example {} is both positive and negative", a),
        }
    }
}

/// Every violation of the well-formedness restrictions on a problem.
pub fn validate_problem(p: &ProblemInput, ev: &Evaluator) -> Vec<ProblemViolation> {
    let mut out = Vec::new();
    for c in &p.bk {
        if c.body.iter().any(|b| p.bias.is_head(&b.key())) {
            out.push(ProblemViolation::HeadPredicateInBk(c.clone()));
        }
    }
    for e in p.pos.iter().chain(&p.neg) {
        if !p.bias.is_head(&e.key()) {
            out.push(ProblemViolation::ExampleNotHeadPredicate(e.clone()));
        }
    }
    for e in p.pos.intersection(&p.neg) {
        out.push(ProblemViolation::ExampleBothSigns(e.clone()));
    }
    for (set, positive) in [(&p.pos, true), (&p.neg, false)] {
        for e in set {
            match ev.query(None, e) {
                Verdict::Proven if positive => out.push(ProblemViolation::BkEntailsPositive(e.clone())),
                Verdict::Proven => out.push(ProblemViolation::BkEntailsNegative(e.clone())),
                Verdict::Exhausted => out.push(ProblemViolation::Unverifiable(e.clone())),
                Verdict::NotProven => {}
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::EvalLimits;

    const BIAS: &str = "head_pred(f,1). body_pred(q,1). type(f,(t,)). type(q,(t,)). direction(f,(in,)). direction(q,(in,)).";

    fn check(bk: &str, exs: &str) -> Vec<String> {
        let p = ProblemInput::from_texts(BIAS, bk, exs).unwrap();
        let ev = Evaluator::new(&p.bk, EvalLimits::default());
        validate_problem(&p, &ev).iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn ok_problem() {
        assert!(check("q(a).", "pos(f(a)). neg(f(b)).").is_empty());
    }

    #[test]
    fn bk_entails_positive() {
        let v = check("f(t1).", "pos(f(t1)).");
        assert!(v.iter().any(|s| s.starts_with("B entails positive example")), "{:?}", v);
    }

    #[test]
    fn head_in_bk_body() {
        let v = check("q(X) :- f(X).", "pos(f(a)).");
        assert!(v.iter().any(|s| s.starts_with("head predicate in BK body")), "{:?}", v);
    }

    #[test]
    fn unverifiable() {
        let v = check("f(X) :- f(X).", "neg(f(a)).");
        assert!(v.iter().any(|s| s.starts_with("unverifiable")), "{:?}", v);
    }

    #[test]
    fn save_and_load() {
        let p = ProblemInput::from_texts(BIAS, "q(a). q([x|_]).", "pos(f(a)). neg(f([b])).").unwrap();
        let dir = tempfile::tempdir().unwrap();
        p.save(dir.path()).unwrap();
        assert_eq!(ProblemInput::load(dir.path()).unwrap(), p);
    }
}
