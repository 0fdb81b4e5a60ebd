//! Generate, test, constrain: hypotheses are enumerated by size, tested
//! against the examples, and failures become constraints that prune the
//! rest of the space. Bottom clause constraints are installed up front.

mod constraints;
mod enumerate;
mod pool;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::bottom::{build_bottom_clause_ie, BottomConfig, BottomError, Polarity};
use crate::eval::{EvalLimits, Evaluator, TestOutcome};
use crate::io::ProblemInput;
use crate::logic::{Atom, Clause, LanguageBias, PredKey};
use crate::subsume::VariantIndex;
use crate::variants::{generate_variants, VariantConfig, VariantError};

pub use constraints::{lff_constraints_from_failure, BottomViolation, ConstraintKind, ConstraintStore, LearnedConstraint};
pub use enumerate::Enumerator;
pub use pool::{ClausePool, PoolClause};

/// Clauses in canonical form, in enumeration order.
pub type Hypothesis = Vec<Clause>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SearchMode {
    Baseline,
    NegOnly,
    PosOnly,
    Both,
    BothVs,
}

impl SearchMode {
    pub const ALL: [SearchMode; 5] =
        [SearchMode::Baseline, SearchMode::NegOnly, SearchMode::PosOnly, SearchMode::Both, SearchMode::BothVs];

    pub fn uses_negatives(self) -> bool {
        matches!(self, SearchMode::NegOnly | SearchMode::Both | SearchMode::BothVs)
    }

    pub fn uses_positives(self) -> bool {
        matches!(self, SearchMode::PosOnly | SearchMode::Both | SearchMode::BothVs)
    }

    pub fn splitting(self) -> bool {
        self == SearchMode::BothVs
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SearchMode::Baseline => "baseline",
            SearchMode::NegOnly => "neg-only",
            SearchMode::PosOnly => "pos-only",
            SearchMode::Both => "both",
            SearchMode::BothVs => "both-vs",
        })
    }
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SearchMode::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| format!("unknown mode '{}' (expected baseline, neg-only, pos-only, both or both-vs)", s))
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub limits: EvalLimits,
    pub overall_timeout: Duration,
    /// Recorded with the run; the search itself draws no random numbers.
    pub seed: u64,
    pub variant_cap: usize,
    /// Overrides the mode's variable splitting.
    pub split: Option<bool>,
}

impl SearchConfig {
    pub fn new(mode: SearchMode) -> SearchConfig {
        SearchConfig {
            mode,
            limits: EvalLimits::default(),
            overall_timeout: Duration::from_secs(300),
            seed: 0,
            variant_cap: 100_000,
            split: None,
        }
    }

    pub fn splitting(&self) -> bool {
        self.split.unwrap_or(self.mode.splitting())
    }

    pub fn with_timeout(mut self, t: Duration) -> SearchConfig {
        self.overall_timeout = t;
        self
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::new(SearchMode::Both)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchStats {
    pub solved: bool,
    pub programs_generated: u64,
    pub solution_literals: usize,
    pub variants_generated: usize,
    pub bottom_clauses: usize,
    pub time_total: Duration,
    pub time_preprocess: Duration,
    pub time_variantgen: Duration,
    pub time_generate: Duration,
    pub time_test: Duration,
    pub time_constrain: Duration,
    pub timeouts_during_test: u64,
    pub constraints_learned: usize,
    pub timed_out: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum LearnError {
    #[error(transparent)]
    Variants(#[from] VariantError),
    #[error(transparent)]
    Bottom(#[from] BottomError),
}

pub struct SolveResult {
    pub solution: Option<Hypothesis>,
    pub stats: SearchStats,
}

/// Builds bottom clauses for the examples the mode asks for and installs
/// their variant sets. Truncated bottom clauses are not used: pruning from
/// a partial negative bottom clause would be unsound, and a partial
/// positive one is merely uninformative.
pub fn apply_bottom_preprocessing(
    p: &ProblemInput,
    cfg: &SearchConfig,
    ev: &Evaluator,
) -> Result<(ConstraintStore, SearchStats), LearnError> {
    let mut store = ConstraintStore { positives_complete: cfg.mode.uses_positives(), ..ConstraintStore::default() };
    let mut stats = SearchStats::default();
    let bc = BottomConfig::for_bias(&p.bias);
    let vc = VariantConfig { max_vars: p.bias.limits.max_vars, splitting: cfg.splitting(), cap: cfg.variant_cap };
    let mut jobs: Vec<(&Atom, Polarity)> = Vec::new();
    if cfg.mode.uses_negatives() {
        jobs.extend(p.neg.iter().map(|e| (e, Polarity::Negative)));
    }
    if cfg.mode.uses_positives() {
        jobs.extend(p.pos.iter().map(|e| (e, Polarity::Positive)));
    }
    let deadline = Instant::now() + cfg.overall_timeout;
    for (e, pol) in jobs {
        if Instant::now() >= deadline {
            log::warn!("preprocessing stopped at the overall timeout");
            store.positives_complete = false;
            break;
        }
        let t = Instant::now();
        let b = build_bottom_clause_ie(ev, &p.bias, e, pol, &bc)?;
        stats.time_preprocess += t.elapsed();
        stats.bottom_clauses += 1;
        if b.truncated {
            store.positives_complete &= pol == Polarity::Negative;
            log::warn!("bottom clause of {} ({}) is truncated; not used for pruning", e, pol);
            continue;
        }
        let t = Instant::now();
        let vs = generate_variants(&b, &p.bias, &vc)?;
        stats.time_variantgen += t.elapsed();
        stats.variants_generated += vs.variants.len();
        let vi = VariantIndex::new(vs);
        match pol {
            Polarity::Negative => store.bottom_neg.push(vi),
            Polarity::Positive => store.bottom_pos.push(vi),
        }
    }
    Ok((store, stats))
}

fn merge_outcomes(parts: &[&TestOutcome], pos: &BTreeSet<Atom>, neg: &BTreeSet<Atom>) -> TestOutcome {
    let mut out = TestOutcome::default();
    for e in pos {
        if parts.iter().any(|o| o.covered_pos.contains(e)) {
            out.covered_pos.insert(e.clone());
        } else if parts.iter().any(|o| o.timed_out.contains(e)) {
            out.timed_out.insert(e.clone());
        } else {
            out.uncovered_pos.insert(e.clone());
        }
    }
    for e in neg {
        if parts.iter().any(|o| o.covered_neg.contains(e)) {
            out.covered_neg.insert(e.clone());
        } else if parts.iter().any(|o| o.timed_out.contains(e)) {
            out.timed_out.insert(e.clone());
        }
    }
    out
}

/// Search state shared by `solve` and the exhaustive helpers.
struct Tester<'a> {
    ev: &'a Evaluator,
    pos: &'a BTreeSet<Atom>,
    neg: &'a BTreeSet<Atom>,
    clause_outcomes: HashMap<usize, TestOutcome>,
}

impl Tester<'_> {
    /// Tests a hypothesis. Non-recursive hypotheses are tested clause by
    /// clause, since their coverage is the union of their clauses'; the
    /// second value lists clauses tested here for the first time.
    fn test(&mut self, en: &Enumerator, ids: &[usize]) -> (TestOutcome, Vec<usize>) {
        if en.is_recursive(ids) {
            let prog = en.runnable(ids);
            return (self.ev.test_hypothesis(&prog, self.pos, self.neg), Vec::new());
        }
        let mut fresh = Vec::new();
        for &i in ids {
            if !self.clause_outcomes.contains_key(&i) {
                let prog = en.runnable(&[i]);
                let o = self.ev.test_hypothesis(&prog, self.pos, self.neg);
                self.clause_outcomes.insert(i, o);
                fresh.push(i);
            }
        }
        let parts: Vec<&TestOutcome> = ids.iter().map(|i| &self.clause_outcomes[i]).collect();
        (merge_outcomes(&parts, self.pos, self.neg), fresh)
    }
}

/// The generate-test-constrain loop. Returns the first hypothesis that
/// covers every positive and no negative.
pub fn solve(p: &ProblemInput, cfg: &SearchConfig) -> Result<SolveResult, LearnError> {
    let start = Instant::now();
    let deadline = start + cfg.overall_timeout;
    let ev = Evaluator::new(&p.bk, cfg.limits);
    let (mut store, mut stats) = apply_bottom_preprocessing(p, cfg, &ev)?;
    let mut en = Enumerator::new(&search_bias(&p.bias, &store)).with_deadline(Some(deadline));
    let mut tester = Tester { ev: &ev, pos: &p.pos, neg: &p.neg, clause_outcomes: HashMap::new() };
    let mut solution = None;
    loop {
        let t = Instant::now();
        let next = en.next_ids(&store);
        stats.time_generate += t.elapsed();
        let Some(ids) = next else { break };
        stats.programs_generated += 1;
        let t = Instant::now();
        let (outcome, fresh) = tester.test(&en, &ids);
        stats.time_test += t.elapsed();
        if !outcome.timed_out.is_empty() {
            stats.timeouts_during_test += 1;
        }
        if outcome.is_solution() {
            let h = en.clauses(&ids);
            stats.solution_literals = h.iter().map(Clause::len).sum();
            solution = Some(h);
            break;
        }
        let t = Instant::now();
        let learned = constraints_for(&en, &ids, &outcome, &fresh, &tester.clause_outcomes);
        stats.constraints_learned += learned.len();
        store.learned.extend(learned);
        stats.time_constrain += t.elapsed();
        if Instant::now() >= deadline {
            break;
        }
    }
    stats.timed_out = solution.is_none() && (en.timed_out() || Instant::now() >= deadline);
    stats.solved = solution.is_some();
    stats.time_total = start.elapsed();
    Ok(SolveResult { solution, stats })
}

/// Without recursion every useful clause generalizes some positive bottom
/// clause, so a body predicate that occurs in none of them can never appear
/// in a surviving clause and is dropped before clauses are built. A
/// recursive base case may only cover examples reached by recursion, so
/// there the filter does not apply.
fn search_bias(bias: &LanguageBias, store: &ConstraintStore) -> LanguageBias {
    if !store.positives_complete || bias.recursion {
        return bias.clone();
    }
    let seen: HashSet<PredKey> = store
        .bottom_pos
        .iter()
        .flat_map(|vi| vi.set.variants.iter())
        .flat_map(|c| c.body.iter().map(Atom::key))
        .collect();
    let mut b = bias.clone();
    b.body_decls.retain(|k| seen.contains(k) || b.head_decls.contains(k));
    b
}

fn constraints_for(
    en: &Enumerator,
    ids: &[usize],
    outcome: &TestOutcome,
    fresh: &[usize],
    clause_outcomes: &HashMap<usize, TestOutcome>,
) -> Vec<LearnedConstraint> {
    if en.is_recursive(ids) {
        return lff_constraints_from_failure(&en.clauses(ids), outcome);
    }
    let mut out = Vec::new();
    for &i in fresh {
        out.extend(lff_constraints_from_failure(&en.clauses(&[i]), &clause_outcomes[&i]));
    }
    if ids.len() > 1 && !outcome.uncovered_pos.is_empty() {
        out.push(LearnedConstraint { kind: ConstraintKind::Specialization, hypothesis: en.clauses(ids) });
    }
    out
}

/// Every hypothesis in the space, tested, with no pruning beyond the
/// structural rule that a recursive hypothesis needs a base clause.
/// Returns the solutions in enumeration order.
pub fn brute_force_solutions(p: &ProblemInput, limits: EvalLimits, max_hypotheses: usize) -> Vec<Hypothesis> {
    let ev = Evaluator::new(&p.bk, limits);
    let store = ConstraintStore::default();
    let mut en = Enumerator::new(&p.bias);
    let mut tester = Tester { ev: &ev, pos: &p.pos, neg: &p.neg, clause_outcomes: HashMap::new() };
    let mut out = Vec::new();
    let mut seen = 0;
    while let Some(ids) = en.next_ids(&store) {
        seen += 1;
        if seen > max_hypotheses {
            break;
        }
        if tester.test(&en, &ids).0.is_solution() {
            out.push(en.clauses(&ids));
        }
    }
    out
}

/// Whether `h` covers every positive and no negative of `p`.
pub fn is_solution(p: &ProblemInput, h: &[Clause], limits: EvalLimits) -> bool {
    let ev = Evaluator::new(&p.bk, limits);
    let prog: Vec<Clause> = h.iter().map(|c| p.bias.evaluation_order(c)).collect();
    ev.test_hypothesis(&prog, &p.pos, &p.neg).is_solution()
}

/// Size of a hypothesis in literals, heads included.
pub fn literal_count(h: &[Clause]) -> usize {
    h.iter().map(Clause::len).sum()
}
