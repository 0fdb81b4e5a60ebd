//! Bundled problems and the benchmark harness.

pub mod lists;
pub mod micro;
pub mod palindrome;
pub mod trains;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bottom::{build_bottom_clause_ie, BottomConfig, Polarity};
use crate::eval::{EvalLimits, Evaluator};
use crate::io::{ProblemInput, StatsRow};
use crate::learner::{literal_count, solve, Hypothesis, SearchConfig, SearchMode, SearchStats};
use crate::logic::{max_depth, LanguageBias};
use crate::subsume::theta_subsumes;
use crate::variants::{generate_variants, VariantConfig};

use lists::ListTask;
use trains::{gen_trains_problem, inject_irrelevant_dyadic, inject_irrelevant_monadic, MonadicPlacement, TrainsSpec};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("only {positives} positive and {negatives} negative trains among {n_trains}; try a larger n_trains")]
    TooFewTrains { positives: usize, negatives: usize, n_trains: usize },
    #[error("{0}")]
    Io(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// `C(n, k)` for a big `n` and small `k`.
fn big_binomial(n: &BigUint, k: usize) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// Upper bound on the number of hypotheses in the bias:
/// `sum_{j=1..n} C(|Lh| v^a * sum_{i=1..m} C(|Lb| v^a, i), j)`.
pub fn hypothesis_space_bound(bias: &LanguageBias) -> BigUint {
    let l = bias.limits;
    let a = bias.max_arity() as u32;
    let va = BigUint::from(l.max_vars).pow(a);
    let body_lits = BigUint::from(bias.body_decls.len()) * &va;
    let bodies: BigUint = (1..=l.max_body).map(|i| big_binomial(&body_lits, i)).sum();
    let clauses = BigUint::from(bias.head_decls.len()) * &va * bodies;
    (1..=l.max_clauses).map(|j| big_binomial(&clauses, j)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrelevantKind {
    Dyadic,
    Monadic(MonadicPlacement),
}

impl fmt::Display for IrrelevantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            IrrelevantKind::Dyadic => "dyadic",
            IrrelevantKind::Monadic(MonadicPlacement::UnusedLoad) => "monadic",
            IrrelevantKind::Monadic(MonadicPlacement::SharedLoads) => "monadic-shared",
        })
    }
}

impl FromStr for IrrelevantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dyadic" => Ok(IrrelevantKind::Dyadic),
            "monadic" => Ok(IrrelevantKind::Monadic(MonadicPlacement::UnusedLoad)),
            "monadic-shared" => Ok(IrrelevantKind::Monadic(MonadicPlacement::SharedLoads)),
            _ => Err(format!("unknown kind '{}' (expected dyadic, monadic or monadic-shared)", s)),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Suite {
    /// `count` trains problems with seeds `seed..seed+count`.
    Trains { count: usize, seed: u64 },
    /// `count` instances of each task.
    Lists { tasks: Vec<ListTask>, count: usize, seed: u64 },
    /// One trains problem with `i` injected predicates for each level.
    Irrelevant { kind: IrrelevantKind, levels: Vec<usize>, seed: u64 },
}

/// One generated problem of a suite.
#[derive(Clone, Debug)]
pub struct BenchProblem {
    pub task: String,
    pub seed: u64,
    pub list_task: Option<ListTask>,
    pub problem: ProblemInput,
}

pub fn suite_problems(suite: &Suite) -> Result<Vec<BenchProblem>, BenchError> {
    let mut out = Vec::new();
    match suite {
        Suite::Trains { count, seed } => {
            for s in *seed..*seed + *count as u64 {
                out.push(BenchProblem {
                    task: "trains".into(),
                    seed: s,
                    list_task: None,
                    problem: gen_trains_problem(&TrainsSpec::new(s))?,
                });
            }
        }
        Suite::Lists { tasks, count, seed } => {
            for &t in tasks {
                for s in *seed..*seed + *count as u64 {
                    out.push(BenchProblem {
                        task: t.name().into(),
                        seed: s,
                        list_task: Some(t),
                        problem: lists::list_problem(t, s, 10, 10)?,
                    });
                }
            }
        }
        Suite::Irrelevant { kind, levels, seed } => {
            let base = gen_trains_problem(&TrainsSpec::new(*seed))?;
            for &i in levels {
                let problem = match kind {
                    IrrelevantKind::Dyadic => inject_irrelevant_dyadic(&base, i),
                    IrrelevantKind::Monadic(pl) => inject_irrelevant_monadic(&base, i, *pl),
                };
                out.push(BenchProblem { task: format!("{}-{}", kind, i), seed: *seed, list_task: None, problem });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub modes: Vec<SearchMode>,
    pub timeout: Duration,
    pub limits: EvalLimits,
    /// Held-out examples of each label for list tasks.
    pub held_out: usize,
    /// Worker threads; `Some(1)` runs sequentially, which keeps timings
    /// comparable.
    pub threads: Option<usize>,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            modes: vec![SearchMode::Baseline, SearchMode::Both],
            timeout: Duration::from_secs(300),
            limits: EvalLimits::default(),
            held_out: 200,
            threads: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchResult {
    pub task: String,
    pub seed: u64,
    pub mode: SearchMode,
    pub stats: SearchStats,
    pub solution: Option<Hypothesis>,
    /// Longer than the baseline's solution; `None` unless both solved.
    pub non_optimal: Option<bool>,
    pub accuracy: Option<f64>,
    pub error: Option<String>,
}

impl BenchResult {
    pub fn row(&self) -> StatsRow {
        let s = &self.stats;
        StatsRow {
            task: self.task.clone(),
            mode: self.mode.to_string(),
            seed: self.seed,
            solved: s.solved,
            time_total: s.time_total.as_secs_f64(),
            time_preprocess: s.time_preprocess.as_secs_f64(),
            time_variantgen: s.time_variantgen.as_secs_f64(),
            time_generate: s.time_generate.as_secs_f64(),
            time_test: s.time_test.as_secs_f64(),
            time_constrain: s.time_constrain.as_secs_f64(),
            programs_generated: s.programs_generated,
            variants_generated: s.variants_generated as u64,
            solution_literals: s.solution_literals as u64,
            non_optimal: self.non_optimal.unwrap_or(false),
            accuracy: self.accuracy,
            timeouts_during_test: s.timeouts_during_test,
        }
    }
}

fn run_one(bp: &BenchProblem, mode: SearchMode, opts: &BenchOptions) -> BenchResult {
    let cfg = SearchConfig { limits: opts.limits, ..SearchConfig::new(mode).with_timeout(opts.timeout) };
    let mut r = BenchResult {
        task: bp.task.clone(),
        seed: bp.seed,
        mode,
        stats: SearchStats::default(),
        solution: None,
        non_optimal: None,
        accuracy: None,
        error: None,
    };
    match solve(&bp.problem, &cfg) {
        Ok(res) => {
            if let (Some(t), Some(h)) = (bp.list_task, &res.solution) {
                r.accuracy = Some(lists::held_out_accuracy(t, &bp.problem, h, bp.seed, opts.held_out, opts.limits));
            }
            r.stats = res.stats;
            r.solution = res.solution;
        }
        Err(e) => r.error = Some(e.to_string()),
    }
    log::info!("{} seed {} {}: solved={} programs={}", r.task, r.seed, mode, r.stats.solved, r.stats.programs_generated);
    r
}

/// Runs every problem of the suite under every mode. Results come back in
/// (problem, mode) order whatever the thread count.
pub fn run_benchmark(suite: &Suite, opts: &BenchOptions) -> Result<Vec<BenchResult>, BenchError> {
    let problems = suite_problems(suite)?;
    let jobs: Vec<(&BenchProblem, SearchMode)> =
        problems.iter().flat_map(|p| opts.modes.iter().map(move |&m| (p, m))).collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| BenchError::Pool(e.to_string()))?;
    let mut results: Vec<BenchResult> = pool.install(|| jobs.par_iter().map(|(p, m)| run_one(p, *m, opts)).collect());
    mark_non_optimal(&mut results);
    Ok(results)
}

fn mark_non_optimal(results: &mut [BenchResult]) {
    let baseline: Vec<((String, u64), usize)> = results
        .iter()
        .filter(|r| r.mode == SearchMode::Baseline)
        .filter_map(|r| r.solution.as_ref().map(|h| ((r.task.clone(), r.seed), literal_count(h))))
        .collect();
    for r in results.iter_mut() {
        let best = baseline.iter().find(|(k, _)| k.0 == r.task && k.1 == r.seed).map(|(_, n)| *n);
        if let (Some(best), Some(h)) = (best, &r.solution) {
            r.non_optimal = Some(literal_count(h) > best);
        }
    }
}

/// Bottom clause and variant checks over one problem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Audit {
    pub bottom_clauses: usize,
    pub variants: usize,
    pub max_depth: usize,
    pub depth_violations: Vec<String>,
    pub variant_violations: Vec<String>,
    /// Examples whose variants exceeded the cap and were not checked.
    pub capped: Vec<String>,
}

/// Builds the bottom clause of every example, checks its variable depth
/// against `max_vars - 1`, and checks that every variant subsumes it.
pub fn audit_problem(p: &ProblemInput, splitting: bool, limits: EvalLimits) -> Audit {
    let ev = Evaluator::new(&p.bk, limits);
    let bc = BottomConfig::for_bias(&p.bias);
    let vc = VariantConfig { max_vars: p.bias.limits.max_vars, splitting, cap: 100_000 };
    let mut a = Audit::default();
    let bound = p.bias.limits.max_vars.saturating_sub(1);
    let jobs = p.pos.iter().map(|e| (e, Polarity::Positive)).chain(p.neg.iter().map(|e| (e, Polarity::Negative)));
    for (e, pol) in jobs {
        let b = match build_bottom_clause_ie(&ev, &p.bias, e, pol, &bc) {
            Ok(b) => b,
            Err(err) => {
                a.depth_violations.push(format!("{}: {}", e, err));
                continue;
            }
        };
        a.bottom_clauses += 1;
        let d = max_depth(&b.clause);
        a.max_depth = a.max_depth.max(d);
        if d > bound {
            a.depth_violations.push(format!("{}: depth {} > {}", e, d, bound));
        }
        let vs = match generate_variants(&b, &p.bias, &vc) {
            Ok(vs) => vs,
            Err(err) => {
                a.capped.push(format!("{}: {}", e, err));
                continue;
            }
        };
        for v in &vs.variants {
            a.variants += 1;
            if !theta_subsumes(v, &b.clause).map(|r| r.holds).unwrap_or(false) {
                a.variant_violations.push(format!("{}: {}", e, v));
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_bias;

    #[test]
    fn space_bound_by_hand() {
        let b = parse_bias("head_pred(f,1).\nbody_pred(p,1).\nmax_vars(1).\nmax_body(1).\nmax_clauses(1).\n").unwrap();
        assert_eq!(hypothesis_space_bound(&b), BigUint::from(1u32));
        let b = parse_bias("head_pred(f,2).\nbody_pred(p,2).\nbody_pred(q,2).\nmax_vars(2).\nmax_body(1).\nmax_clauses(1).\n")
            .unwrap();
        assert_eq!(hypothesis_space_bound(&b), BigUint::from(32u32));
        let mut b = b;
        b.limits.max_clauses = 0;
        assert_eq!(hypothesis_space_bound(&b), BigUint::from(0u32));
    }

    #[test]
    fn big_binomial_matches_small() {
        for n in 0..12usize {
            for k in 0..=n + 1 {
                assert_eq!(big_binomial(&BigUint::from(n), k), crate::variants::binomial(n, k), "C({},{})", n, k);
            }
        }
    }

    #[test]
    fn suite_shapes() {
        let ps = suite_problems(&Suite::Trains { count: 2, seed: 3 }).unwrap();
        assert_eq!(ps.len(), 2);
        let ps = suite_problems(&Suite::Irrelevant { kind: IrrelevantKind::Dyadic, levels: vec![0, 5], seed: 3 }).unwrap();
        assert_eq!(ps[1].problem.bias.body_decls.len(), ps[0].problem.bias.body_decls.len() + 5);
        let ps = suite_problems(&Suite::Lists { tasks: vec![ListTask::Member, ListTask::Len], count: 2, seed: 0 }).unwrap();
        assert_eq!(ps.len(), 4);
    }

    #[test]
    fn kinds_round_trip() {
        for k in ["dyadic", "monadic", "monadic-shared"] {
            assert_eq!(k.parse::<IrrelevantKind>().unwrap().to_string(), k);
        }
    }
}
