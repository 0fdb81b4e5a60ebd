//! Tiny random problems whose whole hypothesis space can be enumerated.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::{EvalLimits, Evaluator, Verdict};
use crate::io::{parse_bias, ProblemInput};
use crate::learner::ClausePool;
use crate::logic::{Atom, Clause, Term};

const CONSTANTS: [&str; 5] = ["a", "b", "c", "d", "e"];

/// Body predicate templates: name, directions.
const TEMPLATES: [(&str, &[&str]); 4] =
    [("p", &["in", "out"]), ("q", &["in"]), ("r", &["in", "in"]), ("s", &["out"])];

fn all_tuples(arity: usize) -> Vec<Vec<&'static str>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| CONSTANTS.iter().map(move |c| [t.clone(), vec![*c]].concat())).collect();
    }
    out
}

fn atom(p: &str, args: &[&str]) -> Atom {
    Atom::new(p, args.iter().map(|a| Term::constant(a)).collect())
}

/// A problem with at most three body predicates, `max_vars <= 3`,
/// `max_body <= 2` and `max_clauses <= 2`, labelled by a hidden clause drawn
/// from its own hypothesis space, so at least one solution exists.
pub fn micro_problem(seed: u64) -> ProblemInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let head_arity = rng.gen_range(1..=2);
    let n_preds = rng.gen_range(1..=3);
    let mut chosen: Vec<(&str, &[&str])> = TEMPLATES.to_vec();
    chosen.shuffle(&mut rng);
    chosen.truncate(n_preds);
    chosen.sort();
    let mut bias = String::new();
    let head_t = vec!["t"; head_arity].join(",");
    let head_d = vec!["in"; head_arity].join(",");
    let _ = writeln!(bias, "head_pred(f,{head_arity}).\ntype(f,({head_t},)).\ndirection(f,({head_d},)).");
    for (name, dirs) in &chosen {
        let a = dirs.len();
        let _ = writeln!(
            bias,
            "body_pred({name},{a}).\ntype({name},({},)).\ndirection({name},({},)).",
            vec!["t"; a].join(","),
            dirs.join(",")
        );
    }
    let _ = writeln!(
        bias,
        "max_vars({}).\nmax_body({}).\nmax_clauses({}).",
        rng.gen_range(head_arity.max(2)..=3),
        rng.gen_range(1..=2),
        rng.gen_range(1..=2)
    );
    if rng.gen_bool(0.25) {
        bias.push_str("enable_recursion.\n");
    }
    let bias = parse_bias(&bias).expect("micro bias parses");

    let mut bk = Vec::new();
    for (name, dirs) in &chosen {
        for t in all_tuples(dirs.len()) {
            if rng.gen_bool(0.3) {
                bk.push(Clause::fact(atom(name, &t)));
            }
        }
    }

    let mut pool = ClausePool::new(&bias);
    pool.ensure(bias.limits.max_body + 1);
    let heads: Vec<Atom> = all_tuples(head_arity).iter().map(|t| atom("f", t)).collect();
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.shuffle(&mut rng);
    let mut program = bk.clone();
    let mut covered = Vec::new();
    for id in order {
        let c = pool.get(id);
        if c.recursive {
            continue;
        }
        program.truncate(bk.len());
        program.push(c.runnable.clone());
        let ev = Evaluator::new(&program, EvalLimits::default());
        covered = heads.iter().filter(|e| ev.query(None, e) == Verdict::Proven).cloned().collect();
        if !covered.is_empty() && covered.len() < heads.len() {
            break;
        }
    }
    let uncovered: Vec<Atom> = heads.iter().filter(|e| !covered.contains(e)).cloned().collect();
    let pick = |xs: &[Atom], rng: &mut ChaCha8Rng| -> BTreeSet<Atom> {
        xs.choose_multiple(rng, 4.min(xs.len())).cloned().collect()
    };
    let pos = pick(&covered, &mut rng);
    let neg = pick(&uncovered, &mut rng);
    ProblemInput { bk, bias, pos, neg }
}
