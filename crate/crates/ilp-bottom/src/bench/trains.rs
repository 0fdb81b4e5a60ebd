//! Synthetic Michalski trains: random trains over a fixed vocabulary,
//! labelled by a hidden rule.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BenchError;
use crate::eval::{EvalLimits, Evaluator, Verdict};
use crate::io::{parse_bias, parse_clause, ProblemInput};
use crate::logic::{Atom, Clause, Term};

pub const CAR_ATTRIBUTES: [&str; 14] = [
    "short",
    "long",
    "two_wheels",
    "three_wheels",
    "roof_open",
    "roof_closed",
    "flat_roof",
    "jagged_roof",
    "peaked_roof",
    "arc_roof",
    "zero_load",
    "one_load",
    "two_load",
    "three_load",
];

pub const LOAD_SHAPES: [&str; 6] = ["circle", "triangle", "rectangle", "hexagon", "diamond", "inverted_triangle"];

pub const DEFAULT_RULE: &str = "f(A) :- has_car(A,B), has_load(B,C), rectangle(C).";

#[derive(Clone, Debug, PartialEq)]
pub struct TrainsSpec {
    pub n_trains: usize,
    pub seed: u64,
    pub hidden_rule: Clause,
    pub n_pos: usize,
    pub n_neg: usize,
}

impl TrainsSpec {
    pub fn new(seed: u64) -> TrainsSpec {
        TrainsSpec {
            n_trains: 200,
            seed,
            hidden_rule: parse_clause(DEFAULT_RULE).expect("default rule parses"),
            n_pos: 5,
            n_neg: 5,
        }
    }
}

/// The 22-predicate bias with `f/1` as the head.
pub fn trains_bias_text() -> String {
    let mut s = String::from(
        "head_pred(f,1).\ntype(f,(train,)).\ndirection(f,(in,)).\n\
         body_pred(has_car,2).\ntype(has_car,(train,car)).\ndirection(has_car,(in,out)).\n\
         body_pred(has_load,2).\ntype(has_load,(car,load)).\ndirection(has_load,(in,out)).\n",
    );
    for a in CAR_ATTRIBUTES {
        let _ = writeln!(s, "body_pred({a},1).\ntype({a},(car,)).\ndirection({a},(in,)).");
    }
    for a in LOAD_SHAPES {
        let _ = writeln!(s, "body_pred({a},1).\ntype({a},(load,)).\ndirection({a},(in,)).");
    }
    s.push_str("max_vars(5).\nmax_clauses(4).\nmax_body(5).\n");
    s
}

fn fact(p: &str, args: &[&str]) -> Clause {
    Clause::fact(Atom::new(p, args.iter().map(|a| Term::constant(a)).collect()))
}

/// Background facts for one train, in the shape of the classic encoding.
fn random_train(rng: &mut ChaCha8Rng, name: &str) -> Vec<Clause> {
    let mut out = Vec::new();
    let cars = rng.gen_range(1..=4);
    for ci in 1..=cars {
        let car = format!("{}_c{}", name, ci);
        out.push(fact("has_car", &[name, &car]));
        out.push(fact(if rng.gen_bool(0.5) { "short" } else { "long" }, &[&car]));
        out.push(fact(if rng.gen_bool(0.5) { "two_wheels" } else { "three_wheels" }, &[&car]));
        if rng.gen_bool(0.4) {
            out.push(fact("roof_open", &[&car]));
        } else {
            out.push(fact("roof_closed", &[&car]));
            let shape = ["flat_roof", "jagged_roof", "peaked_roof", "arc_roof"].choose(rng).expect("nonempty");
            out.push(fact(shape, &[&car]));
        }
        let loads = rng.gen_range(0..=3usize);
        out.push(fact(["zero_load", "one_load", "two_load", "three_load"][loads], &[&car]));
        let shape = LOAD_SHAPES.choose(rng).expect("nonempty");
        for li in 1..=loads {
            let load = format!("{}_l{}", car, li);
            out.push(fact("has_load", &[&car, &load]));
            out.push(fact(shape, &[&load]));
        }
    }
    out
}

/// Generates trains, labels them with the hidden rule and samples disjoint
/// positive and negative examples. Deterministic in the seed.
pub fn gen_trains_problem(spec: &TrainsSpec) -> Result<ProblemInput, BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut bk = Vec::new();
    let names: Vec<String> = (1..=spec.n_trains).map(|i| format!("t{}", i)).collect();
    for n in &names {
        bk.extend(random_train(&mut rng, n));
    }
    let bias = parse_bias(&trains_bias_text()).expect("trains bias parses");
    let mut program = bk.clone();
    program.push(spec.hidden_rule.clone());
    let ev = Evaluator::new(&program, EvalLimits::default());
    let head = spec.hidden_rule.head.pred;
    let mut pos_pool = Vec::new();
    let mut neg_pool = Vec::new();
    for n in &names {
        let e = Atom { pred: head, args: vec![Term::constant(n)] };
        match ev.query(None, &e) {
            Verdict::Proven => pos_pool.push(e),
            Verdict::NotProven => neg_pool.push(e),
            Verdict::Exhausted => {}
        }
    }
    if pos_pool.len() < spec.n_pos || neg_pool.len() < spec.n_neg {
        return Err(BenchError::TooFewTrains {
            positives: pos_pool.len(),
            negatives: neg_pool.len(),
            n_trains: spec.n_trains,
        });
    }
    pos_pool.shuffle(&mut rng);
    neg_pool.shuffle(&mut rng);
    let pos: BTreeSet<Atom> = pos_pool.into_iter().take(spec.n_pos).collect();
    let neg: BTreeSet<Atom> = neg_pool.into_iter().take(spec.n_neg).collect();
    Ok(ProblemInput { bk, bias, pos, neg })
}

/// Name of the train that no example mentions, used by the injections.
pub const UNUSED_TRAIN: &str = "t_unused";

/// Adds `has_useless_k/2` declarations and one fact each on the unused
/// train.
pub fn inject_irrelevant_dyadic(p: &ProblemInput, i: usize) -> ProblemInput {
    let mut out = p.clone();
    let car = format!("{}_c1", UNUSED_TRAIN);
    for k in 1..=i {
        let name = format!("has_useless_{}", k);
        add_decl(&mut out, &name, &["train", "car"], &["in", "out"]);
        out.bk.push(fact(&name, &[UNUSED_TRAIN, &car]));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonadicPlacement {
    /// Facts on a load of the unused train.
    UnusedLoad,
    /// Facts on the loads that examples reach.
    SharedLoads,
}

/// Adds `c_k/1` constant-surrogate declarations with direction `(out,)`.
pub fn inject_irrelevant_monadic(p: &ProblemInput, i: usize, placement: MonadicPlacement) -> ProblemInput {
    let mut out = p.clone();
    let unused_load = format!("{}_c1_l1", UNUSED_TRAIN);
    let shared: Vec<String> = match placement {
        MonadicPlacement::UnusedLoad => vec![unused_load],
        MonadicPlacement::SharedLoads => {
            let trains: BTreeSet<String> = p.pos.iter().chain(p.neg.iter()).map(|e| e.args[0].to_string()).collect();
            let cars: BTreeSet<String> = p
                .bk
                .iter()
                .filter(|c| c.head.pred.as_str() == "has_car" && trains.contains(&c.head.args[0].to_string()))
                .map(|c| c.head.args[1].to_string())
                .collect();
            p.bk.iter()
                .filter(|c| c.head.pred.as_str() == "has_load" && cars.contains(&c.head.args[0].to_string()))
                .map(|c| c.head.args[1].to_string())
                .collect()
        }
    };
    for k in 1..=i {
        let name = format!("c{}", k);
        add_decl(&mut out, &name, &["load"], &["out"]);
        for l in &shared {
            out.bk.push(fact(&name, &[l]));
        }
    }
    out
}

fn add_decl(p: &mut ProblemInput, name: &str, types: &[&str], dirs: &[&str]) {
    use crate::logic::{Direction, Sym};
    let k = (Sym::new(name), types.len());
    p.bias.body_decls.insert(k);
    p.bias.types.insert(k, types.iter().map(|t| Sym::new(t)).collect());
    p.bias
        .directions
        .insert(k, dirs.iter().map(|d| if *d == "in" { Direction::In } else { Direction::Out }).collect());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bottom::{build_bottom_clause_ie, BottomConfig, Polarity};
    use crate::io::{render_bk, render_examples};
    use crate::learner::is_solution;

    #[test]
    fn vocabulary_has_22_body_predicates() {
        let b = parse_bias(&trains_bias_text()).unwrap();
        assert_eq!(b.body_decls.len(), 22);
        assert_eq!((b.limits.max_vars, b.limits.max_clauses, b.limits.max_body), (5, 4, 5));
    }

    #[test]
    fn default_rule_labels() {
        let p = gen_trains_problem(&TrainsSpec::new(7)).unwrap();
        assert_eq!(p.pos.len() + p.neg.len(), 10);
        // independent check: a positive train has some car with a rectangle load
        let has = |pred: &str, a: &str| -> Vec<String> {
            p.bk.iter()
                .filter(|c| c.head.pred.as_str() == pred && c.head.args[0].to_string() == a)
                .map(|c| c.head.args[1].to_string())
                .collect()
        };
        let rect = |l: &str| p.bk.iter().any(|c| c.head.pred.as_str() == "rectangle" && c.head.args[0].to_string() == l);
        let label = |t: &str| has("has_car", t).iter().any(|car| has("has_load", car).iter().any(|l| rect(l)));
        for e in &p.pos {
            assert!(label(&e.args[0].to_string()), "{}", e);
        }
        for e in &p.neg {
            assert!(!label(&e.args[0].to_string()), "{}", e);
        }
        assert!(is_solution(&p, &[TrainsSpec::new(7).hidden_rule], EvalLimits::default()));
    }

    #[test]
    fn deterministic() {
        let a = gen_trains_problem(&TrainsSpec::new(3)).unwrap();
        let b = gen_trains_problem(&TrainsSpec::new(3)).unwrap();
        assert_eq!(render_bk(&a.bk), render_bk(&b.bk));
        assert_eq!(render_examples(&a.pos, &a.neg), render_examples(&b.pos, &b.neg));
        let c = gen_trains_problem(&TrainsSpec::new(4)).unwrap();
        assert_ne!(render_bk(&a.bk), render_bk(&c.bk));
    }

    #[test]
    fn too_few_trains() {
        let spec = TrainsSpec { n_trains: 3, ..TrainsSpec::new(1) };
        assert!(matches!(gen_trains_problem(&spec), Err(BenchError::TooFewTrains { .. })));
    }

    #[test]
    fn injections() {
        let p = gen_trains_problem(&TrainsSpec::new(5)).unwrap();
        assert_eq!(inject_irrelevant_dyadic(&p, 0), p);
        assert_eq!(inject_irrelevant_monadic(&p, 0, MonadicPlacement::UnusedLoad), p);
        let d = inject_irrelevant_dyadic(&p, 1);
        assert_eq!(d.bias.body_decls.len(), p.bias.body_decls.len() + 1);
        assert_eq!(d.bk.len(), p.bk.len() + 1);
        let m = inject_irrelevant_monadic(&p, 1, MonadicPlacement::UnusedLoad);
        let k = (crate::logic::Sym::new("c1"), 1);
        assert_eq!(m.bias.directions[&k], vec![crate::logic::Direction::Out]);
    }

    #[test]
    fn dyadic_injection_never_reaches_bottom_clauses() {
        let p = inject_irrelevant_dyadic(&gen_trains_problem(&TrainsSpec::new(9)).unwrap(), 100);
        assert_eq!(p.bias.body_decls.len(), 122);
        let ev = Evaluator::new(&p.bk, EvalLimits::default());
        let cfg = BottomConfig::for_bias(&p.bias);
        for (e, pol) in p.pos.iter().map(|e| (e, Polarity::Positive)).chain(p.neg.iter().map(|e| (e, Polarity::Negative))) {
            let b = build_bottom_clause_ie(&ev, &p.bias, e, pol, &cfg).unwrap();
            assert!(b.clause.body.iter().all(|l| !l.pred.as_str().starts_with("has_useless")), "{}", b.clause);
        }
    }
}
