use super::*;
use crate::bench::palindrome;
use crate::eval::{EvalLimits, Verdict};
use crate::io::{parse_atom, parse_bias, parse_bk, parse_clause};
use crate::logic::canonical_form;

fn atom(s: &str) -> Atom {
    parse_atom(s).unwrap()
}

fn palindrome_bottom(e: &str, depth: Option<usize>) -> BottomClause {
    let p = palindrome::problem(false);
    let ev = Evaluator::new(&p.bk, EvalLimits::default());
    let mut cfg = BottomConfig::for_bias(&p.bias);
    if let Some(d) = depth {
        cfg.depth = d;
    }
    build_bottom_clause_ie(&ev, &p.bias, &atom(e), Polarity::Negative, &cfg).unwrap()
}

#[test]
fn at_bottom_clause() {
    let b = palindrome_bottom("palindrome([a,t])", None);
    let want = parse_clause(
        "palindrome(A) :- first(A,B), last(A,C), middle(A,D), empty(D), length(A,F), length(D,G), one(E).",
    )
    .unwrap();
    assert_eq!(canonical_form(&b.clause), canonical_form(&want), "{}", b.clause);
    assert!(!b.truncated);
    let ground: BTreeSet<Atom> = b.ground_witness.body.iter().cloned().collect();
    assert!(ground.contains(&atom("length([],0)")));
    assert!(ground.contains(&atom("middle([a,t],[])")));
    assert_eq!(ground.len(), 7);
}

#[test]
fn depth_zero_is_head_only() {
    let b = palindrome_bottom("palindrome([a,t])", Some(0));
    assert!(b.clause.body.is_empty());
    assert_eq!(b.clause.head.args, vec![Term::Var(0)]);
}

#[test]
fn no_matching_facts_gives_head_only() {
    let bias = parse_bias("head_pred(f,1). body_pred(q,1). type(f,(t,)). type(q,(t,)). direction(f,(in,)). direction(q,(in,)).")
        .unwrap();
    let ev = Evaluator::new(&parse_bk("q(b).").unwrap(), EvalLimits::default());
    let b = build_bottom_clause_ie(&ev, &bias, &atom("f(a)"), Polarity::Positive, &BottomConfig::for_bias(&bias)).unwrap();
    assert_eq!(b.clause.to_string(), "f(A).");
}

#[test]
fn monotone_in_depth_and_entails_example() {
    let p = palindrome::problem(false);
    let ev = Evaluator::new(&p.bk, EvalLimits::default());
    for e in p.pos.iter().chain(&p.neg) {
        let mut prev: BTreeSet<Atom> = BTreeSet::new();
        for d in 0..=4 {
            let mut cfg = BottomConfig::for_bias(&p.bias);
            cfg.depth = d;
            let b = build_bottom_clause_ie(&ev, &p.bias, e, Polarity::Positive, &cfg).unwrap();
            let now: BTreeSet<Atom> = b.ground_witness.body.iter().cloned().collect();
            assert!(prev.is_subset(&now));
            prev = now;
            assert!(p.bias.check_clause_with(&b.clause, HeadOutputs::IgnoreHeadOutputs).is_empty());
            assert!(crate::logic::max_depth(&b.clause) <= d.max(1), "{} {}", d, b.clause);
            if !b.truncated {
                let ordered = p.bias.evaluation_order(&b.clause);
                assert_eq!(ev.covers(&[ordered], e), Verdict::Proven, "{}", b.clause);
            }
        }
    }
}

#[test]
fn unknown_head_is_error() {
    let p = palindrome::problem(false);
    let ev = Evaluator::new(&p.bk, EvalLimits::default());
    let cfg = BottomConfig::for_bias(&p.bias);
    assert!(matches!(
        build_bottom_clause_ie(&ev, &p.bias, &atom("foo(a)"), Polarity::Positive, &cfg),
        Err(BottomError::NotHeadDeclared(_))
    ));
}

#[test]
fn default_depth() {
    let mut b = LanguageBias::default();
    for (mv, d) in [(5, 4), (1, 0), (6, 5)] {
        b.limits.max_vars = mv;
        assert_eq!(default_variable_depth(&b), d);
    }
}

const FC_BIAS: &str = "head_pred(p,1). body_pred(q,1). type(p,(t,)). type(q,(t,)). direction(p,(in,)). direction(q,(in,)).";

#[test]
fn forward_chaining_one_fact() {
    let bias = parse_bias(FC_BIAS).unwrap();
    let b = build_bottom_clause_fc(&parse_bk("q(a).").unwrap(), &bias, &atom("p(a)"), Polarity::Positive, 100).unwrap();
    assert_eq!(b.ground_witness.to_string(), "p(a) :- q(a).");
    assert_eq!(b.clause.to_string(), "p(A) :- q(A).");
    let empty = build_bottom_clause_fc(&[], &bias, &atom("p(a)"), Polarity::Positive, 100).unwrap();
    assert!(empty.clause.body.is_empty());
}

#[test]
fn lift_cases() {
    let bias = parse_bias(
        "head_pred(p,1). body_pred(q,2). type(p,(t,)). type(q,(t,t)). direction(p,(in,)). direction(q,(in,in)).",
    )
    .unwrap();
    let c = lift(&parse_clause("p(a) :- q(a,a), r(a).").unwrap(), &bias).unwrap();
    assert_eq!(c.to_string(), "p(A) :- q(A,A).");
    assert!(lift(&parse_clause("z(a).").unwrap(), &bias).is_err());
}

fn trains_fragment() -> (Vec<Clause>, LanguageBias) {
    let bk = parse_bk(
        "has_car(t3,c31). has_car(t3,c32). has_car(t1,c11). short(c31). long(c32). short(c11).
         has_load(c31,l1). triangle(l1). has_load(c11,l2). circle(l2).",
    )
    .unwrap();
    let bias = parse_bias(
        "head_pred(f,1). body_pred(has_car,2). body_pred(short,1). body_pred(long,1). body_pred(has_load,2).
         body_pred(triangle,1). body_pred(circle,1).
         type(f,(train,)). type(has_car,(train,car)). type(short,(car,)). type(long,(car,)).
         type(has_load,(car,load)). type(triangle,(load,)). type(circle,(load,)).
         direction(f,(in,)). direction(has_car,(in,out)). direction(short,(in,)). direction(long,(in,)).
         direction(has_load,(in,out)). direction(triangle,(in,)). direction(circle,(in,)).",
    )
    .unwrap();
    (bk, bias)
}

#[test]
fn forward_chaining_covers_mode_guided() {
    let (bk, bias) = trains_fragment();
    let e = atom("f(t3)");
    let fc = build_bottom_clause_fc(&bk, &bias, &e, Polarity::Positive, 1000).unwrap();
    let model = crate::eval::least_model(&bk, 1000).unwrap();
    let fc_ground: BTreeSet<Atom> = fc.ground_witness.body.iter().cloned().collect();
    assert_eq!(fc_ground, model);
    let ev = Evaluator::new(&bk, EvalLimits::default());
    let ie = build_bottom_clause_ie(&ev, &bias, &e, Polarity::Positive, &BottomConfig::for_bias(&bias)).unwrap();
    let ie_ground: BTreeSet<Atom> = ie.ground_witness.body.iter().cloned().collect();
    assert!(ie_ground.is_subset(&fc_ground));
    // only t3's own facts are reachable by the modes
    assert_eq!(ie_ground.len(), 6);
    assert!(ie_ground.iter().all(|a| !a.to_string().contains("c11")));
}

#[test]
fn head_output_equal_to_an_input_is_not_consumed() {
    let bias = parse_bias(
        "head_pred(f,2). type(f,(list,list)). direction(f,(in,out)).
         body_pred(tail,2). type(tail,(list,list)). direction(tail,(in,out)).
         body_pred(head,2). type(head,(list,element)). direction(head,(in,out)).",
    )
    .unwrap();
    let bk = parse_bk("tail([X|T],T).\nhead([X|T],X).\n").unwrap();
    let ev = Evaluator::new(&bk, EvalLimits::default());
    // the output list equals the input list; nothing in the body outputs it
    let e = atom("f([1,2],[1,2])");
    let b = build_bottom_clause_ie(&ev, &bias, &e, Polarity::Negative, &BottomConfig::for_bias(&bias)).unwrap();
    assert!(bias.check_clause_with(&b.clause, HeadOutputs::IgnoreHeadOutputs).is_empty(), "{}", b.clause);
    assert!(b.clause.body.iter().all(|l| l.args[0] != Term::Var(1)), "{}", b.clause);
    // an output that the body does produce may feed later literals
    let e = atom("f([1,2],[2])");
    let b = build_bottom_clause_ie(&ev, &bias, &e, Polarity::Negative, &BottomConfig::for_bias(&bias)).unwrap();
    assert!(b.clause.body.iter().any(|l| l.args[0] == Term::Var(1)), "{}", b.clause);
}
