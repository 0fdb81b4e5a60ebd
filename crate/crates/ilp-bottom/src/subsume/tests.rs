use super::*;
use crate::bottom::{BottomClause, Polarity};
use crate::io::{parse_bias, parse_clause};
use crate::variants::{generate_variants, VariantConfig};

fn cl(s: &str) -> Clause {
    parse_clause(s).unwrap()
}

fn holds(a: &str, b: &str) -> bool {
    theta_subsumes(&cl(a), &cl(b)).unwrap().holds
}

const C1: &str = "palindrome(A) :- first(A,B), middle(A,C), last(A,B).";
const C2: &str = "palindrome(A) :- first(A,C), middle(A,B).";
const C3: &str = "palindrome(A) :- first(A,B), last(A,B).";

#[test]
fn textbook_cases() {
    let v = theta_subsumes(&cl(C2), &cl(C1)).unwrap();
    assert!(v.holds);
    let Some(Witness::Substitution(s)) = v.witness else { panic!() };
    let c1 = cl(C1);
    for l in &cl(C2).body {
        assert!(c1.body.contains(&s.apply_atom(l)), "{}", l);
    }
    assert!(holds(C3, C1));
    assert!(!holds(C1, C2));
    assert!(!holds(C1, C3));
}

#[test]
fn yamamoto() {
    assert!(!holds(
        "odd(A) :- succ(B,A), even(B).",
        "odd(A) :- zero(B), even(B), succ(B,C), succ(C,D), succ(D,A).",
    ));
}

#[test]
fn theories() {
    assert!(theory_subsumes(&[cl(C3)], &[cl(C1)]).unwrap());
    assert!(theory_subsumes(&[cl(C1)], &[]).unwrap());
    assert!(!theory_subsumes(&[cl(C1)], &[cl(C2)]).unwrap());
}

#[test]
fn budget_is_explicit() {
    let a = cl("p(A) :- e(B,C), e(C,D), e(D,E), e(E,F), e(F,G), e(G,B).");
    let b = cl("p(A) :- e(X,Y), e(Y,X), e(Y,Z), e(Z,Y), e(X,Z), e(Z,X).");
    assert!(matches!(theta_subsumes_with(&a, &b, 3), Err(BudgetExhausted(3))));
    assert!(theta_subsumes(&a, &b).unwrap().holds);
}

fn example_42_variant() -> VariantSet {
    VariantSet {
        source: crate::io::parse_atom("palindrome([a,t])").unwrap(),
        polarity: Polarity::Negative,
        variants: vec![Clause::new(
            crate::logic::Atom::new("palindrome", vec![Term::Var(0)]),
            vec![
                atom_i("first", &[0, 1]),
                atom_i("last", &[0, 2]),
                atom_i("middle", &[0, 3]),
                atom_i("empty", &[3]),
                atom_i("length", &[0, 5]),
                atom_i("length", &[3, 6]),
                atom_i("one", &[4]),
            ],
        )],
    }
}

fn atom_i(p: &str, vs: &[u32]) -> Atom {
    Atom::new(p, vs.iter().map(|v| Term::Var(*v)).collect())
}

fn ic(head: &[u32], body: &[(&str, &[u32])]) -> Clause {
    Clause::new(atom_i("palindrome", head), body.iter().map(|(p, v)| atom_i(p, v)).collect())
}

#[test]
fn pure_variant_lookup() {
    let vs = example_42_variant();
    assert!(generalizes_via_variants(&ic(&[0], &[("middle", &[0, 3]), ("empty", &[3])]), &vs).holds);
    assert!(!generalizes_via_variants(&ic(&[0], &[("length", &[0, 5]), ("one", &[5])]), &vs).holds);
    assert!(generalizes_via_variants(&ic(&[0], &[]), &vs).holds);
}

#[test]
fn precedes_recursion() {
    let bias = parse_bias(
        "head_pred(f,3). body_pred(tail,2). body_pred(decrement,2). type(f,(list,int,list)).
         type(tail,(list,list)). type(decrement,(int,int)).
         direction(f,(in,in,out)). direction(tail,(in,out)). direction(decrement,(in,out)). enable_recursion.",
    )
    .unwrap();
    let c = cl("f(A,B,C) :- tail(A,D), decrement(B,E), f(D,E,C).");
    let got: Vec<String> = precedes_recursion_literals(&c, &bias).iter().map(|a| a.to_string()).collect();
    assert_eq!(got, vec!["tail(A,D)", "decrement(B,E)"]);
    assert!(precedes_recursion_literals(&cl("f(A,B,C) :- tail(A,C)."), &bias).is_empty());
    let pal = parse_bias("head_pred(f,1). type(f,(t,)). direction(f,(in,)). enable_recursion.").unwrap();
    assert!(precedes_recursion_literals(&cl("f(A) :- f(A)."), &pal).is_empty());

    // a positive bottom clause without any f/3 literal
    let b = BottomClause {
        example: crate::io::parse_atom("f([a,b],1,[b])").unwrap(),
        polarity: Polarity::Positive,
        clause: cl("f(A,B,C) :- tail(A,D), decrement(B,E), tail(D,F)."),
        ground_witness: cl("f(a,b,c)."),
        depth_used: 4,
        truncated: false,
    };
    let vi = VariantIndex::new(
        generate_variants(&b, &bias, &VariantConfig { max_vars: 5, splitting: false, cap: 100_000 }).unwrap(),
    );
    assert!(clause_generalizes_bottom(&c, &vi, true, &bias));
    assert!(!clause_generalizes_bottom(&c, &vi, false, &bias));
}

#[test]
fn example_12_pruning() {
    let p = crate::bench::palindrome::problem(false);
    let ev = crate::eval::Evaluator::new(&p.bk, crate::eval::EvalLimits::default());
    let e = crate::io::parse_atom("palindrome([a,t])").unwrap();
    let b = crate::bottom::build_bottom_clause_ie(
        &ev,
        &p.bias,
        &e,
        Polarity::Negative,
        &crate::bottom::BottomConfig::for_bias(&p.bias),
    )
    .unwrap();
    let vi = VariantIndex::new(
        generate_variants(&b, &p.bias, &VariantConfig { max_vars: 4, splitting: false, cap: 100_000 }).unwrap(),
    );
    assert!(hypothesis_generalizes_bottom(&[cl("palindrome(A) :- middle(A,D), empty(D).")], &vi, true, &p.bias));
    assert!(!hypothesis_generalizes_bottom(&[], &vi, true, &p.bias));
    assert!(!hypothesis_generalizes_bottom(&[cl("palindrome(A) :- first(A,B), last(A,B).")], &vi, true, &p.bias));
    for v in &vi.set.variants {
        assert!(theta_subsumes(v, &b.clause).unwrap().holds, "{}", v);
    }
}

#[test]
fn documented_counterexample() {
    let bias = parse_bias(
        "head_pred(palindrome,1). body_pred(middle,2). type(palindrome,(list,)). type(middle,(list,list)).
         direction(palindrome,(in,)). direction(middle,(in,out)).",
    )
    .unwrap();
    let b = BottomClause {
        example: crate::io::parse_atom("palindrome([])").unwrap(),
        polarity: Polarity::Negative,
        clause: cl("palindrome(A) :- middle(A,A)."),
        ground_witness: cl("palindrome([]) :- middle([],[])."),
        depth_used: 4,
        truncated: false,
    };
    let vi = VariantIndex::new(
        generate_variants(&b, &bias, &VariantConfig { max_vars: 3, splitting: true, cap: 100_000 }).unwrap(),
    );
    let d = cl("palindrome(A) :- middle(A,B), middle(B,A).");
    assert!(theta_subsumes(&d, &b.clause).unwrap().holds);
    assert!(!clause_generalizes_bottom(&d, &vi, false, &bias));
    assert!(clause_generalizes_bottom(&cl("palindrome(A) :- middle(A,B)."), &vi, false, &bias));
    assert!(clause_generalizes_bottom(&cl("palindrome(A) :- middle(A,A)."), &vi, false, &bias));
}
