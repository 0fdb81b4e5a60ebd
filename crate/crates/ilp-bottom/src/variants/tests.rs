use super::*;
use crate::io::{parse_bias, parse_clause};
use crate::logic::canonical_form;

fn bias_mid() -> LanguageBias {
    parse_bias(
        "head_pred(palindrome,1). body_pred(middle,2). type(palindrome,(list,)). type(middle,(list,list)).
         direction(palindrome,(in,)). direction(middle,(in,out)). max_vars(3).",
    )
    .unwrap()
}

fn bottom(c: &str, polarity: Polarity) -> BottomClause {
    let clause = parse_clause(c).unwrap();
    BottomClause {
        example: clause.head.clone(),
        polarity,
        ground_witness: clause.clone(),
        clause,
        depth_used: 4,
        truncated: false,
    }
}

#[test]
fn split_self_middle() {
    let sr = variable_split(&parse_clause("palindrome(A) :- middle(A,A).").unwrap(), &bias_mid());
    assert_eq!(sr.clause.to_string(), "palindrome(A) :- middle(A,B).");
    assert_eq!(sr.classes, vec![BTreeSet::from([0, 1])]);
}

#[test]
fn split_nothing_to_do() {
    let c = parse_clause("palindrome(A) :- middle(A,B), middle(B,C).").unwrap();
    let sr = variable_split(&c, &bias_mid());
    assert_eq!(sr.clause, c);
    assert!(sr.classes.iter().all(|k| k.len() == 1));
}

#[test]
fn split_out_reuse() {
    let bias = parse_bias(
        "head_pred(p,1). body_pred(q,2). body_pred(r,2). type(p,(t,)). type(q,(t,t)). type(r,(t,t)).
         direction(p,(in,)). direction(q,(in,out)). direction(r,(in,out)).",
    )
    .unwrap();
    let sr = variable_split(&parse_clause("p(A) :- q(A,B), r(B,B).").unwrap(), &bias);
    assert_eq!(sr.clause.to_string(), "p(A) :- q(A,B),r(B,C).");
    assert_eq!(sr.classes, vec![BTreeSet::from([0]), BTreeSet::from([1, 2])]);
}

#[test]
fn split_duplicates_consumers() {
    let bias = parse_bias(
        "head_pred(p,1). body_pred(q,2). body_pred(s,1). type(p,(t,)). type(q,(t,t)). type(s,(t,)).
         direction(p,(in,)). direction(q,(in,out)). direction(s,(in,)).",
    )
    .unwrap();
    let sr = variable_split(&parse_clause("p(A) :- q(A,B), q(A,B), s(B).").unwrap(), &bias);
    assert_eq!(sr.clause.to_string(), "p(A) :- q(A,B),q(A,C),s(B),s(C).");
    let sr = variable_split(&parse_clause("p(A) :- q(A,A), s(A).").unwrap(), &bias);
    assert_eq!(sr.clause.to_string(), "p(A) :- q(A,B),s(A),s(B).");
}

#[test]
fn bounds() {
    assert_eq!(variant_count_bound(3, 5, 1), BigUint::from(35u32));
    assert_eq!(variant_count_bound(0, 5, 2), BigUint::from(1u32));
    assert_eq!(variant_count_bound(4, 5, 2), BigUint::from(35u32));
}

#[test]
fn substitution_counts() {
    let c = parse_clause("p(A) :- q(A,B), q(B,C), q(C,D).").unwrap();
    let sr = SplitResult::unsplit(&c);
    let subs = enumerate_substitutions(&sr, 5, 1);
    assert_eq!(subs.len(), 35);
    assert_eq!(BigUint::from(subs.len()), variant_count_bound(3, 5, 1));
    for m in &subs {
        let mut targets: Vec<u32> = m.values().copied().collect();
        targets.sort();
        targets.dedup();
        assert_eq!(targets.len(), m.len(), "injective");
        assert_eq!(m[&0], 0);
        assert!(targets.iter().all(|&t| t < 5));
    }
    let compact = compact_substitutions(&sr, 5, 1);
    assert!(compact.len() < subs.len());
    let head_only = SplitResult::unsplit(&parse_clause("p(A).").unwrap());
    assert_eq!(enumerate_substitutions(&head_only, 5, 1).len(), 1);
    assert_eq!(compact_substitutions(&head_only, 5, 1).len(), 1);
}

fn renaming_classes(sr: &SplitResult, maps: &[BTreeMap<u32, u32>]) -> BTreeSet<Clause> {
    maps.iter().map(|m| canonical_form(&apply_map(&sr.clause, m))).collect()
}

#[test]
fn compact_covers_every_renaming_class() {
    for text in [
        "p(A) :- q(A,B), q(B,C), q(C,D).",
        "p(A) :- q(A,B), r(B), q(A,C), s(C,D), r(D).",
        "p(A,B) :- q(A,C), q(B,C), s(C,D).",
        "palindrome(A) :- first(A,B), last(A,C), middle(A,D), empty(D), length(A,F), length(D,G), one(E).",
    ] {
        let sr = SplitResult::unsplit(&parse_clause(text).unwrap());
        let h = sr.clause.head.args.len();
        for j in [h, h + 1, 3, 4, 5] {
            let full = enumerate_substitutions(&sr, j, h);
            let n = sr.clause.vars().len() - sr.clause.head_vars().len();
            assert_eq!(BigUint::from(full.len()), variant_count_bound(n, j, h), "{} j={}", text, j);
            let compact = compact_substitutions(&sr, j, h);
            assert_eq!(renaming_classes(&sr, &full), renaming_classes(&sr, &compact), "{} j={}", text, j);
        }
    }
}

#[test]
fn head_only_one_variant() {
    let b = bottom("palindrome(A).", Polarity::Negative);
    let cfg = VariantConfig { max_vars: 3, splitting: false, cap: 100_000 };
    assert_eq!(generate_variants(&b, &bias_mid(), &cfg).unwrap().variants.len(), 1);
}

#[test]
fn split_variants_keep_both_forms() {
    let b = bottom("palindrome(A) :- middle(A,A).", Polarity::Negative);
    let cfg = VariantConfig { max_vars: 3, splitting: true, cap: 100_000 };
    let vs = generate_variants(&b, &bias_mid(), &cfg).unwrap();
    let text: Vec<String> = vs.variants.iter().map(|v| v.to_string()).collect();
    assert!(text.contains(&"palindrome(A) :- middle(A,B).".to_string()), "{:?}", text);
    assert!(text.contains(&"palindrome(A) :- middle(A,A).".to_string()), "{:?}", text);
    let cfg = VariantConfig { splitting: false, ..cfg };
    let vs = generate_variants(&b, &bias_mid(), &cfg).unwrap();
    assert!(!vs.variants.iter().any(|v| v.to_string() == "palindrome(A) :- middle(A,B)."));
}

#[test]
fn identity_variant_present_and_deterministic() {
    let p = crate::bench::palindrome::problem(false);
    let ev = crate::eval::Evaluator::new(&p.bk, crate::eval::EvalLimits::default());
    let e = crate::io::parse_atom("palindrome([a,t])").unwrap();
    let cfg = crate::bottom::BottomConfig::for_bias(&p.bias);
    let b = crate::bottom::build_bottom_clause_ie(&ev, &p.bias, &e, Polarity::Negative, &cfg).unwrap();
    let vc = VariantConfig { max_vars: p.bias.limits.max_vars, splitting: false, cap: 100_000 };
    let a = generate_variants(&b, &p.bias, &vc).unwrap();
    let again = generate_variants(&b, &p.bias, &vc).unwrap();
    assert_eq!(a, again);
    assert!(a.variants.contains(&identity_variant(&b.clause, vc.max_vars)));
    for v in &a.variants {
        assert_eq!(v.head.args, vec![Term::Var(0)]);
        assert!(v.vars().iter().all(|&x| (x as usize) < vc.max_vars));
    }
}

#[test]
fn cap_is_an_error() {
    let p = crate::bench::palindrome::problem(false);
    let ev = crate::eval::Evaluator::new(&p.bk, crate::eval::EvalLimits::default());
    let e = crate::io::parse_atom("palindrome([a,t])").unwrap();
    let cfg = crate::bottom::BottomConfig::for_bias(&p.bias);
    let b = crate::bottom::build_bottom_clause_ie(&ev, &p.bias, &e, Polarity::Negative, &cfg).unwrap();
    let vc = VariantConfig { max_vars: 5, splitting: false, cap: 3 };
    assert!(matches!(generate_variants(&b, &p.bias, &vc), Err(VariantError::CapExceeded { .. })));
}
