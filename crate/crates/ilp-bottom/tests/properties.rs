mod common;

use proptest::prelude::*;

use ilp_bottom::bench::micro::micro_problem;
use ilp_bottom::bottom::{build_bottom_clause_ie, BottomConfig, Polarity};
use ilp_bottom::eval::{EvalLimits, Evaluator};
use ilp_bottom::io::parse_clause;
use ilp_bottom::logic::{canonical_form, Atom, Clause, Term};
use ilp_bottom::subsume::theta_subsumes;
use ilp_bottom::variants::{enumerate_substitutions, generate_variants, SplitResult, VariantConfig, VariantError};

/// Clauses `f(A) :- ...` over predicates p/2 and q/1 with variables A..E.
fn clause() -> impl Strategy<Value = Clause> {
    let lit = prop_oneof![
        (0u32..5, 0u32..5).prop_map(|(a, b)| Atom::new("p", vec![Term::Var(a), Term::Var(b)])),
        (0u32..5).prop_map(|a| Atom::new("q", vec![Term::Var(a)])),
    ];
    prop::collection::vec(lit, 0..5).prop_map(|body| Clause::new(Atom::new("f", vec![Term::Var(0)]), body))
}

fn holds(a: &Clause, b: &Clause) -> bool {
    theta_subsumes(a, b).unwrap().holds
}

fn shuffle_rename(c: &Clause, perm: &[u32], rot: usize) -> Clause {
    let mut body: Vec<Atom> = c.body.iter().map(|l| l.map_vars(&mut |v| Term::Var(perm[v as usize] + 10))).collect();
    if !body.is_empty() {
        let k = rot % body.len();
        body.rotate_left(k);
    }
    Clause::new(c.head.map_vars(&mut |v| Term::Var(perm[v as usize] + 10)), body)
}

proptest! {
    #[test]
    fn subsumption_agrees_with_oracle(a in clause(), b in clause()) {
        prop_assert_eq!(holds(&a, &b), common::subsumes(&a, &b));
    }

    #[test]
    fn subsumption_is_reflexive(a in clause()) {
        prop_assert!(holds(&a, &a));
    }

    #[test]
    fn subsumption_is_transitive(a in clause(), b in clause(), c in clause()) {
        if holds(&a, &b) && holds(&b, &c) {
            prop_assert!(holds(&a, &c));
        }
    }

    #[test]
    fn canonical_form_ignores_names_and_order(c in clause(), perm in Just((0u32..5).collect::<Vec<_>>()).prop_shuffle(), rot in 0usize..5) {
        // the head variable must stay the head variable for equal heads
        let perm: Vec<u32> = {
            let mut p = perm;
            let i = p.iter().position(|&x| x == 0).unwrap();
            p.swap(0, i);
            p
        };
        let d = shuffle_rename(&c, &perm, rot);
        prop_assert_eq!(canonical_form(&c), canonical_form(&d));
        prop_assert_eq!(canonical_form(&canonical_form(&c)), canonical_form(&c));
    }

    #[test]
    fn clauses_print_and_parse_back(c in clause()) {
        let back = parse_clause(&c.to_string()).unwrap();
        prop_assert!(common::same_up_to_renaming(&back, &c));
    }

    #[test]
    fn substitution_count_is_binomial(c in clause(), j in 1usize..6) {
        let sr = SplitResult::unsplit(&c);
        let n = c.vars().len() - c.head_vars().len();
        prop_assert_eq!(enumerate_substitutions(&sr, j, 1).len() as u128, common::binom(n + j - 1, j - 1));
    }

    #[test]
    fn variants_subsume_their_bottom_clause(seed in 0u64..500) {
        let p = micro_problem(seed);
        let ev = Evaluator::new(&p.bk, EvalLimits::default());
        let cfg = BottomConfig::for_bias(&p.bias);
        for splitting in [false, true] {
            let vc = VariantConfig { max_vars: p.bias.limits.max_vars, splitting, cap: 100_000 };
            for e in p.pos.iter().chain(&p.neg) {
                let b = build_bottom_clause_ie(&ev, &p.bias, e, Polarity::Negative, &cfg).unwrap();
                // a capped example reports an error instead of a partial set
                let vs = match generate_variants(&b, &p.bias, &vc) {
                    Ok(r) => r.variants,
                    Err(VariantError::CapExceeded { .. }) => continue,
                };
                for v in vs {
                    prop_assert!(common::subsumes(&v, &b.clause), "{} vs {}", v, b.clause);
                    prop_assert!(v.vars().len() <= p.bias.limits.max_vars);
                }
            }
        }
    }
}
