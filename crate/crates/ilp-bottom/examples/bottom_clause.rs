//! Bottom clauses of the palindrome examples, built by saturation through
//! the evaluator.
//!
//!     cargo run --example bottom_clause -- ['palindrome([a,t])']

use ilp_bottom::bench::palindrome;
use ilp_bottom::bottom::{build_bottom_clause_ie, BottomConfig, Polarity};
use ilp_bottom::eval::{EvalLimits, Evaluator};
use ilp_bottom::io::parse_atom;
use ilp_bottom::logic::variable_depths;

fn main() {
    let p = palindrome::problem(false);
    let ev = Evaluator::new(&p.bk, EvalLimits::default());
    let cfg = BottomConfig::for_bias(&p.bias);
    let examples: Vec<_> = match std::env::args().nth(1) {
        Some(a) => vec![parse_atom(&a).expect("an atom such as palindrome([a,t])")],
        None => p.pos.iter().chain(p.neg.iter()).cloned().collect(),
    };
    for e in examples {
        let pol = if p.neg.contains(&e) { Polarity::Negative } else { Polarity::Positive };
        let b = build_bottom_clause_ie(&ev, &p.bias, &e, pol, &cfg).expect("bottom clause");
        let deepest = variable_depths(&b.clause).into_values().max().unwrap_or(0);
        println!("{} ({}, {} body literals, deepest variable {})", e, pol, b.clause.body.len(), deepest);
        println!("  {}", b.clause);
    }
}
