//! Queries against background knowledge, with and without a hypothesis.
//!
//!     cargo run --example evaluate

use ilp_bottom::bench::palindrome;
use ilp_bottom::eval::{EvalLimits, Evaluator};
use ilp_bottom::io::{parse_atom, parse_clauses};

fn main() {
    let p = palindrome::problem(false);
    let ev = Evaluator::new(&p.bk, EvalLimits::default());
    let (answers, complete) = ev.answers(&parse_atom("middle([r,a,c,e],X)").unwrap(), 10);
    println!("middle([r,a,c,e],X): {:?} complete={}", answers.iter().map(|a| a.to_string()).collect::<Vec<_>>(), complete);
    let h = parse_clauses(
        "palindrome(A) :- empty(A).\n\
         palindrome(A) :- length(A,B), one(B).\n\
         palindrome(A) :- first(A,B), last(A,B), middle(A,C), palindrome(C).\n",
    )
    .unwrap();
    let h: Vec<_> = h.iter().map(|c| p.bias.evaluation_order(c)).collect();
    let out = ev.test_hypothesis(&h, &p.pos, &p.neg);
    println!(
        "covered {}/{} positives, {} negatives, {} timed out; solution: {}",
        out.covered_pos.len(),
        p.pos.len(),
        out.covered_neg.len(),
        out.timed_out.len(),
        out.is_solution()
    );
}
