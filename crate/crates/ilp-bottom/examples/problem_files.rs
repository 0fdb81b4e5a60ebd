//! Writes a generated trains problem to a directory, reads it back, checks
//! it, and prints its bias as mode declarations.
//!
//!     cargo run --example problem_files -- [dir]

use ilp_bottom::bench::trains::{gen_trains_problem, TrainsSpec};
use ilp_bottom::eval::{EvalLimits, Evaluator};
use ilp_bottom::io::{to_mode_declarations, validate_problem, ProblemInput};

fn main() {
    let dir = std::env::args().nth(1).map(std::path::PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("ilpb-trains"));
    let p = gen_trains_problem(&TrainsSpec::new(7)).expect("trains problem");
    p.save(&dir).expect("writable directory");
    let q = ProblemInput::load(&dir).expect("readable problem");
    assert_eq!(p, q);
    println!("wrote {} ({} bk clauses, {}+/{}-)", dir.display(), q.bk.len(), q.pos.len(), q.neg.len());
    let ev = Evaluator::new(&q.bk, EvalLimits::default());
    let bad = validate_problem(&q, &ev);
    println!("violations: {}", bad.len());
    for m in to_mode_declarations(&q.bias).expect("complete declarations") {
        println!("{}", m);
    }
}
