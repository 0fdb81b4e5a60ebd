//! Bottom clause variants, with and without variable splitting.
//!
//!     cargo run --example variants -- ['palindrome([a,t])']

use ilp_bottom::bench::palindrome;
use ilp_bottom::bottom::{build_bottom_clause_ie, BottomConfig, Polarity};
use ilp_bottom::eval::{EvalLimits, Evaluator};
use ilp_bottom::io::parse_atom;
use ilp_bottom::variants::{generate_variants, variable_split, VariantConfig};

fn main() {
    let p = palindrome::problem(false);
    let e = parse_atom(&std::env::args().nth(1).unwrap_or_else(|| "palindrome([a,t])".into())).expect("an atom");
    let ev = Evaluator::new(&p.bk, EvalLimits::default());
    let b = build_bottom_clause_ie(&ev, &p.bias, &e, Polarity::Negative, &BottomConfig::for_bias(&p.bias)).expect("bottom clause");
    println!("bottom clause: {}", b.clause);
    let sr = variable_split(&b.clause, &p.bias);
    println!("split:         {}", sr.clause);
    println!("classes:       {:?}", sr.classes);
    for splitting in [false, true] {
        let cfg = VariantConfig { max_vars: p.bias.limits.max_vars, splitting, cap: 100_000 };
        let vs = generate_variants(&b, &p.bias, &cfg).expect("variants");
        println!("splitting={}: {} variants", splitting, vs.variants.len());
        for v in vs.variants.iter().take(5) {
            println!("  {}", v);
        }
    }
}
