//! Learns palindrome/1 from ten examples, with or without a `reverse` helper.
//!
//!     cargo run --release --example palindrome -- [both|baseline|...] [--reverse]

use std::time::Duration;

use ilp_bottom::bench::palindrome;
use ilp_bottom::learner::{solve, SearchConfig, SearchMode};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mode: SearchMode = args.iter().find(|a| !a.starts_with("--")).map_or(Ok(SearchMode::Both), |m| m.parse()).unwrap();
    let with_reverse = args.iter().any(|a| a == "--reverse");
    let p = palindrome::problem(with_reverse);
    let cfg = SearchConfig::new(mode).with_timeout(Duration::from_secs(120));
    let r = solve(&p, &cfg).expect("preprocessing");
    match &r.solution {
        Some(h) => {
            for c in h {
                println!("{}", p.bias.evaluation_order(c));
            }
        }
        None => println!("no solution"),
    }
    let s = &r.stats;
    println!(
        "mode={} programs={} variants={} literals={} total={:.2?} (bottom {:.2?}, variants {:.2?}, generate {:.2?}, test {:.2?}, constrain {:.2?})",
        mode, s.programs_generated, s.variants_generated, s.solution_literals, s.time_total,
        s.time_preprocess, s.time_variantgen, s.time_generate, s.time_test, s.time_constrain
    );
}
