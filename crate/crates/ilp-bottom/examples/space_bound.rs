//! Size of the hypothesis space of the bundled biases.
//!
//!     cargo run --example space_bound

use ilp_bottom::bench::lists::ListTask;
use ilp_bottom::bench::{hypothesis_space_bound, palindrome, trains};
use ilp_bottom::io::parse_bias;

fn main() {
    let mut biases = vec![
        ("palindrome".to_string(), palindrome::BIAS.to_string()),
        ("trains".to_string(), trains::trains_bias_text()),
    ];
    biases.extend(ListTask::ALL.iter().map(|t| (t.name().to_string(), t.bias_text())));
    for (name, text) in biases {
        let b = parse_bias(&text).expect("bundled bias parses");
        let n = hypothesis_space_bound(&b);
        println!("{:<11} {:>4} digits  {}", name, n.to_string().len(), n);
    }
}
