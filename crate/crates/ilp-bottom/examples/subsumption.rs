//! Theta-subsumption between clauses and between theories.
//!
//!     cargo run --example subsumption -- 'p(X) :- q(X,Y).' 'p(a) :- q(a,b), r(b).'

use ilp_bottom::io::parse_clause;
use ilp_bottom::subsume::{theory_subsumes, theta_subsumes};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match args.as_slice() {
        [a, b] => (a.clone(), b.clone()),
        _ => ("p(X) :- q(X,Y).".to_string(), "p(a) :- q(a,b), r(b).".to_string()),
    };
    let c1 = parse_clause(&a).expect("first clause");
    let c2 = parse_clause(&b).expect("second clause");
    for (x, y) in [(&c1, &c2), (&c2, &c1)] {
        let v = theta_subsumes(x, y).expect("within budget");
        match v.witness {
            Some(w) if v.holds => println!("{}  subsumes  {}   via {:?}", x, y, w),
            _ => println!("{}  does not subsume  {}", x, y),
        }
    }
    let t1 = [c1.clone()];
    let t2 = [c2.clone(), c1];
    println!("theory {{c1}} subsumes {{c2, c1}}: {}", theory_subsumes(&t1, &t2).expect("within budget"));
}
