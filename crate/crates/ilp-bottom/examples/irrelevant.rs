//! Runtime as irrelevant predicates are added to one trains problem.
//!
//!     cargo run --release --example irrelevant -- [dyadic|monadic|monadic-shared] [seed] [timeout_secs]

use std::time::Duration;

use ilp_bottom::bench::{run_benchmark, BenchOptions, IrrelevantKind, Suite};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: IrrelevantKind = args.first().map_or("dyadic", String::as_str).parse().unwrap();
    let seed = args.get(1).map_or(0, |s| s.parse().unwrap());
    let timeout = Duration::from_secs(args.get(2).map_or(120, |s| s.parse().unwrap()));
    let opts = BenchOptions { timeout, threads: Some(1), ..BenchOptions::default() };
    let suite = Suite::Irrelevant { kind, levels: vec![0, 5, 10, 20], seed };
    for r in run_benchmark(&suite, &opts).expect("irrelevant suite") {
        println!(
            "{:<18} {:<8} solved={} programs={:>7} time={:>10.2?}",
            r.task, r.mode, r.stats.solved, r.stats.programs_generated, r.stats.time_total
        );
    }
}
