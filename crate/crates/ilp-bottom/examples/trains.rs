//! Synthetic trains: baseline against bottom preprocessing.
//!
//!     cargo run --release --example trains -- [count] [seed] [timeout_secs]

use std::time::Duration;

use ilp_bottom::bench::{run_benchmark, BenchOptions, Suite};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let count = *args.first().unwrap_or(&5) as usize;
    let seed = *args.get(1).unwrap_or(&0);
    let timeout = Duration::from_secs(*args.get(2).unwrap_or(&60));
    let opts = BenchOptions { timeout, ..BenchOptions::default() };
    let rs = run_benchmark(&Suite::Trains { count, seed }, &opts).expect("trains suite");
    for r in &rs {
        let sol = r.solution.as_ref().map(|h| h.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default();
        println!(
            "seed {:>3} {:<8} solved={} programs={:>7} time={:>8.2?} {}",
            r.seed, r.mode, r.stats.solved, r.stats.programs_generated, r.stats.time_total, sol
        );
    }
}
