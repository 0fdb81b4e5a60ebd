//! The list tasks under every mode, with held-out accuracy.
//!
//!     cargo run --release --example lists -- [task,...|all] [count] [timeout_secs] [mode,...]

use std::time::Duration;

use ilp_bottom::bench::lists::ListTask;
use ilp_bottom::bench::{run_benchmark, BenchOptions, Suite};
use ilp_bottom::learner::SearchMode;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tasks: Vec<ListTask> = match args.first().map(String::as_str) {
        None | Some("all") => ListTask::ALL.to_vec(),
        Some(ts) => ts.split(',').map(|t| t.parse().unwrap()).collect(),
    };
    let count = args.get(1).map_or(1, |s| s.parse().unwrap());
    let timeout = Duration::from_secs(args.get(2).map_or(120, |s| s.parse().unwrap()));
    let modes: Vec<SearchMode> = match args.get(3) {
        Some(ms) => ms.split(',').map(|m| m.parse().unwrap()).collect(),
        None => SearchMode::ALL.to_vec(),
    };
    let opts = BenchOptions { modes, timeout, ..BenchOptions::default() };
    for r in run_benchmark(&Suite::Lists { tasks, count, seed: 0 }, &opts).expect("list suite") {
        let sol = r.solution.as_ref().map(|h| h.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default();
        println!(
            "{:<9} {:>2} {:<9} solved={} programs={:>6} variants={:>6} time={:>9.2?} (generate {:.2?}, test {:.2?}) acc={:.3} non_optimal={} {}",
            r.task,
            r.seed,
            r.mode,
            r.stats.solved,
            r.stats.programs_generated,
            r.stats.variants_generated,
            r.stats.time_total,
            r.stats.time_generate,
            r.stats.time_test,
            r.accuracy.unwrap_or(0.0),
            r.non_optimal.map_or("-".to_string(), |b| b.to_string()),
            sol
        );
    }
}
