use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use ilp_bottom::bench::lists::ListTask;
use ilp_bottom::bench::{hypothesis_space_bound, run_benchmark, BenchOptions, BenchResult, IrrelevantKind, Suite};
use ilp_bottom::bottom::{build_bottom_clause_ie, BottomConfig, Polarity};
use ilp_bottom::eval::{EvalLimits, Evaluator};
use ilp_bottom::io::{parse_bias, write_stats_csv, ProblemInput, StatsRow};
use ilp_bottom::learner::{solve, SearchConfig, SearchMode};
use ilp_bottom::logic::max_depth;
use ilp_bottom::variants::{generate_variants, VariantConfig};

#[derive(Parser)]
#[command(name = "ilpb", version, about = "Learn logic programs with bottom clause preprocessing")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Learn a program for the problem in DIR (bias.pl, bk.pl, exs.pl).
    Solve(SolveArgs),
    /// Print the bottom clause of every example.
    Bottom {
        dir: PathBuf,
        #[arg(long, env = "ILPB_EVAL_TIMEOUT_MS", default_value_t = 1)]
        eval_timeout_ms: u64,
    },
    /// Print bottom clause variant counts per example.
    Variants {
        dir: PathBuf,
        #[arg(long, env = "ILPB_SPLIT", overrides_with = "no_split")]
        split: bool,
        #[arg(long)]
        no_split: bool,
        /// Print every variant.
        #[arg(long)]
        list: bool,
    },
    #[command(subcommand)]
    Bench(BenchCmd),
    /// Upper bound on the number of hypotheses a bias admits.
    Space { bias: PathBuf },
}

#[derive(Args)]
struct SolveArgs {
    dir: PathBuf,
    #[arg(long, env = "ILPB_MODE", default_value = "both")]
    mode: SearchMode,
    /// Overall timeout in seconds.
    #[arg(long, env = "ILPB_TIMEOUT", default_value_t = 300)]
    timeout: u64,
    /// Per-query timeout in milliseconds.
    #[arg(long, env = "ILPB_EVAL_TIMEOUT_MS", default_value_t = 1)]
    eval_timeout: u64,
    #[arg(long, env = "ILPB_MAX_VARS")]
    max_vars: Option<usize>,
    #[arg(long, env = "ILPB_MAX_CLAUSES")]
    max_clauses: Option<usize>,
    #[arg(long, env = "ILPB_MAX_BODY")]
    max_body: Option<usize>,
    #[arg(long, overrides_with = "no_split")]
    split: bool,
    #[arg(long, overrides_with = "split")]
    no_split: bool,
    #[arg(long, env = "ILPB_SEED", default_value_t = 0)]
    seed: u64,
    /// Append a stats row to this CSV file.
    #[arg(long, env = "ILPB_STATS")]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    #[arg(long, env = "ILPB_MODES", value_delimiter = ',', default_value = "baseline,both")]
    modes: Vec<SearchMode>,
    #[arg(long, env = "ILPB_TIMEOUT", default_value_t = 300)]
    timeout: u64,
    #[arg(long, env = "ILPB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "ILPB_CSV")]
    csv: Option<PathBuf>,
    /// Worker threads; 1 keeps timings comparable.
    #[arg(long, env = "ILPB_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Random trains problems.
    Trains {
        #[arg(long, env = "ILPB_COUNT", default_value_t = 20)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The list tasks.
    Lists {
        #[arg(long, env = "ILPB_TASKS", value_delimiter = ',', default_value = "dropk,droplast,evens,finddup,last,len,member,sorted,sumlist")]
        tasks: Vec<ListTask>,
        #[arg(long, env = "ILPB_COUNT", default_value_t = 1)]
        count: usize,
        /// Held-out examples of each label.
        #[arg(long, env = "ILPB_HELD_OUT", default_value_t = 200)]
        held_out: usize,
        #[command(flatten)]
        common: Common,
    },
    /// One trains problem with growing amounts of irrelevant background.
    Irrelevant {
        #[arg(long, env = "ILPB_KIND", default_value = "dyadic")]
        kind: IrrelevantKind,
        #[arg(long, env = "ILPB_MAX_I", default_value_t = 20)]
        max_i: usize,
        #[arg(long, env = "ILPB_STEP", default_value_t = 5)]
        step: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn load(dir: &PathBuf) -> Result<ProblemInput, String> {
    ProblemInput::load(dir).map_err(|e| e.to_string())
}

fn run_solve(a: SolveArgs) -> Result<bool, String> {
    let mut p = load(&a.dir)?;
    let l = &mut p.bias.limits;
    l.max_vars = a.max_vars.unwrap_or(l.max_vars);
    l.max_clauses = a.max_clauses.unwrap_or(l.max_clauses);
    l.max_body = a.max_body.unwrap_or(l.max_body);
    let mut cfg = SearchConfig::new(a.mode).with_timeout(Duration::from_secs(a.timeout));
    cfg.limits.per_query_timeout = Duration::from_millis(a.eval_timeout);
    cfg.seed = a.seed;
    cfg.split = if a.split { Some(true) } else if a.no_split { Some(false) } else { None };
    let r = solve(&p, &cfg).map_err(|e| e.to_string())?;
    match &r.solution {
        Some(h) => h.iter().for_each(|c| println!("{}", p.bias.evaluation_order(c))),
        None => println!("% no solution"),
    }
    if let Some(path) = a.stats {
        let res = BenchResult {
            task: a.dir.display().to_string(),
            seed: a.seed,
            mode: a.mode,
            stats: r.stats.clone(),
            solution: r.solution.clone(),
            non_optimal: None,
            accuracy: None,
            error: None,
        };
        write_csv(&path, &[res.row()])?;
    }
    Ok(r.solution.is_some())
}

fn write_csv(path: &PathBuf, rows: &[StatsRow]) -> Result<(), String> {
    let f = File::create(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    write_stats_csv(rows, f).map_err(|e| e.to_string())?;
    Ok(())
}

fn run_bottom(dir: &PathBuf, eval_timeout_ms: u64) -> Result<(), String> {
    let p = load(dir)?;
    let limits = EvalLimits { per_query_timeout: Duration::from_millis(eval_timeout_ms), ..EvalLimits::default() };
    let ev = Evaluator::new(&p.bk, limits);
    let cfg = BottomConfig::for_bias(&p.bias);
    let jobs = p.pos.iter().map(|e| (e, Polarity::Positive)).chain(p.neg.iter().map(|e| (e, Polarity::Negative)));
    for (e, pol) in jobs {
        let b = build_bottom_clause_ie(&ev, &p.bias, e, pol, &cfg).map_err(|err| err.to_string())?;
        println!("% {} {} depth={} max_var_depth={} truncated={}", pol, e, b.depth_used, max_depth(&b.clause), b.truncated);
        println!("{}", b.clause);
    }
    Ok(())
}

fn run_variants(dir: &PathBuf, splitting: bool, list: bool) -> Result<(), String> {
    let p = load(dir)?;
    let ev = Evaluator::new(&p.bk, EvalLimits::default());
    let cfg = BottomConfig::for_bias(&p.bias);
    let vc = VariantConfig { max_vars: p.bias.limits.max_vars, splitting, cap: 100_000 };
    let jobs = p.pos.iter().map(|e| (e, Polarity::Positive)).chain(p.neg.iter().map(|e| (e, Polarity::Negative)));
    for (e, pol) in jobs {
        let b = build_bottom_clause_ie(&ev, &p.bias, e, pol, &cfg).map_err(|err| err.to_string())?;
        let vs = generate_variants(&b, &p.bias, &vc).map_err(|err| err.to_string())?;
        println!("{} {} {}", pol, e, vs.variants.len());
        if list {
            vs.variants.iter().for_each(|v| println!("  {}", v));
        }
    }
    Ok(())
}

fn run_bench(cmd: BenchCmd) -> Result<(), String> {
    let (suite, common, held_out) = match cmd {
        BenchCmd::Trains { count, common } => (Suite::Trains { count, seed: common.seed }, common, 200),
        BenchCmd::Lists { tasks, count, held_out, common } => (Suite::Lists { tasks, count, seed: common.seed }, common, held_out),
        BenchCmd::Irrelevant { kind, max_i, step, common } => {
            let levels = (0..=max_i).step_by(step.max(1)).collect();
            (Suite::Irrelevant { kind, levels, seed: common.seed }, common, 200)
        }
    };
    let opts = BenchOptions {
        modes: common.modes,
        timeout: Duration::from_secs(common.timeout),
        limits: EvalLimits::default(),
        held_out,
        threads: common.threads,
    };
    let results = run_benchmark(&suite, &opts).map_err(|e| e.to_string())?;
    let rows: Vec<StatsRow> = results.iter().map(BenchResult::row).collect();
    for r in &rows {
        println!(
            "{:<18} {:>4} {:<9} solved={:<5} programs={:>8} variants={:>7} literals={:>2} time={:.3}s",
            r.task, r.seed, r.mode, r.solved, r.programs_generated, r.variants_generated, r.solution_literals, r.time_total
        );
    }
    for r in results.iter().filter(|r| r.error.is_some()) {
        eprintln!("{} seed {} {}: {}", r.task, r.seed, r.mode, r.error.as_deref().unwrap_or(""));
    }
    match &common.csv {
        Some(path) => write_csv(path, &rows),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("ILPB_LOG", "warn")).init();
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Solve(a) => run_solve(a).map(|found| if found { 0 } else { 1 }),
        Cmd::Bottom { dir, eval_timeout_ms } => run_bottom(&dir, eval_timeout_ms).map(|_| 0),
        Cmd::Variants { dir, split, no_split, list } => run_variants(&dir, split && !no_split, list).map(|_| 0),
        Cmd::Bench(b) => run_bench(b).map(|_| 0),
        Cmd::Space { bias } => std::fs::read_to_string(&bias)
            .map_err(|e| format!("{}: {}", bias.display(), e))
            .and_then(|t| parse_bias(&t).map_err(|e| e.to_string()))
            .map(|b| {
                println!("{}", hypothesis_space_bound(&b));
                0
            }),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
