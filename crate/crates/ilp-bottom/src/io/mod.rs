//! Reading and writing problem files: language bias, background knowledge,
//! examples, mode declarations and run statistics.

mod bias;
mod bk;
mod examples;
mod modes;
pub mod parse;
mod problem;
mod stats;

pub use bias::{parse_bias, render_bias};
pub use bk::{parse_bk, render_bk};
pub use examples::{parse_examples, render_examples};
pub use modes::{from_mode_declarations, to_mode_declarations, ModeDeclaration, ModeKind, Recall};
pub use parse::{parse_atom, parse_clause, parse_clauses, parse_term};
pub use problem::{validate_problem, ProblemInput, ProblemViolation};
pub use stats::{read_stats_csv, write_stats_csv, StatsRow};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {msg}")]
    NonDefinite { line: usize, msg: String },
    #[error("bias: {0}")]
    Bias(String),
    #[error("examples: {0}")]
    Example(String),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
