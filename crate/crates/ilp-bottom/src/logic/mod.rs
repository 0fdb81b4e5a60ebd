//! Terms, clauses, substitutions, language bias and the judgements built on
//! them.

pub mod bias;
pub mod canonical;
pub mod depth;
pub mod subst;
pub mod symbol;
pub mod term;

pub use bias::{Direction, HeadOutputs, LanguageBias, Limits, PredKey, Violation};
pub use canonical::{canonical_form, renumber};
pub use depth::{max_depth, variable_depths};
pub use subst::{unify, unify_terms, Substitution};
pub use symbol::Sym;
pub use term::{var_name, Atom, Clause, Term};
