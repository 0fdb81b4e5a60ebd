//! Inductive logic programming over definite programs: a size-ordered
//! generate-test-constrain learner whose search space is pruned up front by
//! constraints derived from the bottom clauses of the training examples.

pub mod bench;
pub mod bottom;
pub mod eval;
pub mod io;
pub mod learner;
pub mod logic;
pub mod subsume;
pub mod variants;
