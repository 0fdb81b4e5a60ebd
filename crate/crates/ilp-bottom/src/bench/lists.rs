//! The nine list tasks: shared list background knowledge, per-task bias,
//! and example samplers labelled by plain Rust reference implementations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BenchError;
use crate::eval::{EvalLimits, Evaluator, Verdict};
use crate::io::{parse_bias, parse_bk, ProblemInput};
use crate::logic::{Atom, Clause, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ListTask {
    Dropk,
    Droplast,
    Evens,
    Finddup,
    Last,
    Len,
    Member,
    Sorted,
    Sumlist,
}

impl ListTask {
    pub const ALL: [ListTask; 9] = [
        ListTask::Dropk,
        ListTask::Droplast,
        ListTask::Evens,
        ListTask::Finddup,
        ListTask::Last,
        ListTask::Len,
        ListTask::Member,
        ListTask::Sorted,
        ListTask::Sumlist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ListTask::Dropk => "dropk",
            ListTask::Droplast => "droplast",
            ListTask::Evens => "evens",
            ListTask::Finddup => "finddup",
            ListTask::Last => "last",
            ListTask::Len => "len",
            ListTask::Member => "member",
            ListTask::Sorted => "sorted",
            ListTask::Sumlist => "sumlist",
        }
    }

    fn head_decl(self) -> &'static str {
        match self {
            ListTask::Dropk => "head_pred(f,3).\ntype(f,(list,element,list)).\ndirection(f,(in,in,out)).\n",
            ListTask::Droplast => "head_pred(f,2).\ntype(f,(list,list)).\ndirection(f,(in,out)).\n",
            ListTask::Evens | ListTask::Sorted => "head_pred(f,1).\ntype(f,(list,)).\ndirection(f,(in,)).\n",
            ListTask::Finddup | ListTask::Last | ListTask::Member => {
                "head_pred(f,2).\ntype(f,(list,element)).\ndirection(f,(in,out)).\n"
            }
            ListTask::Len | ListTask::Sumlist => "head_pred(f,2).\ntype(f,(list,element)).\ndirection(f,(in,out)).\n",
        }
    }

    fn extra_decl(self) -> &'static str {
        match self {
            ListTask::Droplast => "body_pred(cons,3).\ntype(cons,(element,list,list)).\ndirection(cons,(in,in,out)).\n",
            ListTask::Finddup => "body_pred(element,2).\ntype(element,(list,element)).\ndirection(element,(in,out)).\n",
            ListTask::Len => "body_pred(increment,2).\ntype(increment,(element,element)).\ndirection(increment,(in,out)).\n",
            ListTask::Sumlist => "body_pred(sum,3).\ntype(sum,(element,element,element)).\ndirection(sum,(in,in,out)).\n",
            _ => "",
        }
    }

    pub fn bias_text(self) -> String {
        format!("{}{}{}max_vars(5).\nmax_clauses(2).\nmax_body(5).\nenable_recursion.\n", self.head_decl(), LIST_BIAS, self.extra_decl())
    }

    /// The reference relation.
    pub fn holds(self, xs: &[i64], args: &[Arg]) -> bool {
        match (self, args) {
            (ListTask::Dropk, [Arg::Int(k), Arg::List(ys)]) => *k >= 0 && (*k as usize) <= xs.len() && xs[*k as usize..] == ys[..],
            (ListTask::Droplast, [Arg::List(ys)]) => !xs.is_empty() && xs[..xs.len() - 1] == ys[..],
            (ListTask::Evens, []) => xs.iter().all(|x| x % 2 == 0),
            (ListTask::Finddup, [Arg::Int(y)]) => xs.iter().filter(|x| *x == y).count() >= 2,
            (ListTask::Last, [Arg::Int(y)]) => xs.last() == Some(y),
            (ListTask::Len, [Arg::Int(n)]) => xs.len() as i64 == *n,
            (ListTask::Member, [Arg::Int(y)]) => xs.contains(y),
            (ListTask::Sorted, []) => xs.windows(2).all(|w| w[0] <= w[1]),
            (ListTask::Sumlist, [Arg::Int(s)]) => xs.iter().sum::<i64>() == *s,
            _ => false,
        }
    }

    /// The textbook two-clause program, used as a sanity check.
    pub fn reference_program(self) -> &'static str {
        match self {
            ListTask::Dropk => "f(A,B,C) :- one(B), tail(A,C).\nf(A,B,C) :- tail(A,D), decrement(B,E), f(D,E,C).\n",
            ListTask::Droplast => "f(A,B) :- tail(A,B), empty(B).\nf(A,B) :- head(A,C), tail(A,D), f(D,E), cons(C,E,B).\n",
            ListTask::Evens => "f(A) :- empty(A).\nf(A) :- head(A,B), even(B), tail(A,C), f(C).\n",
            ListTask::Finddup => "f(A,B) :- head(A,B), tail(A,C), element(C,B).\nf(A,B) :- tail(A,C), f(C,B).\n",
            ListTask::Last => "f(A,B) :- tail(A,C), empty(C), head(A,B).\nf(A,B) :- tail(A,C), f(C,B).\n",
            ListTask::Len => "f(A,B) :- empty(A), zero(B).\nf(A,B) :- tail(A,C), f(C,D), increment(D,B).\n",
            ListTask::Member => "f(A,B) :- head(A,B).\nf(A,B) :- tail(A,C), f(C,B).\n",
            ListTask::Sorted => "f(A) :- tail(A,B), empty(B).\nf(A) :- head(A,B), tail(A,C), head(C,D), geq(D,B), f(C).\n",
            ListTask::Sumlist => "f(A,B) :- empty(A), zero(B).\nf(A,B) :- head(A,C), tail(A,D), f(D,E), sum(C,E,B).\n",
        }
    }
}

impl fmt::Display for ListTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ListTask {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ListTask::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown list task '{}'", s))
    }
}

pub const LIST_BIAS: &str = "\
body_pred(head,2).
body_pred(tail,2).
body_pred(geq,2).
body_pred(empty,1).
body_pred(even,1).
body_pred(odd,1).
body_pred(one,1).
body_pred(zero,1).
body_pred(decrement,2).
type(head,(list,element)).
type(tail,(list,list)).
type(geq,(element,element)).
type(empty,(list,)).
type(even,(element,)).
type(odd,(element,)).
type(one,(element,)).
type(zero,(element,)).
type(decrement,(element,element)).
direction(head,(in,out)).
direction(tail,(in,out)).
direction(geq,(in,in)).
direction(empty,(in,)).
direction(even,(in,)).
direction(odd,(in,)).
direction(one,(out,)).
direction(zero,(out,)).
direction(decrement,(in,out)).
";

/// List helpers; arithmetic (`geq`, `zero`, `one`, `decrement`,
/// `increment`, `sum`) is built into the evaluator.
pub const LIST_BK: &str = "\
head([H|_],H).
tail([_|T],T).
empty([]).
cons(H,T,[H|T]).
element([X|_],X).
element([_|T],X) :- element(T,X).
";

fn parity_facts() -> String {
    let mut s = String::new();
    for i in 0..100 {
        s.push_str(&format!("{}({}).\n", if i % 2 == 0 { "even" } else { "odd" }, i));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Int(i64),
    List(Vec<i64>),
}

impl Arg {
    fn term(&self) -> Term {
        match self {
            Arg::Int(i) => Term::Int(*i),
            Arg::List(xs) => Term::int_list(xs),
        }
    }
}

pub fn example_atom(xs: &[i64], args: &[Arg]) -> Atom {
    let mut a = vec![Term::int_list(xs)];
    a.extend(args.iter().map(Arg::term));
    Atom::new("f", a)
}

fn random_list(rng: &mut ChaCha8Rng, min_len: usize) -> Vec<i64> {
    let n = rng.gen_range(min_len..=10);
    (0..n).map(|_| rng.gen_range(0..10)).collect()
}

/// One labelled example; `want` selects the label.
fn sample(task: ListTask, rng: &mut ChaCha8Rng, want: bool) -> (Vec<i64>, Vec<Arg>) {
    loop {
        let (xs, args) = match task {
            ListTask::Dropk => {
                let xs = random_list(rng, 1);
                let k = rng.gen_range(1..=xs.len()) as i64;
                // negatives drop the wrong number of elements
                let ys = if want { xs[k as usize..].to_vec() } else { xs[rng.gen_range(0..=xs.len())..].to_vec() };
                (xs, vec![Arg::Int(k), Arg::List(ys)])
            }
            ListTask::Droplast => {
                let xs = random_list(rng, 1);
                let ys = if want {
                    xs[..xs.len() - 1].to_vec()
                } else if rng.gen_bool(0.5) {
                    xs[1..].to_vec()
                } else {
                    random_list(rng, 0)
                };
                (xs, vec![Arg::List(ys)])
            }
            ListTask::Evens => {
                let mut xs = random_list(rng, 0);
                if want {
                    xs.iter_mut().for_each(|x| *x -= *x % 2);
                }
                (xs, vec![])
            }
            ListTask::Finddup => {
                let mut xs = random_list(rng, 2);
                if want {
                    let i = rng.gen_range(0..xs.len());
                    let j = rng.gen_range(0..xs.len());
                    if i != j {
                        xs[j] = xs[i];
                    }
                }
                let y = if want || rng.gen_bool(0.5) { *xs.choose(rng).expect("nonempty") } else { rng.gen_range(0..10) };
                (xs, vec![Arg::Int(y)])
            }
            ListTask::Last => {
                let xs = random_list(rng, 1);
                let y = if want { *xs.last().expect("nonempty") } else { *xs.choose(rng).expect("nonempty") };
                (xs, vec![Arg::Int(y)])
            }
            ListTask::Len => {
                let xs = random_list(rng, 0);
                let n = if want { xs.len() as i64 } else { rng.gen_range(0..=11) };
                (xs, vec![Arg::Int(n)])
            }
            ListTask::Member => {
                let xs = random_list(rng, 1);
                let y = if want { *xs.choose(rng).expect("nonempty") } else { rng.gen_range(0..10) };
                (xs, vec![Arg::Int(y)])
            }
            ListTask::Sorted => {
                let mut xs = random_list(rng, 1);
                if want {
                    xs.sort();
                }
                (xs, vec![])
            }
            ListTask::Sumlist => {
                let xs = random_list(rng, 0);
                let s: i64 = xs.iter().sum();
                let y = if want { s } else { s + rng.gen_range(-5..=5) };
                (xs, vec![Arg::Int(y.max(0))])
            }
        };
        if task.holds(&xs, &args) == want {
            return (xs, args);
        }
    }
}

/// `n` distinct examples of each label.
pub fn sample_examples(task: ListTask, seed: u64, n_pos: usize, n_neg: usize) -> (BTreeSet<Atom>, BTreeSet<Atom>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000 ^ task as u64);
    let draw = |want: bool, n: usize, rng: &mut ChaCha8Rng| {
        let mut out = BTreeSet::new();
        let mut tries = 0;
        while out.len() < n && tries < n * 100 {
            let (xs, args) = sample(task, rng, want);
            out.insert(example_atom(&xs, &args));
            tries += 1;
        }
        out
    };
    let pos = draw(true, n_pos, &mut rng);
    let neg = draw(false, n_neg, &mut rng);
    (pos, neg)
}

pub fn list_problem(task: ListTask, seed: u64, n_pos: usize, n_neg: usize) -> Result<ProblemInput, BenchError> {
    let bias = parse_bias(&task.bias_text()).map_err(|e| BenchError::Io(e.to_string()))?;
    let bk = parse_bk(&format!("{}{}", LIST_BK, parity_facts())).map_err(|e| BenchError::Io(e.to_string()))?;
    let (pos, neg) = sample_examples(task, seed, n_pos, n_neg);
    Ok(ProblemInput { bk, bias, pos, neg })
}

/// Fraction of freshly sampled held-out examples that `h` classifies
/// correctly, with `n_each` examples of each label.
pub fn held_out_accuracy(task: ListTask, p: &ProblemInput, h: &[Clause], seed: u64, n_each: usize, limits: EvalLimits) -> f64 {
    let (pos, neg) = sample_examples(task, seed.wrapping_add(0x0ddba11), n_each, n_each);
    let ev = Evaluator::new(&p.bk, limits);
    let ordered: Vec<Clause> = h.iter().map(|c| p.bias.evaluation_order(c)).collect();
    let right = pos.iter().filter(|e| ev.covers(&ordered, e) == Verdict::Proven).count()
        + neg.iter().filter(|e| ev.covers(&ordered, e) != Verdict::Proven).count();
    right as f64 / (pos.len() + neg.len()).max(1) as f64
}
