use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use super::symbol::Sym;
use super::term::{Clause, Term};

pub type PredKey = (Sym, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    In,
    Out,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vars: usize,
    pub max_clauses: usize,
    pub max_body: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_vars: 5, max_clauses: 4, max_body: 5 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LanguageBias {
    pub head_decls: BTreeSet<PredKey>,
    pub body_decls: BTreeSet<PredKey>,
    pub types: BTreeMap<PredKey, Vec<Sym>>,
    pub directions: BTreeMap<PredKey, Vec<Direction>>,
    pub limits: Limits,
    pub recursion: bool,
}

/// Why a clause failed the bias check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    HeadNotDeclared(String),
    BodyNotDeclared(String),
    NonVariableArgument(String),
    MissingType(String),
    TypeClash { var: String, first: String, second: String },
    UngroundedInput { literal: String, var: String },
    UnproducedHeadOutput(String),
    TooManyVars(usize),
    BodyTooLong(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HeadNotDeclared(p) => write!(f, "head predicate {} not declared", p),
            Violation::BodyNotDeclared(p) => write!(f, "body predicate {} not declared", p),
            Violation::NonVariableArgument(l) => write!(f, "non-variable argument in {}", l),
            Violation::MissingType(p) => write!(f, "no type declaration for {}", p),
            Violation::TypeClash { var, first, second } => {
                write!(f, "variable {} used with types {} and {}", var, first, second)
            }
            Violation::UngroundedInput { literal, var } => {
                write!(f, "input variable {} of {} is never produced", var, literal)
            }
            Violation::UnproducedHeadOutput(v) => write!(f, "head output variable {} is never produced", v),
            Violation::TooManyVars(n) => write!(f, "{} variables exceed max_vars", n),
            Violation::BodyTooLong(n) => write!(f, "{} body literals exceed max_body", n),
        }
    }
}

/// How strictly head outputs are checked. Bottom clauses and their variants
/// cannot promise that a head output term is reachable within the depth
/// bound, so they use `IgnoreHeadOutputs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeadOutputs {
    Require,
    IgnoreHeadOutputs,
}

impl LanguageBias {
    pub fn is_head(&self, k: &PredKey) -> bool {
        self.head_decls.contains(k)
    }

    /// Body predicates, including head predicates when recursion is on.
    pub fn body_preds(&self) -> Vec<PredKey> {
        let mut out: BTreeSet<PredKey> = self.body_decls.clone();
        if self.recursion {
            out.extend(self.head_decls.iter().copied());
        }
        out.into_iter().collect()
    }

    pub fn is_body(&self, k: &PredKey) -> bool {
        self.body_decls.contains(k) || (self.recursion && self.head_decls.contains(k))
    }

    pub fn dirs(&self, k: &PredKey) -> Option<&[Direction]> {
        self.directions.get(k).map(|v| v.as_slice())
    }

    pub fn type_of(&self, k: &PredKey) -> Option<&[Sym]> {
        self.types.get(k).map(|v| v.as_slice())
    }

    /// Largest arity over head and body declarations.
    pub fn max_arity(&self) -> usize {
        self.head_decls.iter().chain(self.body_decls.iter()).map(|k| k.1).max().unwrap_or(0)
    }

    pub fn check_clause(&self, c: &Clause) -> Vec<Violation> {
        self.check_clause_with(c, HeadOutputs::Require)
    }

    pub fn is_consistent(&self, c: &Clause) -> bool {
        self.check_clause(c).is_empty()
    }

    /// Checks the declaration, variable, type and direction conditions.
    /// Size limits are not part of the clause judgement.
    pub fn check_clause_with(&self, c: &Clause, mode: HeadOutputs) -> Vec<Violation> {
        let mut out = Vec::new();
        let hk = c.head.key();
        if !self.is_head(&hk) {
            out.push(Violation::HeadNotDeclared(format!("{}/{}", hk.0, hk.1)));
        }
        for b in &c.body {
            let k = b.key();
            if !self.is_body(&k) {
                out.push(Violation::BodyNotDeclared(format!("{}/{}", k.0, k.1)));
            }
        }
        let lits: Vec<&super::term::Atom> = std::iter::once(&c.head).chain(c.body.iter()).collect();
        for l in &lits {
            if l.args.iter().any(|a| !a.is_var()) {
                out.push(Violation::NonVariableArgument(l.to_string()));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // types
        let mut seen: HashMap<u32, Sym> = HashMap::new();
        for l in &lits {
            let Some(ts) = self.type_of(&l.key()) else {
                out.push(Violation::MissingType(format!("{}/{}", l.pred, l.arity())));
                continue;
            };
            for (a, t) in l.args.iter().zip(ts.iter()) {
                if let Term::Var(v) = a {
                    match seen.get(v) {
                        Some(prev) if prev != t => out.push(Violation::TypeClash {
                            var: super::term::var_name(*v),
                            first: prev.to_string(),
                            second: t.to_string(),
                        }),
                        Some(_) => {}
                        None => {
                            seen.insert(*v, *t);
                        }
                    }
                }
            }
        }
        // directions, in dependency order
        let Some(hd) = self.dirs(&hk) else {
            return out;
        };
        let mut avail: HashSet<u32> = HashSet::new();
        let mut head_out: Vec<u32> = Vec::new();
        for (a, d) in c.head.args.iter().zip(hd.iter()) {
            if let Term::Var(v) = a {
                match d {
                    Direction::In => {
                        avail.insert(*v);
                    }
                    Direction::Out => head_out.push(*v),
                }
            }
        }
        let head_in = avail.clone();
        let mut produced: HashSet<u32> = HashSet::new();
        let mut fired = vec![false; c.body.len()];
        loop {
            let mut progress = false;
            for (i, b) in c.body.iter().enumerate() {
                if fired[i] {
                    continue;
                }
                let Some(ds) = self.dirs(&b.key()) else { continue };
                let ready = b.args.iter().zip(ds.iter()).all(|(a, d)| match (a, d) {
                    (Term::Var(v), Direction::In) => avail.contains(v),
                    _ => true,
                });
                if ready {
                    fired[i] = true;
                    progress = true;
                    for (a, d) in b.args.iter().zip(ds.iter()) {
                        if let (Term::Var(v), Direction::Out) = (a, d) {
                            avail.insert(*v);
                            produced.insert(*v);
                        }
                    }
                }
            }
            if !progress {
                break;
            }
        }
        for (i, b) in c.body.iter().enumerate() {
            if fired[i] {
                continue;
            }
            match self.dirs(&b.key()) {
                None => out.push(Violation::MissingType(format!("{}/{} direction", b.pred, b.arity()))),
                Some(ds) => {
                    for (a, d) in b.args.iter().zip(ds.iter()) {
                        if let (Term::Var(v), Direction::In) = (a, d) {
                            if !avail.contains(v) {
                                out.push(Violation::UngroundedInput {
                                    literal: b.to_string(),
                                    var: super::term::var_name(*v),
                                });
                            }
                        }
                    }
                }
            }
        }
        if mode == HeadOutputs::Require {
            for v in head_out {
                if !head_in.contains(&v) && !produced.contains(&v) {
                    out.push(Violation::UnproducedHeadOutput(super::term::var_name(v)));
                }
            }
        }
        out
    }

    /// Clause check plus the size limits of the hypothesis space.
    pub fn check_clause_limits(&self, c: &Clause) -> Vec<Violation> {
        let mut out = self.check_clause(c);
        let n = c.vars().len();
        if n > self.limits.max_vars {
            out.push(Violation::TooManyVars(n));
        }
        if c.body.len() > self.limits.max_body {
            out.push(Violation::BodyTooLong(c.body.len()));
        }
        out
    }

    pub fn is_consistent_hypothesis(&self, h: &[Clause]) -> bool {
        h.len() <= self.limits.max_clauses && h.iter().all(|c| self.check_clause_limits(c).is_empty())
    }

    /// Body order that respects directions: a literal is placed once its
    /// inputs are bound; recursive literals are delayed while anything
    /// else is ready. Unschedulable literals keep their relative order at
    /// the end.
    pub fn evaluation_order(&self, c: &Clause) -> Clause {
        let hk = c.head.key();
        let mut avail: HashSet<u32> = HashSet::new();
        if let Some(hd) = self.dirs(&hk) {
            for (a, d) in c.head.args.iter().zip(hd.iter()) {
                if let (Term::Var(v), Direction::In) = (a, d) {
                    avail.insert(*v);
                }
            }
        } else {
            return c.clone();
        }
        let mut left: Vec<usize> = (0..c.body.len()).collect();
        let mut order = Vec::with_capacity(c.body.len());
        while !left.is_empty() {
            let ready = |i: usize, avail: &HashSet<u32>| {
                let b = &c.body[i];
                match self.dirs(&b.key()) {
                    Some(ds) => b.args.iter().zip(ds.iter()).all(|(a, d)| match (a, d) {
                        (Term::Var(v), Direction::In) => avail.contains(v),
                        _ => true,
                    }),
                    None => true,
                }
            };
            let pick = left
                .iter()
                .position(|&i| c.body[i].key() != hk && ready(i, &avail))
                .or_else(|| left.iter().position(|&i| ready(i, &avail)));
            let idx = match pick {
                Some(p) => left.remove(p),
                None => left.remove(0),
            };
            for v in c.body[idx].vars() {
                avail.insert(v);
            }
            order.push(c.body[idx].clone());
        }
        Clause::new(c.head.clone(), order)
    }

    /// Variable types implied by the declarations, first occurrence wins.
    pub fn var_types(&self, c: &Clause) -> HashMap<u32, Sym> {
        let mut out = HashMap::new();
        for l in std::iter::once(&c.head).chain(c.body.iter()) {
            if let Some(ts) = self.type_of(&l.key()) {
                for (a, t) in l.args.iter().zip(ts.iter()) {
                    if let Term::Var(v) = a {
                        out.entry(*v).or_insert(*t);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::term::Atom;

    pub(crate) fn palindrome_bias() -> LanguageBias {
        let mut b = LanguageBias::default();
        let k = |p: &str, n| (Sym::new(p), n);
        b.head_decls.insert(k("palindrome", 1));
        for (p, n) in [("first", 2), ("last", 2), ("middle", 2), ("empty", 1)] {
            b.body_decls.insert(k(p, n));
        }
        let t = |xs: &[&str]| xs.iter().map(|s| Sym::new(s)).collect::<Vec<_>>();
        b.types.insert(k("palindrome", 1), t(&["list"]));
        b.types.insert(k("first", 2), t(&["list", "element"]));
        b.types.insert(k("last", 2), t(&["list", "element"]));
        b.types.insert(k("middle", 2), t(&["list", "list"]));
        b.types.insert(k("empty", 1), t(&["list"]));
        use Direction::*;
        b.directions.insert(k("palindrome", 1), vec![In]);
        b.directions.insert(k("first", 2), vec![In, Out]);
        b.directions.insert(k("last", 2), vec![In, Out]);
        b.directions.insert(k("middle", 2), vec![In, Out]);
        b.directions.insert(k("empty", 1), vec![Out]);
        b
    }

    fn v(i: u32) -> Term {
        Term::Var(i)
    }

    fn pal(body: Vec<Atom>) -> Clause {
        Clause::new(Atom::new("palindrome", vec![v(0)]), body)
    }

    #[test]
    fn consistent_examples() {
        let b = palindrome_bias();
        let c = pal(vec![Atom::new("first", vec![v(0), v(1)]), Atom::new("last", vec![v(0), v(1)])]);
        assert!(b.is_consistent(&c));
        let c = pal(vec![
            Atom::new("last", vec![v(0), v(1)]),
            Atom::new("middle", vec![v(0), v(2)]),
            Atom::new("empty", vec![v(2)]),
        ]);
        assert!(b.is_consistent(&c));
    }

    #[test]
    fn type_clash() {
        let b = palindrome_bias();
        let c = pal(vec![Atom::new("first", vec![v(0), v(1)]), Atom::new("empty", vec![v(1)])]);
        let vs = b.check_clause(&c);
        assert!(vs.iter().any(|x| matches!(x, Violation::TypeClash { .. })), "{:?}", vs);
    }

    #[test]
    fn ungrounded_input() {
        let b = palindrome_bias();
        let c = pal(vec![Atom::new("last", vec![v(1), v(0)]), Atom::new("first", vec![v(1), v(0)])]);
        assert!(b
            .check_clause(&c)
            .iter()
            .any(|x| matches!(x, Violation::UngroundedInput { .. })));
    }

    #[test]
    fn undeclared_predicates() {
        let b = palindrome_bias();
        let c = pal(vec![Atom::new("length", vec![v(0), v(1)]), Atom::new("one", vec![v(1)])]);
        assert!(!b.is_consistent(&c));
        let c = Clause::new(Atom::new("empty", vec![v(0)]), vec![Atom::new("middle", vec![v(0), v(1)])]);
        assert!(matches!(b.check_clause(&c)[0], Violation::HeadNotDeclared(_)));
    }

    #[test]
    fn head_only_clause() {
        let b = palindrome_bias();
        assert!(b.is_consistent(&pal(vec![])));
    }

    #[test]
    fn hypothesis_limits() {
        let b = palindrome_bias();
        let h = vec![
            pal(vec![Atom::new("empty", vec![v(0)])]),
            pal(vec![
                Atom::new("first", vec![v(0), v(2)]),
                Atom::new("middle", vec![v(0), v(1)]),
                Atom::new("last", vec![v(0), v(2)]),
            ]),
        ];
        assert!(b.is_consistent_hypothesis(&h));
        assert!(b.is_consistent_hypothesis(&[]));
        let many = vec![pal(vec![Atom::new("empty", vec![v(0)])]); b.limits.max_clauses + 1];
        assert!(!b.is_consistent_hypothesis(&many));
    }
}
