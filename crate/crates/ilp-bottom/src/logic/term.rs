use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::symbol::Sym;

/// Functor used for list cells `[H|T]`.
pub fn list_functor() -> Sym {
    Sym::new(".")
}

/// The empty list `[]`.
pub fn nil() -> Sym {
    Sym::new("[]")
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    Const(Sym),
    Int(i64),
    Compound(Sym, Arc<[Term]>),
}

impl Term {
    pub fn constant(name: &str) -> Term {
        Term::Const(Sym::new(name))
    }

    pub fn compound(functor: &str, args: Vec<Term>) -> Term {
        Term::Compound(Sym::new(functor), args.into())
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::Compound(list_functor(), vec![head, tail].into())
    }

    /// Builds a proper list, or a partial list when `tail` is given.
    pub fn list(items: Vec<Term>, tail: Option<Term>) -> Term {
        let mut acc = tail.unwrap_or(Term::Const(nil()));
        for t in items.into_iter().rev() {
            acc = Term::cons(t, acc);
        }
        acc
    }

    pub fn int_list(items: &[i64]) -> Term {
        Term::list(items.iter().map(|&i| Term::Int(i)).collect(), None)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) | Term::Int(_) => true,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }

    pub fn nesting_depth(&self) -> usize {
        match self {
            Term::Compound(_, args) => 1 + args.iter().map(Term::nesting_depth).max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn occurs(&self, var: u32) -> bool {
        match self {
            Term::Var(v) => *v == var,
            Term::Compound(_, args) => args.iter().any(|a| a.occurs(var)),
            _ => false,
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::Compound(name, args) => {
                Term::Compound(*name, args.iter().map(|a| a.map_vars(f)).collect())
            }
            other => other.clone(),
        }
    }

    /// Elements of a proper list, `None` for anything else.
    pub fn as_list(&self) -> Option<Vec<&Term>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::Const(s) if *s == nil() => return Some(out),
                Term::Compound(f, args) if *f == list_functor() && args.len() == 2 => {
                    out.push(&args[0]);
                    cur = &args[1];
                }
                _ => return None,
            }
        }
    }
}

/// Printable name of variable index `i`: A..Z, then A1, B1, ...
pub fn var_name(i: u32) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{}{}", letter, i / 26)
    }
}

fn fmt_symbol(s: Sym, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(s.as_str())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(&var_name(*v)),
            Term::Const(s) => fmt_symbol(*s, f),
            Term::Int(i) => write!(f, "{}", i),
            Term::Compound(name, args) if *name == list_functor() && args.len() == 2 => {
                f.write_str("[")?;
                write!(f, "{}", args[0])?;
                let mut cur = &args[1];
                loop {
                    match cur {
                        Term::Const(s) if *s == nil() => break,
                        Term::Compound(n, a) if *n == list_functor() && a.len() == 2 => {
                            write!(f, ",{}", a[0])?;
                            cur = &a[1];
                        }
                        other => {
                            write!(f, "|{}", other)?;
                            break;
                        }
                    }
                }
                f.write_str("]")
            }
            Term::Compound(name, args) => {
                fmt_symbol(*name, f)?;
                f.write_str("(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", a)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: Sym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Atom {
        Atom { pred: Sym::new(pred), args }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn key(&self) -> (Sym, usize) {
        (self.pred, self.args.len())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.args.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> Term) -> Atom {
        Atom { pred: self.pred, args: self.args.iter().map(|a| a.map_vars(f)).collect() }
    }
}

impl TryFrom<&Term> for Atom {
    type Error = ();

    /// Reads a constant or compound term as an atom.
    fn try_from(t: &Term) -> Result<Atom, ()> {
        match t {
            Term::Const(s) => Ok(Atom { pred: *s, args: Vec::new() }),
            Term::Compound(f, args) => Ok(Atom { pred: *f, args: args.to_vec() }),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_symbol(self.pred, f)?;
        if self.args.is_empty() {
            return Ok(());
        }
        f.write_str("(")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", a)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A definite clause. Body order is kept as written (it matters to the
/// evaluator) but equality up to reordering is available via `same_as`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn new(head: Atom, body: Vec<Atom>) -> Clause {
        Clause { head, body }
    }

    pub fn fact(head: Atom) -> Clause {
        Clause { head, body: Vec::new() }
    }

    pub fn len(&self) -> usize {
        1 + self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distinct variables in order of first occurrence, head first.
    pub fn vars(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.head.args.iter().for_each(|a| a.collect_vars(&mut out));
        for b in &self.body {
            b.args.iter().for_each(|a| a.collect_vars(&mut out));
        }
        out
    }

    pub fn head_vars(&self) -> Vec<u32> {
        self.head.vars()
    }

    pub fn is_ground(&self) -> bool {
        self.head.is_ground() && self.body.iter().all(Atom::is_ground)
    }

    pub fn max_var(&self) -> Option<u32> {
        self.vars().into_iter().max()
    }

    /// Any body literal with the head's predicate symbol and arity.
    pub fn is_recursive(&self) -> bool {
        let k = self.head.key();
        self.body.iter().any(|b| b.key() == k)
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> Term) -> Clause {
        Clause {
            head: self.head.map_vars(f),
            body: self.body.iter().map(|b| b.map_vars(f)).collect(),
        }
    }

    /// Equality treating the body as a set of literals.
    pub fn same_as(&self, other: &Clause) -> bool {
        if self.head != other.head {
            return false;
        }
        let a: BTreeSet<&Atom> = self.body.iter().collect();
        let b: BTreeSet<&Atom> = other.body.iter().collect();
        a == b
    }

    /// Body sorted with duplicates removed.
    pub fn normalized(&self) -> Clause {
        let set: BTreeSet<Atom> = self.body.iter().cloned().collect();
        Clause { head: self.head.clone(), body: set.into_iter().collect() }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            for (i, b) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", b)?;
            }
        }
        f.write_str(".")
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_rendering() {
        let l = Term::list(vec![Term::constant("a"), Term::constant("t")], None);
        assert_eq!(l.to_string(), "[a,t]");
        let p = Term::list(vec![Term::Var(0)], Some(Term::Var(1)));
        assert_eq!(p.to_string(), "[A|B]");
        assert_eq!(Term::Const(nil()).to_string(), "[]");
        assert_eq!(l.as_list().unwrap().len(), 2);
    }

    #[test]
    fn var_names() {
        assert_eq!(var_name(0), "A");
        assert_eq!(var_name(25), "Z");
        assert_eq!(var_name(26), "A1");
    }

    #[test]
    fn clause_rendering_and_set_equality() {
        let c = Clause::new(
            Atom::new("p", vec![Term::Var(0)]),
            vec![Atom::new("q", vec![Term::Var(0), Term::Var(1)]), Atom::new("r", vec![Term::Var(1)])],
        );
        assert_eq!(c.to_string(), "p(A) :- q(A,B),r(B).");
        let mut d = c.clone();
        d.body.reverse();
        d.body.push(d.body[0].clone());
        assert!(c.same_as(&d));
        assert!(!c.is_recursive());
    }
}
