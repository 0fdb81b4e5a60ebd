use std::collections::BTreeMap;
use std::fmt;

use super::term::{var_name, Atom, Clause, Term};

/// Finite map from variables to terms. Identity bindings are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<u32, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Term)>) -> Substitution {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    pub fn bind(&mut self, var: u32, term: Term) {
        if term != Term::Var(var) {
            self.map.insert(var, term);
        } else {
            self.map.remove(&var);
        }
    }

    pub fn get(&self, var: u32) -> Option<&Term> {
        self.map.get(&var)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Term)> {
        self.map.iter()
    }

    /// One simultaneous replacement step.
    pub fn apply_term(&self, t: &Term) -> Term {
        t.map_vars(&mut |v| self.map.get(&v).cloned().unwrap_or(Term::Var(v)))
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom { pred: a.pred, args: a.args.iter().map(|t| self.apply_term(t)).collect() }
    }

    pub fn apply_clause(&self, c: &Clause) -> Clause {
        Clause { head: self.apply_atom(&c.head), body: c.body.iter().map(|b| self.apply_atom(b)).collect() }
    }

    /// `self` followed by `next`: applying the result equals applying
    /// `self` then `next`.
    pub fn compose(&self, next: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.map {
            out.bind(*v, next.apply_term(t));
        }
        for (v, t) in &next.map {
            if !self.map.contains_key(v) {
                out.bind(*v, t.clone());
            }
        }
        out
    }

    /// Applies the substitution repeatedly until no bound variable remains
    /// in any range term. Terminates for idempotent-closable maps (as
    /// produced by `unify`).
    pub fn resolved(&self) -> Substitution {
        let mut cur = self.clone();
        loop {
            let next = Substitution {
                map: cur.map.iter().map(|(v, t)| (*v, cur.apply_term(t))).collect(),
            };
            if next == cur {
                return next;
            }
            cur = next;
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}/{}", var_name(*v), t)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn walk<'a>(s: &'a Substitution, mut t: &'a Term) -> &'a Term {
    while let Term::Var(v) = t {
        match s.get(*v) {
            Some(next) => t = next,
            None => break,
        }
    }
    t
}

fn occurs_in(s: &Substitution, var: u32, t: &Term) -> bool {
    match walk(s, t) {
        Term::Var(v) => *v == var,
        Term::Compound(_, args) => args.iter().any(|a| occurs_in(s, var, a)),
        _ => false,
    }
}

pub fn unify_terms(a: &Term, b: &Term, s: &mut Substitution) -> bool {
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = stack.pop() {
        let x = walk(s, &x).clone();
        let y = walk(s, &y).clone();
        match (&x, &y) {
            (Term::Var(i), Term::Var(j)) if i == j => {}
            (Term::Var(i), other) | (other, Term::Var(i)) => {
                if occurs_in(s, *i, other) {
                    return false;
                }
                s.bind(*i, other.clone());
            }
            (Term::Const(p), Term::Const(q)) => {
                if p != q {
                    return false;
                }
            }
            (Term::Int(p), Term::Int(q)) => {
                if p != q {
                    return false;
                }
            }
            (Term::Compound(f, xs), Term::Compound(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return false;
                }
                for (p, q) in xs.iter().zip(ys.iter()) {
                    stack.push((p.clone(), q.clone()));
                }
            }
            _ => return false,
        }
    }
    true
}

/// Most general unifier with occurs check, fully resolved.
pub fn unify(a1: &Atom, a2: &Atom) -> Option<Substitution> {
    if a1.pred != a2.pred || a1.args.len() != a2.args.len() {
        return None;
    }
    let mut s = Substitution::new();
    for (x, y) in a1.args.iter().zip(a2.args.iter()) {
        if !unify_terms(x, y, &mut s) {
            return None;
        }
    }
    Some(s.resolved())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Term {
        Term::Var(i)
    }
    fn c(s: &str) -> Term {
        Term::constant(s)
    }

    #[test]
    fn apply_palindrome_substitution() {
        // palindrome(A):-middle(A,B),empty(B) with {A/[a,t], B/[]}
        let cl = Clause::new(
            Atom::new("palindrome", vec![v(0)]),
            vec![Atom::new("middle", vec![v(0), v(1)]), Atom::new("empty", vec![v(1)])],
        );
        let s = Substitution::from_pairs([(0, Term::list(vec![c("a"), c("t")], None)), (1, Term::list(vec![], None))]);
        assert_eq!(s.apply_clause(&cl).to_string(), "palindrome([a,t]) :- middle([a,t],[]),empty([]).");
        assert_eq!(Substitution::new().apply_clause(&cl), cl);
    }

    #[test]
    fn composition() {
        // p(A,B) with {A/B} then {B/c} -> p(c,c)
        let a = Atom::new("p", vec![v(0), v(1)]);
        let s1 = Substitution::from_pairs([(0, v(1))]);
        let s2 = Substitution::from_pairs([(1, c("c"))]);
        let comp = s1.compose(&s2);
        assert_eq!(comp.apply_atom(&a).to_string(), "p(c,c)");
        assert_eq!(comp.apply_atom(&a), s2.apply_atom(&s1.apply_atom(&a)));
    }

    #[test]
    fn unify_examples() {
        let s = unify(&Atom::new("p", vec![v(0), c("b")]), &Atom::new("p", vec![c("a"), v(1)])).unwrap();
        assert_eq!(s.get(0), Some(&c("a")));
        assert_eq!(s.get(1), Some(&c("b")));
        assert!(unify(&Atom::new("p", vec![v(0)]), &Atom::new("q", vec![v(0)])).is_none());
        assert!(unify(&Atom::new("p", vec![v(0), v(0)]), &Atom::new("p", vec![c("a"), c("b")])).is_none());
    }

    #[test]
    fn occurs_check() {
        let f = Term::compound("f", vec![v(0)]);
        assert!(unify(&Atom::new("p", vec![v(0)]), &Atom::new("p", vec![f])).is_none());
    }
}
