//! Bias-consistent clauses in canonical form, generated one body length at
//! a time and numbered in (size, canonical order).

use std::collections::{HashMap, HashSet};
use std::ops::Range;

use crate::logic::{canonical_form, Atom, Clause, Direction, LanguageBias, PredKey, Sym, Term};

#[derive(Clone, Debug)]
pub struct PoolClause {
    pub clause: Clause,
    /// Body reordered so that inputs are bound before use.
    pub runnable: Clause,
    pub size: usize,
    pub recursive: bool,
    pub mask: u128,
}

pub struct ClausePool {
    bias: LanguageBias,
    /// Clauses whose inputs are all grounded, head outputs not yet required,
    /// with `level` body literals.
    frontier: Vec<Clause>,
    level: usize,
    clauses: Vec<PoolClause>,
    ranges: Vec<Range<usize>>,
    bits: HashMap<PredKey, u32>,
    states_seen: usize,
}

impl ClausePool {
    pub fn new(bias: &LanguageBias) -> ClausePool {
        let mut bits = HashMap::new();
        for k in bias.head_decls.iter().chain(bias.body_decls.iter()) {
            let n = bits.len() as u32;
            bits.entry(*k).or_insert(n % 128);
        }
        let mut frontier = Vec::new();
        for &(p, a) in &bias.head_decls {
            if a <= bias.limits.max_vars {
                let head = Atom { pred: p, args: (0..a as u32).map(Term::Var).collect() };
                frontier.push(Clause::fact(head));
            }
        }
        let mut pool = ClausePool {
            bias: bias.clone(),
            frontier,
            level: 0,
            clauses: Vec::new(),
            ranges: vec![0..0],
            bits,
            states_seen: 0,
        };
        let start = pool.frontier.clone();
        pool.admit(start);
        pool
    }

    pub fn mask_of(&self, c: &Clause) -> u128 {
        let mut m = 0u128;
        for l in std::iter::once(&c.head).chain(c.body.iter()) {
            let b = self.bits.get(&l.key()).copied().unwrap_or(127);
            m |= 1u128 << b;
        }
        m
    }

    fn admit(&mut self, mut states: Vec<Clause>) {
        states.sort();
        let start = self.clauses.len();
        for c in states {
            if !self.bias.check_clause(&c).is_empty() {
                continue;
            }
            let runnable = self.bias.evaluation_order(&c);
            let mask = self.mask_of(&c);
            self.clauses.push(PoolClause { size: c.len(), recursive: c.is_recursive(), runnable, clause: c, mask });
        }
        self.ranges.push(start..self.clauses.len());
    }

    /// Generates clauses up to `size` literals (head included).
    pub fn ensure(&mut self, size: usize) {
        while self.ranges.len() <= size {
            if self.level >= self.bias.limits.max_body || self.frontier.is_empty() {
                let n = self.clauses.len();
                self.ranges.push(n..n);
                continue;
            }
            let mut seen: HashSet<Clause> = HashSet::new();
            let mut next = Vec::new();
            for c in &self.frontier {
                for lit in self.extensions(c) {
                    let mut body = c.body.clone();
                    body.push(lit);
                    let cf = canonical_form(&Clause::new(c.head.clone(), body));
                    self.states_seen += 1;
                    if seen.insert(cf.clone()) {
                        next.push(cf);
                    }
                }
            }
            self.level += 1;
            self.frontier = next.clone();
            self.admit(next);
        }
    }

    /// Candidate literals that keep `c` grounded. New variables are numbered
    /// in order of appearance so that fresh-variable permutations are not
    /// produced twice.
    fn extensions(&self, c: &Clause) -> Vec<Atom> {
        let types = self.bias.var_types(c);
        let nvars = c.vars().len();
        let next = c.max_var().map_or(0, |m| m + 1);
        let mut avail: HashSet<u32> = c.body.iter().flat_map(|b| b.vars()).collect();
        if let Some(hd) = self.bias.dirs(&c.head.key()) {
            for (a, d) in c.head.args.iter().zip(hd) {
                if let (Term::Var(v), Direction::In) = (a, d) {
                    avail.insert(*v);
                }
            }
        }
        let mut existing: Vec<(u32, Sym)> = types.iter().map(|(v, t)| (*v, *t)).collect();
        existing.sort();
        let mut out = Vec::new();
        for k in self.bias.body_preds() {
            let (Some(ts), Some(ds)) = (self.bias.type_of(&k), self.bias.dirs(&k)) else { continue };
            let mut args: Vec<u32> = Vec::with_capacity(k.1);
            let mut fresh: Vec<Sym> = Vec::new();
            self.fill(&k, ts, ds, &existing, &avail, nvars, next, &mut args, &mut fresh, &mut |args| {
                let lit = Atom { pred: k.0, args: args.iter().map(|v| Term::Var(*v)).collect() };
                if lit != c.head && !c.body.contains(&lit) {
                    out.push(lit);
                }
            });
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        k: &PredKey,
        ts: &[Sym],
        ds: &[Direction],
        existing: &[(u32, Sym)],
        avail: &HashSet<u32>,
        nvars: usize,
        next: u32,
        args: &mut Vec<u32>,
        fresh: &mut Vec<Sym>,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        let i = args.len();
        if i == k.1 {
            emit(args);
            return;
        }
        let t = ts[i];
        for &(v, vt) in existing {
            if vt == t && (ds[i] == Direction::Out || avail.contains(&v)) {
                args.push(v);
                self.fill(k, ts, ds, existing, avail, nvars, next, args, fresh, emit);
                args.pop();
            }
        }
        if ds[i] == Direction::Out {
            // fresh variables introduced earlier in this literal
            for (j, ft) in fresh.clone().iter().enumerate() {
                if *ft == t {
                    args.push(next + j as u32);
                    self.fill(k, ts, ds, existing, avail, nvars, next, args, fresh, emit);
                    args.pop();
                }
            }
            if nvars + fresh.len() < self.bias.limits.max_vars {
                args.push(next + fresh.len() as u32);
                fresh.push(t);
                self.fill(k, ts, ds, existing, avail, nvars, next, args, fresh, emit);
                fresh.pop();
                args.pop();
            }
        }
    }

    pub fn get(&self, id: usize) -> &PoolClause {
        &self.clauses[id]
    }

    pub fn range(&self, size: usize) -> Range<usize> {
        self.ranges.get(size).cloned().unwrap_or(0..0)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn generated_sizes(&self) -> usize {
        self.ranges.len() - 1
    }

    pub fn id_of(&self, c: &Clause) -> Option<usize> {
        let cf = canonical_form(c);
        let r = self.range(cf.len());
        self.clauses[r.clone()].iter().position(|p| p.clause == cf).map(|i| r.start + i)
    }

    /// Partial clauses canonicalized so far; a rough cost measure.
    pub fn states_seen(&self) -> usize {
        self.states_seen
    }
}
