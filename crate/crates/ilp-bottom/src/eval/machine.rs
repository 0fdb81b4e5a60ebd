//! Depth-first SLD resolution over a heap of cells. Clause variables are
//! bound lazily during head unification, so a failing head match allocates
//! nothing; on success the body goals are copied to the heap.

use std::collections::HashMap;
use std::time::Duration;

use crate::logic::{Atom, Clause, PredKey, Sym, Term};

use super::builtins::{self, Builtin};
use super::{EvalLimits, Verdict};

const NIL: u32 = u32::MAX;
const UNSET: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Cell {
    Ref(u32),
    Atom(Sym),
    Int(i64),
    Str(u32),
    Functor(Sym, u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Key {
    Atom(Sym),
    Int(i64),
    Functor(Sym, u32),
}

fn term_key(t: &Term) -> Option<Key> {
    match t {
        Term::Var(_) => None,
        Term::Const(s) => Some(Key::Atom(*s)),
        Term::Int(i) => Some(Key::Int(*i)),
        Term::Compound(f, a) => Some(Key::Functor(*f, a.len() as u32)),
    }
}

#[derive(Debug)]
struct CClause {
    head: Vec<Term>,
    body: Vec<Atom>,
    nvars: usize,
}

#[derive(Debug, Default)]
struct PredIndex {
    all: Vec<u32>,
    var_first: Vec<u32>,
    by_key: HashMap<Key, Vec<u32>>,
}

/// Clauses compiled for resolution, grouped by predicate with first-argument
/// indexing.
#[derive(Debug, Default)]
pub struct Program {
    clauses: Vec<CClause>,
    preds: HashMap<PredKey, PredIndex>,
}

impl Program {
    pub fn new(clauses: &[Clause]) -> Program {
        let mut p = Program::default();
        let mut keys: HashMap<PredKey, Vec<(u32, Option<Key>)>> = HashMap::new();
        for c in clauses {
            let mut map: HashMap<u32, u32> = HashMap::new();
            let c2 = c.map_vars(&mut |v| {
                let n = map.len() as u32;
                Term::Var(*map.entry(v).or_insert(n))
            });
            let id = p.clauses.len() as u32;
            let key = c2.head.args.first().and_then(term_key);
            keys.entry(c2.head.key()).or_default().push((id, key));
            p.clauses.push(CClause { head: c2.head.args, body: c2.body, nvars: map.len() });
        }
        for (pk, entries) in keys {
            let mut idx = PredIndex::default();
            let distinct: Vec<Key> = {
                let mut seen = Vec::new();
                for (_, k) in &entries {
                    if let Some(k) = k {
                        if !seen.contains(k) {
                            seen.push(*k);
                        }
                    }
                }
                seen
            };
            for (id, k) in &entries {
                idx.all.push(*id);
                if k.is_none() {
                    idx.var_first.push(*id);
                }
            }
            for k in distinct {
                let ids = entries.iter().filter(|(_, k2)| k2.is_none() || *k2 == Some(k)).map(|(id, _)| *id).collect();
                idx.by_key.insert(k, ids);
            }
            p.preds.insert(pk, idx);
        }
        p
    }

    pub fn defines(&self, k: &PredKey) -> bool {
        self.preds.contains_key(k)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    fn candidates(&self, k: &PredKey, first: Option<Key>) -> Option<&[u32]> {
        let idx = self.preds.get(k)?;
        Some(match first {
            None => &idx.all,
            Some(key) => idx.by_key.get(&key).unwrap_or(&idx.var_first),
        })
    }
}

#[derive(Clone, Copy)]
struct Goal {
    addr: u32,
    next: u32,
    depth: u32,
}

#[derive(Clone, Copy)]
struct ChoicePoint {
    goal: u32,
    next_cand: u32,
    end_cand: u32,
    heap: u32,
    trail: u32,
    goals: u32,
    cands: u32,
}

/// A clause reference: which program and which clause.
type CRef = (bool, u32);

pub(crate) struct Machine<'a> {
    bk: &'a Program,
    hyp: Option<&'a Program>,
    builtins: bool,
    lim: EvalLimits,
    pub(crate) heap: Vec<Cell>,
    trail: Vec<u32>,
    goals: Vec<Goal>,
    cands: Vec<CRef>,
    choices: Vec<ChoicePoint>,
    cont: u32,
    env: Vec<u32>,
    cutoff: bool,
    steps: u64,
    start: Duration,
}

enum Step {
    Continue,
    Fail,
}

impl<'a> Machine<'a> {
    pub(crate) fn new(bk: &'a Program, hyp: Option<&'a Program>, builtins: bool, lim: EvalLimits) -> Machine<'a> {
        Machine {
            bk,
            hyp,
            builtins,
            lim,
            heap: Vec::with_capacity(256),
            trail: Vec::with_capacity(64),
            goals: Vec::with_capacity(64),
            cands: Vec::with_capacity(64),
            choices: Vec::with_capacity(32),
            cont: NIL,
            env: Vec::new(),
            cutoff: false,
            steps: 0,
            start: thread_cpu_time(),
        }
    }

    pub(crate) fn deref(&self, mut a: u32) -> u32 {
        loop {
            match self.heap[a as usize] {
                Cell::Ref(b) if b != a => a = b,
                _ => return a,
            }
        }
    }

    fn new_var(&mut self) -> u32 {
        let a = self.heap.len() as u32;
        self.heap.push(Cell::Ref(a));
        a
    }

    pub(crate) fn bind(&mut self, var: u32, to: u32) {
        self.heap[var as usize] = Cell::Ref(to);
        self.trail.push(var);
    }

    fn is_unbound(&self, a: u32) -> bool {
        matches!(self.heap[a as usize], Cell::Ref(b) if b == a)
    }

    /// Copies a clause term to the heap, creating cells for unset variables.
    fn build(&mut self, t: &Term) -> u32 {
        match t {
            Term::Var(i) => {
                let i = *i as usize;
                if self.env[i] == UNSET {
                    self.env[i] = self.new_var();
                }
                self.env[i]
            }
            Term::Const(s) => self.push_cell(Cell::Atom(*s)),
            Term::Int(n) => self.push_cell(Cell::Int(*n)),
            Term::Compound(f, args) => {
                let arg_addrs: Vec<u32> = args.iter().map(|a| self.build(a)).collect();
                let base = self.heap.len() as u32;
                self.heap.push(Cell::Functor(*f, args.len() as u32));
                for a in arg_addrs {
                    self.heap.push(Cell::Ref(a));
                }
                self.push_cell(Cell::Str(base))
            }
        }
    }

    pub(crate) fn push_cell(&mut self, c: Cell) -> u32 {
        let a = self.heap.len() as u32;
        self.heap.push(c);
        a
    }

    /// Copies a ground or non-ground external term, mapping its variables to
    /// fresh heap cells via `vars`.
    pub(crate) fn load(&mut self, t: &Term, vars: &mut HashMap<u32, u32>) -> u32 {
        match t {
            Term::Var(v) => {
                if let Some(&a) = vars.get(v) {
                    return a;
                }
                let a = self.new_var();
                vars.insert(*v, a);
                a
            }
            Term::Const(s) => self.push_cell(Cell::Atom(*s)),
            Term::Int(n) => self.push_cell(Cell::Int(*n)),
            Term::Compound(f, args) => {
                let addrs: Vec<u32> = args.iter().map(|a| self.load(a, vars)).collect();
                let base = self.heap.len() as u32;
                self.heap.push(Cell::Functor(*f, args.len() as u32));
                for a in addrs {
                    self.heap.push(Cell::Ref(a));
                }
                self.push_cell(Cell::Str(base))
            }
        }
    }

    fn load_goal(&mut self, a: &Atom, vars: &mut HashMap<u32, u32>) -> u32 {
        if a.args.is_empty() {
            return self.push_cell(Cell::Atom(a.pred));
        }
        let addrs: Vec<u32> = a.args.iter().map(|t| self.load(t, vars)).collect();
        let base = self.heap.len() as u32;
        self.heap.push(Cell::Functor(a.pred, a.args.len() as u32));
        for x in addrs {
            self.heap.push(Cell::Ref(x));
        }
        base
    }

    /// Reads a heap term back, naming unbound cells through `names`.
    pub(crate) fn read(&self, a: u32, names: &mut HashMap<u32, u32>) -> Term {
        let a = self.deref(a);
        match self.heap[a as usize] {
            Cell::Ref(_) => {
                let n = names.len() as u32;
                Term::Var(*names.entry(a).or_insert(n))
            }
            Cell::Atom(s) => Term::Const(s),
            Cell::Int(i) => Term::Int(i),
            Cell::Str(p) => self.read_struct(p, names),
            Cell::Functor(..) => self.read_struct(a, names),
        }
    }

    fn read_struct(&self, p: u32, names: &mut HashMap<u32, u32>) -> Term {
        match self.heap[p as usize] {
            Cell::Functor(f, n) => {
                let args: Vec<Term> = (1..=n).map(|i| self.read(p + i, names)).collect();
                Term::Compound(f, args.into())
            }
            _ => unreachable!("structure without functor"),
        }
    }

    fn unify(&mut self, a: u32, b: u32) -> bool {
        let a = self.deref(a);
        let b = self.deref(b);
        if a == b {
            return true;
        }
        match (self.heap[a as usize], self.heap[b as usize]) {
            (Cell::Ref(_), _) => {
                // bind the younger cell to the older one
                if self.is_unbound(b) && b > a {
                    self.bind(b, a);
                } else {
                    self.bind(a, b);
                }
                true
            }
            (_, Cell::Ref(_)) => {
                self.bind(b, a);
                true
            }
            (Cell::Atom(x), Cell::Atom(y)) => x == y,
            (Cell::Int(x), Cell::Int(y)) => x == y,
            (Cell::Str(p), Cell::Str(q)) => {
                if p == q {
                    return true;
                }
                match (self.heap[p as usize], self.heap[q as usize]) {
                    (Cell::Functor(f, n), Cell::Functor(g, m)) if f == g && n == m => {
                        (1..=n).all(|i| self.unify(p + i, q + i))
                    }
                    _ => false,
                }
            }
            _ => false,
        }
    }

    /// Unifies a clause head argument with a heap term.
    fn unify_head(&mut self, t: &Term, a: u32) -> bool {
        match t {
            Term::Var(i) => {
                let i = *i as usize;
                if self.env[i] == UNSET {
                    self.env[i] = a;
                    true
                } else {
                    self.unify(self.env[i], a)
                }
            }
            Term::Const(s) => {
                let a = self.deref(a);
                match self.heap[a as usize] {
                    Cell::Atom(x) => x == *s,
                    Cell::Ref(_) => {
                        let c = self.push_cell(Cell::Atom(*s));
                        self.bind(a, c);
                        true
                    }
                    _ => false,
                }
            }
            Term::Int(n) => {
                let a = self.deref(a);
                match self.heap[a as usize] {
                    Cell::Int(x) => x == *n,
                    Cell::Ref(_) => {
                        let c = self.push_cell(Cell::Int(*n));
                        self.bind(a, c);
                        true
                    }
                    _ => false,
                }
            }
            Term::Compound(f, args) => {
                let a = self.deref(a);
                match self.heap[a as usize] {
                    Cell::Str(p) => match self.heap[p as usize] {
                        Cell::Functor(g, n) if g == *f && n as usize == args.len() => {
                            args.iter().enumerate().all(|(i, t)| self.unify_head(t, p + 1 + i as u32))
                        }
                        _ => false,
                    },
                    Cell::Ref(_) => {
                        let c = self.build(t);
                        self.bind(a, c);
                        true
                    }
                    _ => false,
                }
            }
        }
    }

    /// Predicate key and argument addresses of a goal cell.
    pub(crate) fn goal_parts(&self, addr: u32) -> (PredKey, u32) {
        match self.heap[addr as usize] {
            Cell::Atom(s) => ((s, 0), addr),
            Cell::Functor(f, n) => ((f, n as usize), addr + 1),
            other => unreachable!("goal cell {:?}", other),
        }
    }

    fn first_key(&self, args: u32, arity: usize) -> Option<Key> {
        if arity == 0 {
            return None;
        }
        let a = self.deref(args);
        match self.heap[a as usize] {
            Cell::Ref(_) => None,
            Cell::Atom(s) => Some(Key::Atom(s)),
            Cell::Int(i) => Some(Key::Int(i)),
            Cell::Str(p) => match self.heap[p as usize] {
                Cell::Functor(f, n) => Some(Key::Functor(f, n)),
                _ => None,
            },
            Cell::Functor(..) => None,
        }
    }

    fn clause(&self, r: CRef) -> &'a CClause {
        if r.0 {
            &self.hyp.expect("hypothesis clause without hypothesis").clauses[r.1 as usize]
        } else {
            &self.bk.clauses[r.1 as usize]
        }
    }

    fn exhausted(&mut self) -> bool {
        self.steps += 1;
        if self.steps > self.lim.max_inferences {
            return true;
        }
        self.steps % 64 == 0 && thread_cpu_time().saturating_sub(self.start) > self.lim.per_query_timeout
    }

    fn undo_to(&mut self, heap: u32, trail: u32) {
        while self.trail.len() > trail as usize {
            let v = self.trail.pop().unwrap();
            self.heap[v as usize] = Cell::Ref(v);
        }
        self.heap.truncate(heap as usize);
    }

    /// Tries candidates `from..end` for the goal at `goal_idx`; on success
    /// sets the continuation and leaves a choicepoint for the rest.
    fn try_candidates(&mut self, goal_idx: u32, from: u32, end: u32) -> bool {
        let g = self.goals[goal_idx as usize];
        let (_, args) = self.goal_parts(g.addr);
        let heap0 = self.heap.len() as u32;
        let trail0 = self.trail.len() as u32;
        let goals0 = self.goals.len() as u32;
        for k in from..end {
            let cl = self.clause(self.cands[k as usize]);
            self.env.clear();
            self.env.resize(cl.nvars, UNSET);
            let ok = cl.head.iter().enumerate().all(|(i, t)| self.unify_head(t, args + i as u32));
            if !ok {
                self.undo_to(heap0, trail0);
                continue;
            }
            if k + 1 < end {
                self.choices.push(ChoicePoint {
                    goal: goal_idx,
                    next_cand: k + 1,
                    end_cand: end,
                    heap: heap0,
                    trail: trail0,
                    goals: goals0,
                    cands: end,
                });
            }
            let mut next = g.next;
            for b in cl.body.iter().rev() {
                let addr = self.build_goal(b);
                self.goals.push(Goal { addr, next, depth: g.depth + 1 });
                next = self.goals.len() as u32 - 1;
            }
            self.cont = next;
            return true;
        }
        false
    }

    fn build_goal(&mut self, b: &Atom) -> u32 {
        if b.args.is_empty() {
            return self.push_cell(Cell::Atom(b.pred));
        }
        let addrs: Vec<u32> = b.args.iter().map(|t| self.build(t)).collect();
        let base = self.heap.len() as u32;
        self.heap.push(Cell::Functor(b.pred, b.args.len() as u32));
        for a in addrs {
            self.heap.push(Cell::Ref(a));
        }
        base
    }

    fn call(&mut self, goal_idx: u32) -> Step {
        let g = self.goals[goal_idx as usize];
        if g.depth > self.lim.max_resolution_depth {
            self.cutoff = true;
            return Step::Fail;
        }
        let (key, args) = self.goal_parts(g.addr);
        let first = self.first_key(args, key.1);
        let in_hyp = self.hyp.and_then(|h| h.candidates(&key, first));
        let in_bk = self.bk.candidates(&key, first);
        if in_hyp.is_none() && in_bk.is_none() {
            if self.builtins {
                if let Some(b) = builtins::lookup(&key) {
                    return if self.run_builtin(b, args) {
                        self.cont = g.next;
                        Step::Continue
                    } else {
                        Step::Fail
                    };
                }
            }
            return Step::Fail;
        }
        let start = self.cands.len() as u32;
        if let Some(ids) = in_bk {
            self.cands.extend(ids.iter().map(|&i| (false, i)));
        }
        if let Some(ids) = in_hyp {
            self.cands.extend(ids.iter().map(|&i| (true, i)));
        }
        let end = self.cands.len() as u32;
        if self.try_candidates(goal_idx, start, end) {
            Step::Continue
        } else {
            self.cands.truncate(start as usize);
            Step::Fail
        }
    }

    fn run_builtin(&mut self, b: Builtin, args: u32) -> bool {
        builtins::run(self, b, args)
    }

    /// Pops choicepoints until one yields a new branch.
    fn backtrack(&mut self) -> bool {
        while let Some(cp) = self.choices.pop() {
            self.undo_to(cp.heap, cp.trail);
            self.goals.truncate(cp.goals as usize);
            self.cands.truncate(cp.cands as usize);
            if self.try_candidates(cp.goal, cp.next_cand, cp.end_cand) {
                return true;
            }
        }
        false
    }

    pub(crate) fn int_at(&self, a: u32) -> Option<i64> {
        match self.heap[self.deref(a) as usize] {
            Cell::Int(i) => Some(i),
            _ => None,
        }
    }

    pub(crate) fn unify_int(&mut self, a: u32, v: i64) -> bool {
        let c = self.push_cell(Cell::Int(v));
        self.unify(a, c)
    }

    /// Runs until the next success. `None` when resources ran out.
    fn run(&mut self) -> Option<bool> {
        loop {
            if self.exhausted() {
                return None;
            }
            if self.cont == NIL {
                return Some(true);
            }
            let idx = self.cont;
            match self.call(idx) {
                Step::Continue => {}
                Step::Fail => {
                    if !self.backtrack() {
                        return Some(false);
                    }
                }
            }
        }
    }

    fn start_query(&mut self, goal: &Atom) -> HashMap<u32, u32> {
        let mut vars = HashMap::new();
        let addr = self.load_goal(goal, &mut vars);
        self.goals.push(Goal { addr, next: NIL, depth: 0 });
        self.cont = 0;
        vars
    }

    pub(crate) fn prove(&mut self, goal: &Atom) -> Verdict {
        self.start_query(goal);
        match self.run() {
            None => Verdict::Exhausted,
            Some(true) => Verdict::Proven,
            Some(false) if self.cutoff => Verdict::Exhausted,
            Some(false) => Verdict::NotProven,
        }
    }

    /// Enumerates answer instances of `goal` (up to `max`). The flag is
    /// false when the search was cut short by limits or by `max`.
    pub(crate) fn answers(&mut self, goal: &Atom, max: usize) -> (Vec<Atom>, bool) {
        self.start_query(goal);
        let root = self.goals[0].addr;
        let mut out: Vec<Atom> = Vec::new();
        loop {
            match self.run() {
                None => return (out, false),
                Some(false) => return (out, !self.cutoff),
                Some(true) => {
                    let mut names = HashMap::new();
                    let (key, args) = self.goal_parts(root);
                    let terms: Vec<Term> = (0..key.1 as u32).map(|i| self.read(args + i, &mut names)).collect();
                    let a = Atom { pred: key.0, args: terms };
                    if !out.contains(&a) {
                        out.push(a);
                    }
                    if out.len() >= max {
                        return (out, false);
                    }
                    if !self.backtrack() {
                        return (out, !self.cutoff);
                    }
                }
            }
        }
    }
}

/// CPU time of the calling thread. Query timeouts use it rather than wall
/// time so that a preempted query is not cut short by machine load.
fn thread_cpu_time() -> Duration {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    // SAFETY: `ts` is a valid, writable timespec.
    unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    Duration::new(ts.tv_sec as u64, ts.tv_nsec as u32)
}
