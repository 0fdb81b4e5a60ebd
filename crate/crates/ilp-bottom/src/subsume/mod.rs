//! θ-subsumption, theory subsumption and the variant-based generalization
//! checks used for bottom clause pruning.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::logic::{Atom, Clause, Direction, LanguageBias, Substitution, Term};
use crate::variants::VariantSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictMode {
    Oracle,
    VariantSubset,
    RecursionLoosened,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Substitution(Substitution),
    Variant(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizationVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub mode: VerdictMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("subsumption check exceeded {0} search nodes")]
pub struct BudgetExhausted(pub u64);

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Matches a pattern term from the general clause against a term of the
/// specific clause, whose variables behave as constants.
fn match_term(p: &Term, t: &Term, theta: &mut HashMap<u32, Term>, trail: &mut Vec<u32>) -> bool {
    match p {
        Term::Var(v) => match theta.get(v) {
            Some(b) => b == t,
            None => {
                theta.insert(*v, t.clone());
                trail.push(*v);
                true
            }
        },
        Term::Const(_) | Term::Int(_) => p == t,
        Term::Compound(f, args) => match t {
            Term::Compound(g, targs) if f == g && args.len() == targs.len() => {
                args.iter().zip(targs.iter()).all(|(a, b)| match_term(a, b, theta, trail))
            }
            _ => false,
        },
    }
}

fn match_atom(p: &Atom, t: &Atom, theta: &mut HashMap<u32, Term>, trail: &mut Vec<u32>) -> bool {
    p.pred == t.pred && p.args.len() == t.args.len() && p.args.iter().zip(&t.args).all(|(a, b)| match_term(a, b, theta, trail))
}

fn undo(theta: &mut HashMap<u32, Term>, trail: &mut Vec<u32>, to: usize) {
    while trail.len() > to {
        theta.remove(&trail.pop().unwrap());
    }
}

struct Search<'a> {
    c2: &'a Clause,
    by_pred: HashMap<(crate::logic::Sym, usize), Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn candidates(&self, l: &Atom) -> &[usize] {
        self.by_pred.get(&l.key()).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Number of literals of c2 that `l` can still match under `theta`.
    fn options(&self, l: &Atom, theta: &mut HashMap<u32, Term>, trail: &mut Vec<u32>) -> usize {
        let mut n = 0;
        for &i in self.candidates(l) {
            let mark = trail.len();
            if match_atom(l, &self.c2.body[i], theta, trail) {
                n += 1;
            }
            undo(theta, trail, mark);
        }
        n
    }

    fn solve(
        &mut self,
        left: &mut Vec<&Atom>,
        theta: &mut HashMap<u32, Term>,
        trail: &mut Vec<u32>,
    ) -> Result<bool, BudgetExhausted> {
        if left.is_empty() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExhausted(self.budget));
        }
        // most constrained literal first
        let mut best = (usize::MAX, 0);
        for (i, l) in left.iter().enumerate() {
            let n = self.options(l, theta, trail);
            if n < best.0 {
                best = (n, i);
                if n == 0 {
                    return Ok(false);
                }
            }
        }
        let lit = left.swap_remove(best.1);
        for &i in self.candidates(lit).to_vec().iter() {
            let mark = trail.len();
            if match_atom(lit, &self.c2.body[i], theta, trail) {
                if self.solve(left, theta, trail)? {
                    return Ok(true);
                }
            }
            undo(theta, trail, mark);
        }
        left.push(lit);
        let last = left.len() - 1;
        left.swap(best.1, last);
        Ok(false)
    }
}

/// Exact θ-subsumption: is there θ with `c1.head θ = c2.head` and every body
/// literal of `c1 θ` in the body of `c2`?
pub fn theta_subsumes_with(c1: &Clause, c2: &Clause, budget: u64) -> Result<GeneralizationVerdict, BudgetExhausted> {
    let mut theta = HashMap::new();
    let mut trail = Vec::new();
    let no = GeneralizationVerdict { holds: false, witness: None, mode: VerdictMode::Oracle };
    if !match_atom(&c1.head, &c2.head, &mut theta, &mut trail) {
        return Ok(no);
    }
    let mut by_pred: HashMap<_, Vec<usize>> = HashMap::new();
    for (i, l) in c2.body.iter().enumerate() {
        by_pred.entry(l.key()).or_default().push(i);
    }
    let mut s = Search { c2, by_pred, nodes: 0, budget };
    let mut left: Vec<&Atom> = c1.body.iter().collect();
    if s.solve(&mut left, &mut theta, &mut trail)? {
        let sub = Substitution::from_pairs(theta.into_iter());
        Ok(GeneralizationVerdict { holds: true, witness: Some(Witness::Substitution(sub)), mode: VerdictMode::Oracle })
    } else {
        Ok(no)
    }
}

pub fn theta_subsumes(c1: &Clause, c2: &Clause) -> Result<GeneralizationVerdict, BudgetExhausted> {
    theta_subsumes_with(c1, c2, DEFAULT_BUDGET)
}

/// Every clause of `t2` is θ-subsumed by some clause of `t1`.
pub fn theory_subsumes(t1: &[Clause], t2: &[Clause]) -> Result<bool, BudgetExhausted> {
    for c2 in t2 {
        let mut found = false;
        for c1 in t1 {
            if theta_subsumes(c1, c2)?.holds {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pure containment against each variant: equal heads and body ⊆ body.
/// No renaming is attempted.
pub fn generalizes_via_variants(c: &Clause, vs: &VariantSet) -> GeneralizationVerdict {
    for (i, v) in vs.variants.iter().enumerate() {
        if v.head == c.head && c.body.iter().all(|l| v.body.contains(l)) {
            return GeneralizationVerdict { holds: true, witness: Some(Witness::Variant(i)), mode: VerdictMode::VariantSubset };
        }
    }
    GeneralizationVerdict { holds: false, witness: None, mode: VerdictMode::VariantSubset }
}

/// Body literals whose outputs feed, possibly through other such literals,
/// the inputs of a recursive call. Empty for non-recursive clauses.
pub fn precedes_recursion_literals(c: &Clause, bias: &LanguageBias) -> Vec<Atom> {
    let hk = c.head.key();
    let ins = |l: &Atom| -> Vec<u32> {
        match bias.dirs(&l.key()) {
            Some(ds) => l
                .args
                .iter()
                .zip(ds)
                .filter(|(_, d)| **d == Direction::In)
                .flat_map(|(a, _)| {
                    let mut vs = Vec::new();
                    a.collect_vars(&mut vs);
                    vs
                })
                .collect(),
            None => l.vars(),
        }
    };
    let outs = |l: &Atom| -> Vec<u32> {
        match bias.dirs(&l.key()) {
            Some(ds) => l
                .args
                .iter()
                .zip(ds)
                .filter(|(_, d)| **d == Direction::Out)
                .flat_map(|(a, _)| {
                    let mut vs = Vec::new();
                    a.collect_vars(&mut vs);
                    vs
                })
                .collect(),
            None => Vec::new(),
        }
    };
    let mut wanted: HashSet<u32> = HashSet::new();
    for l in &c.body {
        if l.key() == hk {
            wanted.extend(ins(l));
        }
    }
    let mut picked = vec![false; c.body.len()];
    loop {
        let mut grew = false;
        for (i, l) in c.body.iter().enumerate() {
            if picked[i] || l.key() == hk {
                continue;
            }
            if outs(l).iter().any(|v| wanted.contains(v)) {
                picked[i] = true;
                grew = true;
                wanted.extend(ins(l));
            }
        }
        if !grew {
            break;
        }
    }
    c.body.iter().zip(picked).filter(|(_, p)| *p).map(|(l, _)| l.clone()).collect()
}

/// Bitset over the variants of one set.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and_with(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= *b;
        }
    }

    fn any(&self) -> bool {
        self.0.iter().any(|w| *w != 0)
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// A variant set indexed by literal for fast containment queries under
/// every renaming of a clause's non-head variables.
#[derive(Clone, Debug)]
pub struct VariantIndex {
    pub set: VariantSet,
    heads: HashMap<Atom, Bits>,
    lits: HashMap<Atom, Bits>,
    max_index: u32,
}

impl VariantIndex {
    pub fn new(set: VariantSet) -> VariantIndex {
        let n = set.variants.len();
        let mut heads: HashMap<Atom, Bits> = HashMap::new();
        let mut lits: HashMap<Atom, Bits> = HashMap::new();
        let mut max_index = 0;
        for (i, v) in set.variants.iter().enumerate() {
            heads.entry(v.head.clone()).or_insert_with(|| Bits::new(n)).set(i);
            for l in &v.body {
                lits.entry(l.clone()).or_insert_with(|| Bits::new(n)).set(i);
            }
            if let Some(m) = v.max_var() {
                max_index = max_index.max(m + 1);
            }
        }
        VariantIndex { set, heads, lits, max_index }
    }

    pub fn len(&self) -> usize {
        self.set.variants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.variants.is_empty()
    }

    /// Index of a variant containing `body` under exactly this naming.
    pub fn contains(&self, head: &Atom, body: &[Atom]) -> Option<usize> {
        let mut acc = self.heads.get(head)?.clone();
        for l in body {
            acc.and_with(self.lits.get(l)?);
            if !acc.any() {
                return None;
            }
        }
        acc.first()
    }

    /// Some injective renaming of the non-head variables of `body` onto
    /// index variables puts it inside a variant. Head variables must be the
    /// head's own indices (a clause in index form has head `p(0,..,h-1)`).
    pub fn contains_renamed(&self, head: &Atom, body: &[Atom]) -> Option<usize> {
        if body.is_empty() {
            return self.heads.get(head).and_then(|b| b.first());
        }
        let head_vars: Vec<u32> = head.vars();
        let mut free: Vec<u32> = Vec::new();
        for l in body {
            for v in l.vars() {
                if !head_vars.contains(&v) && !free.contains(&v) {
                    free.push(v);
                }
            }
        }
        let start = head_vars.len() as u32;
        if start + free.len() as u32 > self.max_index.max(start) {
            return None;
        }
        let slots: Vec<u32> = (start..self.max_index).collect();
        let mut used = vec![false; slots.len()];
        let mut map: BTreeMap<u32, u32> = head_vars.iter().map(|&v| (v, v)).collect();
        // a literal is checked once its last free variable is assigned
        let level: Vec<usize> = body
            .iter()
            .map(|l| l.vars().iter().filter_map(|v| free.iter().position(|f| f == v)).map(|p| p + 1).max().unwrap_or(0))
            .collect();
        let head_bits = self.heads.get(head)?.clone();
        let mut r = Renaming { free: &free, slots: &slots, used: &mut used, map: &mut map, body, level: &level };
        self.assign(0, &mut r, &head_bits)
    }

    fn assign(&self, k: usize, r: &mut Renaming<'_>, acc: &Bits) -> Option<usize> {
        let mut acc = acc.clone();
        for (l, lv) in r.body.iter().zip(r.level) {
            if *lv == k {
                let renamed = l.map_vars(&mut |v| Term::Var(r.map[&v]));
                acc.and_with(self.lits.get(&renamed)?);
                if !acc.any() {
                    return None;
                }
            }
        }
        if k == r.free.len() {
            return acc.first();
        }
        for i in 0..r.slots.len() {
            if r.used[i] {
                continue;
            }
            r.used[i] = true;
            r.map.insert(r.free[k], r.slots[i]);
            let found = self.assign(k + 1, r, &acc);
            r.map.remove(&r.free[k]);
            r.used[i] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

struct Renaming<'a> {
    free: &'a [u32],
    slots: &'a [u32],
    used: &'a mut Vec<bool>,
    map: &'a mut BTreeMap<u32, u32>,
    body: &'a [Atom],
    level: &'a [usize],
}

/// Does some clause of `h` (or, for recursive clauses against positive sets
/// with recursion on, its precedes-recursion part) fall inside a variant
/// under some renaming?
pub fn hypothesis_generalizes_bottom(h: &[Clause], vi: &VariantIndex, recursion: bool, bias: &LanguageBias) -> bool {
    h.iter().any(|c| clause_generalizes_bottom(c, vi, recursion, bias))
}

pub fn clause_generalizes_bottom(c: &Clause, vi: &VariantIndex, recursion: bool, bias: &LanguageBias) -> bool {
    let c = to_index_head(c);
    let loosen = recursion && vi.set.polarity == crate::bottom::Polarity::Positive && c.is_recursive();
    if loosen {
        let part = precedes_recursion_literals(&c, bias);
        vi.contains_renamed(&c.head, &part).is_some()
    } else {
        vi.contains_renamed(&c.head, &c.body).is_some()
    }
}

/// Renames a clause so that its head reads `p(0,1,..)` when the head
/// arguments are distinct variables; other variables move above them.
pub fn to_index_head(c: &Clause) -> Clause {
    let mut m: HashMap<u32, u32> = HashMap::new();
    for v in c.head.vars() {
        let n = m.len() as u32;
        m.entry(v).or_insert(n);
    }
    let base = m.len() as u32;
    let mut extra = 0;
    for v in c.vars() {
        if !m.contains_key(&v) {
            m.insert(v, base + extra);
            extra += 1;
        }
    }
    c.map_vars(&mut |v| Term::Var(m[&v]))
}

#[cfg(test)]
mod tests;
