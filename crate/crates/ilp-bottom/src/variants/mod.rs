//! Variable splitting and the enumeration of bottom clause variants: the
//! clauses, over index variables `0..max_vars`, against which a hypothesis
//! clause is compared by plain literal containment.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;

use crate::bottom::{BottomClause, Polarity};
use crate::logic::{Atom, Clause, Direction, HeadOutputs, LanguageBias, Term};

#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult {
    pub clause: Clause,
    /// Equivalence classes over the variables of `clause`, each sorted.
    pub classes: Vec<BTreeSet<u32>>,
}

impl SplitResult {
    pub fn unsplit(c: &Clause) -> SplitResult {
        SplitResult { clause: c.clone(), classes: c.vars().into_iter().map(|v| BTreeSet::from([v])).collect() }
    }
}

type Position = (Option<usize>, usize);

/// Defining positions (head arguments and body outputs, as (literal or
/// None for the head, argument)) and consuming literals of each variable,
/// kept up to date as splitting rewrites the clause.
#[derive(Default)]
struct Occurrences {
    defs: HashMap<u32, Vec<Position>>,
    consumers: HashMap<u32, Vec<usize>>,
}

impl Occurrences {
    /// Registers body literal `li`; returns variables that now have a
    /// second definition.
    fn add_literal(&mut self, li: usize, l: &Atom, bias: &LanguageBias) -> Vec<u32> {
        let mut doubled = Vec::new();
        let Some(ds) = bias.dirs(&l.key()) else { return doubled };
        for (i, (a, d)) in l.args.iter().zip(ds).enumerate() {
            let Term::Var(v) = a else { continue };
            match d {
                Direction::Out => {
                    let e = self.defs.entry(*v).or_default();
                    e.push((Some(li), i));
                    if e.len() == 2 {
                        doubled.push(*v);
                    }
                }
                Direction::In => self.consumers.entry(*v).or_default().push(li),
            }
        }
        doubled
    }
}

/// Splits repeated defining occurrences of variables. The second defining
/// occurrence of a variable gets a fresh name in the same class, and every
/// other literal that consumes the variable as an input is copied with the
/// fresh name in its input positions. Variables are handled in order of
/// first occurrence, fresh ones after the original ones.
pub fn variable_split(c: &Clause, bias: &LanguageBias) -> SplitResult {
    const LITERAL_CAP: usize = 10_000;
    let mut clause = c.clone();
    let original = clause.vars();
    let mut rank: HashMap<u32, usize> = original.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut class_of: BTreeMap<u32, u32> = original.iter().map(|v| (*v, *v)).collect();
    let mut next = clause.max_var().map_or(0, |m| m + 1);
    let mut occ = Occurrences::default();
    let mut pending: BTreeSet<(usize, u32)> = BTreeSet::new();
    for (i, a) in clause.head.args.iter().enumerate() {
        if let Term::Var(v) = a {
            let e = occ.defs.entry(*v).or_default();
            e.push((None, i));
            if e.len() == 2 {
                pending.insert((rank[v], *v));
            }
        }
    }
    for (li, l) in clause.body.iter().enumerate() {
        for v in occ.add_literal(li, l, bias) {
            pending.insert((rank[&v], v));
        }
    }
    let mut present: HashSet<Atom> = clause.body.iter().cloned().collect();
    while let Some(&(r, v)) = pending.first() {
        let defs = occ.defs.get_mut(&v).expect("pending variables have definitions");
        let (lit, arg) = defs.remove(1);
        if defs.len() < 2 {
            pending.remove(&(r, v));
        }
        let fresh = next;
        next += 1;
        rank.insert(fresh, rank.len());
        class_of.insert(fresh, class_of[&v]);
        occ.defs.insert(fresh, vec![(lit, arg)]);
        match lit {
            None => clause.head.args[arg] = Term::Var(fresh),
            Some(li) => {
                present.remove(&clause.body[li]);
                clause.body[li].args[arg] = Term::Var(fresh);
                present.insert(clause.body[li].clone());
            }
        }
        let mut users = occ.consumers.get(&v).cloned().unwrap_or_default();
        users.dedup();
        let mut copies = Vec::new();
        for li in users {
            if Some(li) == lit {
                continue;
            }
            let l = &clause.body[li];
            let Some(ds) = bias.dirs(&l.key()) else { continue };
            let args = l
                .args
                .iter()
                .zip(ds)
                .map(|(a, d)| if *d == Direction::In && *a == Term::Var(v) { Term::Var(fresh) } else { a.clone() })
                .collect();
            copies.push(Atom { pred: l.pred, args });
        }
        for cp in copies {
            if present.insert(cp.clone()) {
                let li = clause.body.len();
                for u in occ.add_literal(li, &cp, bias) {
                    pending.insert((rank[&u], u));
                }
                clause.body.push(cp);
            }
        }
        if clause.body.len() > LITERAL_CAP {
            log::warn!("variable splitting stopped at {} literals", clause.body.len());
            break;
        }
    }
    let mut classes: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for (v, c) in class_of {
        classes.entry(c).or_default().insert(v);
    }
    SplitResult { clause, classes: classes.into_values().collect() }
}

/// `C(n + j - h, j - h)`: the number of order-preserving partial injections
/// of `n` variables into the `j - h` non-head indices.
pub fn variant_count_bound(n: usize, j: usize, h: usize) -> BigUint {
    let m = j.saturating_sub(h);
    binomial(n + m, m)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Every order-preserving partial injection of the non-head variables of a
/// split clause into the index variables `h..max_vars`, with head variables
/// fixed to `0..h`. A variable absent from a map is dropped together with
/// every literal that mentions it. There are exactly
/// `variant_count_bound(n, max_vars, h)` of them.
pub fn enumerate_substitutions(sr: &SplitResult, max_vars: usize, head_arity: usize) -> Vec<BTreeMap<u32, u32>> {
    let head: Vec<u32> = sr.clause.head_vars();
    let free: Vec<u32> = sr.clause.vars().into_iter().filter(|v| !head.contains(v)).collect();
    let first = head_arity.max(head.len());
    let mut out = Vec::new();
    let mut m: BTreeMap<u32, u32> = head.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
    fn rec(i: usize, next: usize, free: &[u32], max_vars: usize, m: &mut BTreeMap<u32, u32>, out: &mut Vec<BTreeMap<u32, u32>>) {
        if i == free.len() {
            out.push(m.clone());
            return;
        }
        rec(i + 1, next, free, max_vars, m, out);
        for t in next..max_vars {
            m.insert(free[i], t as u32);
            rec(i + 1, t + 1, free, max_vars, m, out);
            m.remove(&free[i]);
        }
    }
    rec(0, first, &free, max_vars, &mut m, &mut out);
    out
}

/// The substitutions `generate_variants` actually applies: one
/// representative per renaming class of the variants that
/// `enumerate_substitutions` yields. Chosen variables take consecutive
/// indices, and only subsets in which every variable occurs in some kept
/// literal are used, since any other subset gives the same variant as a
/// smaller one. Those subsets are exactly the unions of literal variable
/// sets, which is how they are enumerated.
pub fn compact_substitutions(sr: &SplitResult, max_vars: usize, head_arity: usize) -> Vec<BTreeMap<u32, u32>> {
    let pieces = Pieces::new(sr, max_vars, head_arity);
    pieces.subsets(usize::MAX).expect("no limit").iter().map(|s| pieces.map(s)).collect()
}

/// The body literals of a clause grouped by their non-head variables.
struct Pieces {
    head: Vec<u32>,
    slots: usize,
    literals: HashMap<Vec<u32>, Vec<usize>>,
}

impl Pieces {
    fn new(sr: &SplitResult, max_vars: usize, head_arity: usize) -> Pieces {
        let head: Vec<u32> = sr.clause.head_vars();
        let slots = max_vars.saturating_sub(head_arity.max(head.len()));
        let mut literals: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for (i, l) in sr.clause.body.iter().enumerate() {
            let mut vs: Vec<u32> = l.vars().into_iter().filter(|v| !head.contains(v)).collect();
            vs.sort_unstable();
            literals.entry(vs).or_default().push(i);
        }
        Pieces { head, slots, literals }
    }

    /// Every union of pieces with at most `slots` variables, smallest
    /// first; None once there are more than `limit`.
    fn subsets(&self, limit: usize) -> Option<Vec<Vec<u32>>> {
        let pieces: Vec<&Vec<u32>> = self.literals.keys().filter(|p| p.len() <= self.slots).collect();
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); self.slots + 1];
        let mut by_var: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, p) in pieces.iter().enumerate() {
            by_size[p.len()].push(i);
            for v in p.iter() {
                by_var.entry(*v).or_default().push(i);
            }
        }
        let mut found: HashSet<Vec<u32>> = HashSet::from([Vec::new()]);
        let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
        while let Some(s) = frontier.pop() {
            let room = self.slots - s.len();
            if room == 0 {
                continue;
            }
            // a piece that grows `s` either shares a variable with it or
            // fits into the remaining room on its own
            let touching = s.iter().flat_map(|v| by_var.get(v).into_iter().flatten());
            let small = by_size[1..=room].iter().flatten();
            for &i in touching.chain(small) {
                let mut u: Vec<u32> = s.iter().chain(pieces[i]).copied().collect();
                u.sort_unstable();
                u.dedup();
                if u.len() <= self.slots && u.len() > s.len() && found.insert(u.clone()) {
                    frontier.push(u);
                    if found.len() > limit {
                        return None;
                    }
                }
            }
        }
        let mut out: Vec<Vec<u32>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Some(out)
    }

    fn map(&self, subset: &[u32]) -> BTreeMap<u32, u32> {
        let mut m: BTreeMap<u32, u32> = self.head.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        for (i, v) in subset.iter().enumerate() {
            m.insert(*v, (self.head.len() + i) as u32);
        }
        m
    }

    /// Maps of `subset` that may send variables of one equivalence class
    /// to the same index, or onto a head variable of their class. New
    /// indices are handed out in order, the injective map first.
    fn merged_maps(&self, subset: &[u32], class: &HashMap<u32, usize>) -> Vec<BTreeMap<u32, u32>> {
        fn go(
            i: usize,
            subset: &[u32],
            class: &HashMap<u32, usize>,
            targets: &mut Vec<(usize, u32)>,
            m: &mut BTreeMap<u32, u32>,
            out: &mut Vec<BTreeMap<u32, u32>>,
        ) {
            if i == subset.len() {
                out.push(m.clone());
                return;
            }
            let v = subset[i];
            let next = targets.len() as u32;
            targets.push((class[&v], next));
            m.insert(v, next);
            go(i + 1, subset, class, targets, m, out);
            targets.pop();
            let same: Vec<u32> = targets.iter().filter(|(c, _)| *c == class[&v]).map(|(_, t)| *t).collect();
            for t in same {
                m.insert(v, t);
                go(i + 1, subset, class, targets, m, out);
            }
            m.remove(&v);
        }
        let mut m: BTreeMap<u32, u32> = self.head.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        let mut targets: Vec<(usize, u32)> = self.head.iter().enumerate().map(|(i, v)| (class[v], i as u32)).collect();
        let mut out = Vec::new();
        go(0, subset, class, &mut targets, &mut m, &mut out);
        out
    }

    /// `apply_map(c, m)` for a map whose domain is the head plus `subset`,
    /// touching only the literals whose variables lie inside it.
    fn variant(&self, c: &Clause, subset: &[u32], m: &BTreeMap<u32, u32>) -> Clause {
        let rename = |l: &Atom| l.map_vars(&mut |v| Term::Var(m[&v]));
        let mut body = Vec::new();
        for mask in 0u32..(1 << subset.len()) {
            let key: Vec<u32> = subset.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| *v).collect();
            if let Some(ls) = self.literals.get(&key) {
                body.extend(ls.iter().map(|&i| rename(&c.body[i])));
            }
        }
        Clause::new(rename(&c.head), body).normalized()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariantSet {
    pub source: Atom,
    pub polarity: Polarity,
    pub variants: Vec<Clause>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VariantConfig {
    pub max_vars: usize,
    pub splitting: bool,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VariantError {
    #[error("more than {cap} variants for {example}; try disabling variable splitting")]
    CapExceeded { example: String, cap: usize },
}

/// Applies a substitution from either enumeration; literals with an
/// unmapped variable are dropped.
pub fn apply_map(c: &Clause, m: &BTreeMap<u32, u32>) -> Clause {
    let keep = |l: &Atom| l.vars().iter().all(|v| m.contains_key(v));
    let rename = |l: &Atom| l.map_vars(&mut |v| Term::Var(m[&v]));
    let body = c.body.iter().filter(|l| keep(l)).map(rename).collect();
    Clause::new(rename(&c.head), body).normalized()
}

fn variants_of(
    sr: &SplitResult,
    bias: &LanguageBias,
    cfg: &VariantConfig,
    example: &Atom,
    seen: &mut HashSet<Clause>,
    out: &mut Vec<Clause>,
) -> Result<(), VariantError> {
    let pieces = Pieces::new(sr, cfg.max_vars, sr.clause.head.args.len());
    // many substitutions collapse onto one variant, hence the slack
    let subsets = pieces
        .subsets(cfg.cap.saturating_mul(10))
        .ok_or_else(|| VariantError::CapExceeded { example: example.to_string(), cap: cfg.cap })?;
    let class: HashMap<u32, usize> =
        sr.classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |v| (*v, i))).collect();
    for s in subsets {
        for m in pieces.merged_maps(&s, &class) {
            let v = pieces.variant(&sr.clause, &s, &m);
            if !bias.check_clause_with(&v, HeadOutputs::IgnoreHeadOutputs).is_empty() {
                continue;
            }
            if seen.insert(v.clone()) {
                out.push(v);
                if out.len() > cfg.cap {
                    return Err(VariantError::CapExceeded { example: example.to_string(), cap: cfg.cap });
                }
            }
        }
    }
    Ok(())
}

/// The identity variant: variables renumbered in order, literals over
/// indices at or beyond `max_vars` dropped.
pub fn identity_variant(c: &Clause, max_vars: usize) -> Clause {
    let m: BTreeMap<u32, u32> =
        c.vars().into_iter().enumerate().filter(|(i, _)| *i < max_vars).map(|(i, v)| (v, i as u32)).collect();
    apply_map(c, &m)
}

/// All bias-consistent variants of a bottom clause, deduplicated, in a
/// deterministic order. With splitting on, variants of the split clause
/// are followed by those of the unsplit clause, which supply the forms
/// where a whole class collapses back to one variable.
pub fn generate_variants(b: &BottomClause, bias: &LanguageBias, cfg: &VariantConfig) -> Result<VariantSet, VariantError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let identity = identity_variant(&b.clause, cfg.max_vars);
    if b.truncated {
        log::warn!("bottom clause of {} is truncated; using its identity variant only", b.example);
        out.push(identity);
        return Ok(VariantSet { source: b.example.clone(), polarity: b.polarity, variants: out });
    }
    seen.insert(identity.clone());
    out.push(identity);
    if cfg.splitting {
        let sr = variable_split(&b.clause, bias);
        variants_of(&sr, bias, cfg, &b.example, &mut seen, &mut out)?;
    }
    variants_of(&SplitResult::unsplit(&b.clause), bias, cfg, &b.example, &mut seen, &mut out)?;
    Ok(VariantSet { source: b.example.clone(), polarity: b.polarity, variants: out })
}

#[cfg(test)]
mod tests;
