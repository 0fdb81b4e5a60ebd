//! Bottom clause construction: mode-guided saturation through the evaluator
//! and a forward-chaining variant for function-free background knowledge.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::eval::{least_model, Evaluator, ModelError};
use crate::logic::{Atom, Clause, Direction, HeadOutputs, LanguageBias, PredKey, Sym, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "pos",
            Polarity::Negative => "neg",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BottomClause {
    pub example: Atom,
    pub polarity: Polarity,
    pub clause: Clause,
    pub ground_witness: Clause,
    pub depth_used: usize,
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BottomConfig {
    pub depth: usize,
    /// Answers taken per query before the construction is marked truncated.
    pub answer_budget: usize,
    pub literal_cap: usize,
}

impl BottomConfig {
    pub fn for_bias(bias: &LanguageBias) -> BottomConfig {
        BottomConfig { depth: default_variable_depth(bias), answer_budget: 100, literal_cap: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BottomError {
    #[error("example {0} is not over a head-declared predicate")]
    NotHeadDeclared(String),
    #[error("example {0} is not ground")]
    NonGround(String),
    #[error("{0}/{1} lacks a type or direction declaration")]
    MissingMode(String, usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Deepest variable any clause within the variable limit can contain.
pub fn default_variable_depth(bias: &LanguageBias) -> usize {
    bias.limits.max_vars.saturating_sub(1)
}

struct Scheme {
    key: PredKey,
    types: Vec<Sym>,
    dirs: Vec<Direction>,
}

fn scheme(bias: &LanguageBias, k: PredKey) -> Result<Scheme, BottomError> {
    match (bias.type_of(&k), bias.dirs(&k)) {
        (Some(t), Some(d)) if t.len() == k.1 && d.len() == k.1 => {
            Ok(Scheme { key: k, types: t.to_vec(), dirs: d.to_vec() })
        }
        _ => Err(BottomError::MissingMode(k.0.to_string(), k.1)),
    }
}

/// Lifting state: typed ground terms and the variables standing for them.
struct Table {
    vars: HashMap<(Term, Sym), Vec<u32>>,
    /// Terms usable as inputs, by type, with the layer they appeared in.
    avail: HashMap<Sym, Vec<(Term, usize)>>,
    usable: HashSet<(Term, Sym)>,
    /// Head output variables no body literal has output yet; they cannot
    /// fill an input position.
    head_outputs: HashSet<u32>,
    next_var: u32,
}

impl Table {
    fn fresh(&mut self, t: &Term, ty: Sym, layer: usize, usable: bool) -> u32 {
        let v = self.next_var;
        self.next_var += 1;
        self.vars.entry((t.clone(), ty)).or_default().push(v);
        if usable {
            self.make_usable(&(t.clone(), ty), layer);
        }
        v
    }

    /// Registers a term as an input candidate; false if it already was one.
    fn make_usable(&mut self, key: &(Term, Sym), layer: usize) -> bool {
        if !self.usable.insert(key.clone()) {
            return false;
        }
        self.avail.entry(key.1).or_default().push((key.0.clone(), layer));
        true
    }
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Mode-guided bottom clause: layer 0 lifts the example's arguments, each
/// further layer calls every body scheme on the terms seen so far and adds
/// one lifted literal per answer.
pub fn build_bottom_clause_ie(
    ev: &Evaluator,
    bias: &LanguageBias,
    e: &Atom,
    polarity: Polarity,
    cfg: &BottomConfig,
) -> Result<BottomClause, BottomError> {
    let hk = e.key();
    if !bias.is_head(&hk) {
        return Err(BottomError::NotHeadDeclared(e.to_string()));
    }
    if !e.is_ground() {
        return Err(BottomError::NonGround(e.to_string()));
    }
    let head = scheme(bias, hk)?;
    let mut schemes = Vec::new();
    for k in &bias.body_decls {
        if !bias.is_head(k) {
            schemes.push(scheme(bias, *k)?);
        }
    }

    let mut table = Table {
        vars: HashMap::new(),
        avail: HashMap::new(),
        usable: HashSet::new(),
        head_outputs: HashSet::new(),
        next_var: 0,
    };
    let mut head_args = Vec::with_capacity(e.args.len());
    for (i, t) in e.args.iter().enumerate() {
        let usable = head.dirs[i] == Direction::In;
        let v = table.fresh(t, head.types[i], 0, usable);
        if !usable {
            table.head_outputs.insert(v);
        }
        head_args.push(Term::Var(v));
    }
    let lifted_head = Atom { pred: e.pred, args: head_args };

    let mut body: Vec<Atom> = Vec::new();
    let mut body_set: HashSet<Atom> = HashSet::new();
    let mut witness: Vec<Atom> = Vec::new();
    let mut witness_set: HashSet<Atom> = HashSet::new();
    let mut truncated = false;

    'layers: for layer in 1..=cfg.depth {
        let mut added_terms = false;
        for s in &schemes {
            let ins: Vec<usize> = (0..s.key.1).filter(|&i| s.dirs[i] == Direction::In).collect();
            if ins.is_empty() && layer > 1 {
                continue;
            }
            let choices: Vec<Vec<(Term, usize)>> = ins
                .iter()
                .map(|&i| {
                    let terms = table.avail.get(&s.types[i]).map(|v| v.as_slice()).unwrap_or(&[]);
                    terms.iter().filter(|(_, l)| *l < layer).cloned().collect()
                })
                .collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            for combo in cartesian(&choices) {
                // only combinations that involve a term from the previous layer are new
                if !ins.is_empty() && !combo.iter().any(|(_, l)| *l == layer - 1) {
                    continue;
                }
                let mut args = Vec::with_capacity(s.key.1);
                let mut next_in = combo.iter();
                let mut free = 0u32;
                for d in &s.dirs {
                    match d {
                        Direction::In => args.push(next_in.next().unwrap().0.clone()),
                        Direction::Out => {
                            args.push(Term::Var(free));
                            free += 1;
                        }
                    }
                }
                let goal = Atom { pred: s.key.0, args };
                if !ev.knows(&s.key) {
                    continue;
                }
                let (answers, complete) = ev.answers(&goal, cfg.answer_budget);
                if !complete {
                    truncated = true;
                }
                for ans in answers {
                    if !ans.is_ground() {
                        continue;
                    }
                    let mut per_arg: Vec<Vec<u32>> = Vec::with_capacity(ans.args.len());
                    for (i, t) in ans.args.iter().enumerate() {
                        let key = (t.clone(), s.types[i]);
                        match table.vars.get(&key).cloned() {
                            Some(mut vs) => {
                                if table.make_usable(&key, layer) {
                                    added_terms = true;
                                }
                                if s.dirs[i] == Direction::In {
                                    vs.retain(|v| !table.head_outputs.contains(v));
                                }
                                per_arg.push(vs)
                            }
                            None => {
                                let v = table.fresh(t, s.types[i], layer, true);
                                added_terms = true;
                                per_arg.push(vec![v]);
                            }
                        }
                    }
                    if witness_set.insert(ans.clone()) {
                        witness.push(ans.clone());
                    }
                    for vars in cartesian(&per_arg) {
                        for (v, d) in vars.iter().zip(&s.dirs) {
                            if *d == Direction::Out {
                                table.head_outputs.remove(v);
                            }
                        }
                        let lit = Atom { pred: ans.pred, args: vars.into_iter().map(Term::Var).collect() };
                        if body_set.insert(lit.clone()) {
                            body.push(lit);
                            if body.len() >= cfg.literal_cap {
                                truncated = true;
                                break 'layers;
                            }
                        }
                    }
                }
            }
        }
        if !added_terms {
            break;
        }
    }

    let clause = Clause::new(lifted_head, body);
    debug_assert!(
        bias.check_clause_with(&clause, HeadOutputs::IgnoreHeadOutputs).is_empty(),
        "{} {:?}",
        clause,
        bias.check_clause_with(&clause, HeadOutputs::IgnoreHeadOutputs)
    );
    Ok(BottomClause {
        example: e.clone(),
        polarity,
        clause,
        ground_witness: Clause::new(e.clone(), witness),
        depth_used: cfg.depth,
        truncated,
    })
}

/// Bottom clause from the whole least model: every fact of the model is a
/// body literal of the ground witness, then lifted.
pub fn build_bottom_clause_fc(
    bk: &[Clause],
    bias: &LanguageBias,
    e: &Atom,
    polarity: Polarity,
    max_model_size: usize,
) -> Result<BottomClause, BottomError> {
    if !e.is_ground() {
        return Err(BottomError::NonGround(e.to_string()));
    }
    let model = least_model(bk, max_model_size)?;
    let witness = Clause::new(e.clone(), model.into_iter().collect());
    let clause = lift(&witness, bias)?;
    Ok(BottomClause {
        example: e.clone(),
        polarity,
        clause,
        ground_witness: witness,
        depth_used: 0,
        truncated: false,
    })
}

/// Replaces ground terms by variables (equal terms share a variable, head
/// positions always get their own) and drops body literals the bias cannot
/// accept: undeclared predicates, type clashes and inputs that nothing
/// produces.
pub fn lift(ground: &Clause, bias: &LanguageBias) -> Result<Clause, BottomError> {
    let hk = ground.head.key();
    if !bias.is_head(&hk) {
        return Err(BottomError::NotHeadDeclared(ground.head.to_string()));
    }
    let mut var_of: HashMap<Term, u32> = HashMap::new();
    let mut next = 0u32;
    let mut head_args = Vec::new();
    for t in &ground.head.args {
        head_args.push(Term::Var(next));
        var_of.entry(t.clone()).or_insert(next);
        next += 1;
    }
    let head = Atom { pred: ground.head.pred, args: head_args };
    let mut types: HashMap<u32, Sym> = HashMap::new();
    if let Some(ts) = bias.type_of(&hk) {
        for (i, t) in ts.iter().enumerate() {
            types.insert(i as u32, *t);
        }
    }
    let mut bound: HashSet<u32> = HashSet::new();
    if let Some(ds) = bias.dirs(&hk) {
        for (i, d) in ds.iter().enumerate() {
            if *d == Direction::In {
                bound.insert(i as u32);
            }
        }
    }

    let mut candidates: Vec<Atom> = Vec::new();
    let mut seen: BTreeSet<Atom> = BTreeSet::new();
    for l in &ground.body {
        let k = l.key();
        if !bias.is_body(&k) || bias.is_head(&k) {
            continue;
        }
        let args: Vec<Term> = l
            .args
            .iter()
            .map(|t| {
                Term::Var(*var_of.entry(t.clone()).or_insert_with(|| {
                    next += 1;
                    next - 1
                }))
            })
            .collect();
        let lit = Atom { pred: l.pred, args };
        if seen.insert(lit.clone()) {
            candidates.push(lit);
        }
    }

    // keep literals whose inputs become bound, in rounds, checking types
    let mut kept = vec![false; candidates.len()];
    loop {
        let mut progress = false;
        for (i, lit) in candidates.iter().enumerate() {
            if kept[i] {
                continue;
            }
            let k = lit.key();
            let (Some(ts), Some(ds)) = (bias.type_of(&k), bias.dirs(&k)) else { continue };
            let vars: Vec<u32> = lit.args.iter().map(|a| if let Term::Var(v) = a { *v } else { unreachable!() }).collect();
            let inputs_ok = vars.iter().zip(ds).all(|(v, d)| *d == Direction::Out || bound.contains(v));
            let types_ok = vars.iter().zip(ts).all(|(v, t)| types.get(v).map_or(true, |t0| t0 == t));
            // a variable repeated within the literal needs one type
            let self_ok = vars.iter().enumerate().all(|(i, v)| vars[..i].iter().zip(ts).all(|(w, u)| w != v || *u == ts[i]));
            if inputs_ok && types_ok && self_ok {
                kept[i] = true;
                progress = true;
                for (v, t) in vars.iter().zip(ts) {
                    types.insert(*v, *t);
                    bound.insert(*v);
                }
            }
        }
        if !progress {
            break;
        }
    }
    let body = candidates.into_iter().zip(kept).filter(|(_, k)| *k).map(|(l, _)| l).collect();
    let c = Clause::new(head, body);
    Ok(crate::logic::renumber(&c))
}

#[cfg(test)]
mod tests;
