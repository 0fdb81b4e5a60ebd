use std::collections::{BTreeSet, HashMap};

use crate::logic::{unify_terms, Atom, Clause, PredKey, Substitution, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("clause is not function-free: {0}")]
    NotFunctionFree(String),
    #[error("clause is not range-restricted: {0}")]
    NotRangeRestricted(String),
    #[error("model exceeds {0} atoms")]
    TooLarge(usize),
}

fn extend(
    body: &[Atom],
    facts: &HashMap<PredKey, Vec<Atom>>,
    s: Substitution,
    out: &mut Vec<Substitution>,
) {
    let Some((first, rest)) = body.split_first() else {
        out.push(s);
        return;
    };
    let goal = s.apply_atom(first);
    if let Some(cands) = facts.get(&goal.key()) {
        for f in cands {
            let mut s2 = s.clone();
            if goal.args.iter().zip(&f.args).all(|(a, b)| unify_terms(a, b, &mut s2)) {
                extend(rest, facts, s2, out);
            }
        }
    }
}

/// Least Herbrand model by naive forward chaining.
pub fn least_model(b: &[Clause], max_size: usize) -> Result<BTreeSet<Atom>, ModelError> {
    for c in b {
        let compound = |a: &Atom| a.args.iter().any(|t| matches!(t, Term::Compound(..)));
        if compound(&c.head) || c.body.iter().any(compound) {
            return Err(ModelError::NotFunctionFree(c.to_string()));
        }
        let body_vars: BTreeSet<u32> = c.body.iter().flat_map(|a| a.vars()).collect();
        if c.head.vars().iter().any(|v| !body_vars.contains(v)) {
            return Err(ModelError::NotRangeRestricted(c.to_string()));
        }
    }
    let mut model: BTreeSet<Atom> = BTreeSet::new();
    let mut facts: HashMap<PredKey, Vec<Atom>> = HashMap::new();
    loop {
        let mut new = Vec::new();
        for c in b {
            let mut sols = Vec::new();
            extend(&c.body, &facts, Substitution::new(), &mut sols);
            for s in sols {
                let h = s.apply_atom(&c.head);
                if !model.contains(&h) && !new.contains(&h) {
                    new.push(h);
                }
            }
        }
        if new.is_empty() {
            return Ok(model);
        }
        for h in new {
            facts.entry(h.key()).or_default().push(h.clone());
            model.insert(h);
            if model.len() > max_size {
                return Err(ModelError::TooLarge(max_size));
            }
        }
    }
}
