//! Reference implementations used as oracles by the integration tests.
//! Each one is deliberately naive and shares no code with the library
//! beyond the term types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use ilp_bottom::logic::{Atom, Clause, Term};

/// Literal-by-literal backtracking search for a substitution mapping `c1`
/// into `c2`: the head onto the head, every body literal onto some body
/// literal.
pub fn subsumes(c1: &Clause, c2: &Clause) -> bool {
    let mut theta = HashMap::new();
    if !match_atom(&c1.head, &c2.head, &mut theta) {
        return false;
    }
    fn go(i: usize, body: &[Atom], target: &[Atom], theta: &mut HashMap<u32, Term>) -> bool {
        if i == body.len() {
            return true;
        }
        for t in target {
            let saved = theta.clone();
            if match_atom(&body[i], t, theta) && go(i + 1, body, target, theta) {
                return true;
            }
            *theta = saved;
        }
        false
    }
    go(0, &c1.body, &c2.body, &mut theta)
}

fn match_atom(a: &Atom, b: &Atom, theta: &mut HashMap<u32, Term>) -> bool {
    a.pred == b.pred && a.args.len() == b.args.len() && a.args.iter().zip(&b.args).all(|(x, y)| match_term(x, y, theta))
}

fn match_term(x: &Term, y: &Term, theta: &mut HashMap<u32, Term>) -> bool {
    match x {
        Term::Var(v) => match theta.get(v) {
            Some(t) => t == y,
            None => {
                theta.insert(*v, y.clone());
                true
            }
        },
        Term::Compound(f, xs) => match y {
            Term::Compound(g, ys) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys.iter()).all(|(a, b)| match_term(a, b, theta))
            }
            _ => false,
        },
        _ => x == y,
    }
}

fn rename(c: &Clause, perm: &BTreeMap<u32, u32>) -> (Atom, BTreeSet<Atom>) {
    let f = &mut |v: u32| Term::Var(perm[&v]);
    (c.head.map_vars(f), c.body.iter().map(|l| l.map_vars(f)).collect())
}

/// Whether some bijection of variables makes the two clauses equal as a
/// head plus a set of body literals. Tries every permutation.
pub fn same_up_to_renaming(a: &Clause, b: &Clause) -> bool {
    let va = a.vars();
    let vb = b.vars();
    if va.len() != vb.len() {
        return false;
    }
    let target = (b.head.clone(), b.body.iter().cloned().collect::<BTreeSet<_>>());
    let mut idx: Vec<usize> = (0..vb.len()).collect();
    loop {
        let perm: BTreeMap<u32, u32> = va.iter().zip(&idx).map(|(v, &i)| (*v, vb[i])).collect();
        if rename(a, &perm) == target {
            return true;
        }
        if !next_permutation(&mut idx) {
            return false;
        }
    }
}

pub fn same_program(a: &[Clause], b: &[Clause]) -> bool {
    a.len() == b.len() && a.iter().all(|c| b.iter().any(|d| same_up_to_renaming(c, d)))
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Variable depth by fixpoint: head variables 0, any other variable one
/// more than the shallowest variable it shares a literal with.
pub fn depths(c: &Clause) -> BTreeMap<u32, usize> {
    let mut d: BTreeMap<u32, usize> = c.head.vars().into_iter().map(|v| (v, 0)).collect();
    loop {
        let mut changed = false;
        for l in &c.body {
            let vs = l.vars();
            for &v in &vs {
                let best = vs.iter().filter(|&&u| u != v).filter_map(|u| d.get(u)).min().map(|m| m + 1);
                if let Some(b) = best {
                    let cur = d.get(&v).copied();
                    if cur.map_or(true, |x| b < x) {
                        d.insert(v, b);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return d;
        }
    }
}

/// `C(n, k)` from Pascal's triangle.
pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

/// Number of hypotheses by explicit construction: a literal is a
/// predicate with a tuple of variable indices below `v`; a clause is a
/// head literal with a set of 1..=`m` body literals; a hypothesis is a set
/// of 1..=`n` distinct clauses.
pub fn count_hypotheses(head_arities: &[usize], body_arities: &[usize], v: usize, m: usize, n: usize) -> u128 {
    fn tuples(a: usize, v: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..a {
            out = out.into_iter().flat_map(|t| (0..v).map(move |x| [t.clone(), vec![x]].concat())).collect();
        }
        out
    }
    let lits = |arities: &[usize]| -> Vec<(usize, Vec<usize>)> {
        arities.iter().enumerate().flat_map(|(p, &a)| tuples(a, v).into_iter().map(move |t| (p, t))).collect()
    };
    let heads = lits(head_arities);
    let body = lits(body_arities);
    let mut bodies: Vec<Vec<usize>> = vec![vec![]];
    let mut all_bodies = 0u128;
    for _ in 0..m {
        let mut next = Vec::new();
        for b in &bodies {
            let start = b.last().map_or(0, |x| x + 1);
            for i in start..body.len() {
                next.push([b.clone(), vec![i]].concat());
            }
        }
        all_bodies += next.len() as u128;
        bodies = next;
    }
    let clauses = heads.len() as u128 * all_bodies;
    fn subsets(from: u128, items: u128, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        (from..items).map(|i| subsets(i + 1, items, left - 1)).sum()
    }
    (1..=n).map(|j| subsets(0, clauses, j)).sum()
}
