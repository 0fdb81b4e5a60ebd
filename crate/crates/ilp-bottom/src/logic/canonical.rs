//! Canonical representatives of clauses modulo variable renaming and body
//! order. Head variables are numbered by first occurrence; the remaining
//! variables are labelled by colour refinement with branching on ties, and
//! the lexicographically least sorted encoding wins.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::term::{Atom, Clause, Term};

fn hash_term(t: &Term, me: u32, colors: &HashMap<u32, u64>, h: &mut DefaultHasher) {
    match t {
        Term::Var(v) if *v == me => 0u8.hash(h),
        Term::Var(v) => {
            1u8.hash(h);
            colors[v].hash(h);
        }
        Term::Const(s) => {
            2u8.hash(h);
            s.as_str().hash(h);
        }
        Term::Int(i) => {
            3u8.hash(h);
            i.hash(h);
        }
        Term::Compound(f, args) => {
            4u8.hash(h);
            f.as_str().hash(h);
            args.len().hash(h);
            for a in args.iter() {
                hash_term(a, me, colors, h);
            }
        }
    }
}

fn literal_sig(a: &Atom, is_head: bool, me: u32, colors: &HashMap<u32, u64>) -> u64 {
    let mut h = DefaultHasher::new();
    is_head.hash(&mut h);
    a.pred.as_str().hash(&mut h);
    a.args.len().hash(&mut h);
    for t in &a.args {
        hash_term(t, me, colors, &mut h);
    }
    h.finish()
}

struct Occ {
    lits: Vec<(usize, bool)>,
}

fn refine(c: &Clause, occ: &HashMap<u32, Occ>, mut colors: HashMap<u32, u64>, fixed: &HashMap<u32, u64>) -> HashMap<u32, u64> {
    let count = |m: &HashMap<u32, u64>| {
        let mut v: Vec<u64> = m.values().copied().collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    let mut classes = count(&colors);
    loop {
        let mut next = HashMap::with_capacity(colors.len());
        for (&v, o) in occ {
            if let Some(&f) = fixed.get(&v) {
                next.insert(v, f);
                continue;
            }
            let mut sigs: Vec<u64> = o
                .lits
                .iter()
                .map(|&(i, head)| {
                    let lit = if head { &c.head } else { &c.body[i] };
                    literal_sig(lit, head, v, &colors)
                })
                .collect();
            sigs.sort_unstable();
            let mut h = DefaultHasher::new();
            colors[&v].hash(&mut h);
            sigs.hash(&mut h);
            next.insert(v, h.finish());
        }
        let n = count(&next);
        colors = next;
        if n <= classes {
            return colors;
        }
        classes = n;
    }
}

fn encode(c: &Clause, labels: &HashMap<u32, u32>) -> Clause {
    c.map_vars(&mut |v| Term::Var(labels[&v])).normalized()
}

fn search(
    c: &Clause,
    occ: &HashMap<u32, Occ>,
    colors: HashMap<u32, u64>,
    fixed: HashMap<u32, u64>,
    labels: HashMap<u32, u32>,
    best: &mut Option<Clause>,
) {
    let unlabeled: Vec<u32> = {
        let mut u: Vec<u32> = occ.keys().copied().filter(|v| !labels.contains_key(v)).collect();
        u.sort_unstable();
        u
    };
    if unlabeled.is_empty() {
        let cand = encode(c, &labels);
        if best.as_ref().map_or(true, |b| cand < *b) {
            *best = Some(cand);
        }
        return;
    }
    let min_color = unlabeled.iter().map(|v| colors[v]).min().unwrap();
    let tied: Vec<u32> = unlabeled.iter().copied().filter(|v| colors[v] == min_color).collect();
    let next_label = labels.len() as u32;
    for v in tied {
        let mut labels2 = labels.clone();
        labels2.insert(v, next_label);
        let mut fixed2 = fixed.clone();
        let mut h = DefaultHasher::new();
        ("label", next_label).hash(&mut h);
        fixed2.insert(v, h.finish());
        let mut colors2 = colors.clone();
        colors2.insert(v, fixed2[&v]);
        let refined = refine(c, occ, colors2, &fixed2);
        search(c, occ, refined, fixed2, labels2, best);
    }
}

/// Deterministic representative: equal for alphabetic variants and body
/// permutations. Duplicate body literals are collapsed.
pub fn canonical_form(c: &Clause) -> Clause {
    let c = &c.normalized();
    let mut labels: HashMap<u32, u32> = HashMap::new();
    for v in c.head_vars() {
        let n = labels.len() as u32;
        labels.insert(v, n);
    }
    let all = c.vars();
    let free: Vec<u32> = all.iter().copied().filter(|v| !labels.contains_key(v)).collect();
    if free.len() <= 1 {
        for v in free {
            let n = labels.len() as u32;
            labels.insert(v, n);
        }
        return encode(c, &labels);
    }
    let mut occ: HashMap<u32, Occ> = all.iter().map(|&v| (v, Occ { lits: Vec::new() })).collect();
    for v in c.head.vars() {
        occ.get_mut(&v).unwrap().lits.push((0, true));
    }
    for (i, b) in c.body.iter().enumerate() {
        for v in b.vars() {
            occ.get_mut(&v).unwrap().lits.push((i, false));
        }
    }
    let mut fixed = HashMap::new();
    let mut colors = HashMap::new();
    for &v in &all {
        let mut h = DefaultHasher::new();
        match labels.get(&v) {
            Some(l) => {
                ("head", *l).hash(&mut h);
                fixed.insert(v, h.finish());
            }
            None => "free".hash(&mut h),
        }
        colors.insert(v, h.finish());
    }
    let colors = refine(c, &occ, colors, &fixed);
    let mut best = None;
    search(c, &occ, colors, fixed, labels, &mut best);
    best.expect("at least one labelling")
}

/// Renames variables to 0.. in order of first occurrence without sorting.
pub fn renumber(c: &Clause) -> Clause {
    let mut map = HashMap::new();
    for v in c.vars() {
        let n = map.len() as u32;
        map.insert(v, n);
    }
    c.map_vars(&mut |v| Term::Var(map[&v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Term {
        Term::Var(i)
    }

    fn cl(head: Atom, body: Vec<Atom>) -> Clause {
        Clause::new(head, body)
    }

    #[test]
    fn alphabetic_variants_agree() {
        let a = cl(Atom::new("p", vec![v(23)]), vec![Atom::new("q", vec![v(23), v(24)])]);
        let b = cl(Atom::new("p", vec![v(0)]), vec![Atom::new("q", vec![v(0), v(1)])]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn body_reorder_agrees() {
        let a = cl(
            Atom::new("p", vec![v(0)]),
            vec![Atom::new("q", vec![v(0), v(1)]), Atom::new("r", vec![v(1)])],
        );
        let b = cl(
            Atom::new("p", vec![v(0)]),
            vec![Atom::new("r", vec![v(1)]), Atom::new("q", vec![v(0), v(1)])],
        );
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn duplicate_literals_do_not_matter() {
        let p = |a, b| Atom::new("p", vec![v(a), v(b)]);
        let a = cl(Atom::new("f", vec![v(0)]), vec![p(1, 2), p(4, 0), p(4, 0)]);
        let b = cl(Atom::new("f", vec![v(0)]), vec![p(1, 2), p(4, 0)]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn distinguishes_structure() {
        let a = cl(
            Atom::new("p", vec![v(0)]),
            vec![Atom::new("q", vec![v(0), v(1)]), Atom::new("r", vec![v(1)])],
        );
        let b = cl(
            Atom::new("p", vec![v(0)]),
            vec![Atom::new("q", vec![v(0), v(1)]), Atom::new("r", vec![v(2)])],
        );
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn idempotent() {
        let a = cl(
            Atom::new("f", vec![v(4), v(2)]),
            vec![
                Atom::new("q", vec![v(4), v(7)]),
                Atom::new("q", vec![v(2), v(9)]),
                Atom::new("r", vec![v(7), v(9)]),
            ],
        );
        let c1 = canonical_form(&a);
        assert_eq!(canonical_form(&c1), c1);
    }
}
