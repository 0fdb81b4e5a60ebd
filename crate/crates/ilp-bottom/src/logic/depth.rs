use std::collections::BTreeMap;

use super::term::Clause;

/// Variable depth: 0 in the head, otherwise one more than the shallowest
/// distinct variable it shares a body literal with. A literal whose only
/// variable is `v` counts as a link to depth 0 (it needs no inputs), so
/// such variables have depth at most 1.
pub fn variable_depths(c: &Clause) -> BTreeMap<u32, usize> {
    let mut depth: BTreeMap<u32, usize> = BTreeMap::new();
    for v in c.head_vars() {
        depth.insert(v, 0);
    }
    let lits: Vec<Vec<u32>> = c.body.iter().map(|b| b.vars()).collect();
    let all = c.vars();
    let mut changed = true;
    while changed {
        changed = false;
        for vars in &lits {
            for &v in vars {
                if depth.get(&v) == Some(&0) {
                    continue;
                }
                let alone = vars.iter().all(|&w| w == v);
                let best = if alone {
                    Some(1)
                } else {
                    vars.iter().filter(|&&w| w != v).filter_map(|w| depth.get(w)).min().map(|d| d + 1)
                };
                if let Some(d) = best {
                    if depth.get(&v).map_or(true, |cur| d < *cur) {
                        depth.insert(v, d);
                        changed = true;
                    }
                }
            }
        }
    }
    // Variables in components that never touch the head or a single-variable
    // literal have no finite minimum; they are ranked at depth 1.
    for v in all {
        depth.entry(v).or_insert(1);
    }
    depth
}

pub fn max_depth(c: &Clause) -> usize {
    variable_depths(c).values().copied().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::term::{Atom, Term};

    fn v(i: u32) -> Term {
        Term::Var(i)
    }

    #[test]
    fn middle_empty() {
        let c = Clause::new(
            Atom::new("palindrome", vec![v(0)]),
            vec![Atom::new("middle", vec![v(0), v(3)]), Atom::new("empty", vec![v(3)])],
        );
        let d = variable_depths(&c);
        assert_eq!(d[&0], 0);
        assert_eq!(d[&3], 1);
    }

    #[test]
    fn head_only() {
        let c = Clause::fact(Atom::new("p", vec![v(0), v(1)]));
        let d = variable_depths(&c);
        assert_eq!((d[&0], d[&1]), (0, 0));
    }

    #[test]
    fn chain() {
        let c = Clause::new(
            Atom::new("p", vec![v(0)]),
            vec![
                Atom::new("q", vec![v(0), v(1)]),
                Atom::new("q", vec![v(1), v(2)]),
                Atom::new("q", vec![v(2), v(3)]),
            ],
        );
        let d = variable_depths(&c);
        assert_eq!(d.values().copied().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(max_depth(&c), c.vars().len() - 1);
    }

    #[test]
    fn single_variable_literal_caps_depth() {
        let c = Clause::new(
            Atom::new("p", vec![v(0)]),
            vec![
                Atom::new("middle", vec![v(0), v(1)]),
                Atom::new("middle", vec![v(1), v(2)]),
                Atom::new("empty", vec![v(2)]),
                Atom::new("length", vec![v(2), v(3)]),
            ],
        );
        let d = variable_depths(&c);
        assert_eq!((d[&1], d[&2], d[&3]), (1, 1, 2));
    }

    #[test]
    fn isolated_out_only() {
        let c = Clause::new(Atom::new("p", vec![v(0)]), vec![Atom::new("one", vec![v(4)])]);
        assert_eq!(variable_depths(&c)[&4], 1);
    }
}
