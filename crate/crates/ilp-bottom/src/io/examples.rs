use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::logic::Atom;

use super::parse::parse_clauses;
use super::IoError;

/// Splits `pos(..)` / `neg(..)` facts into the two example sets.
pub fn parse_examples(text: &str) -> Result<(BTreeSet<Atom>, BTreeSet<Atom>), IoError> {
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    for c in parse_clauses(text)? {
        if !c.body.is_empty() {
            return Err(IoError::Example(format!("examples must be facts: {}", c)));
        }
        let wrapper = c.head.pred.as_str();
        let target = match wrapper {
            "pos" => &mut pos,
            "neg" => &mut neg,
            other => return Err(IoError::Example(format!("unknown wrapper '{}'", other))),
        };
        if c.head.args.len() != 1 {
            return Err(IoError::Example(format!("{} takes exactly one atom", wrapper)));
        }
        let atom = Atom::try_from(&c.head.args[0])
            .map_err(|_| IoError::Example(format!("not an atom: {}", c.head.args[0])))?;
        if !atom.is_ground() {
            return Err(IoError::Example(format!("non-ground example {}", atom)));
        }
        target.insert(atom);
    }
    Ok((pos, neg))
}

pub fn render_examples(pos: &BTreeSet<Atom>, neg: &BTreeSet<Atom>) -> String {
    let mut s = String::new();
    for a in pos {
        let _ = writeln!(s, "pos({}).", a);
    }
    for a in neg {
        let _ = writeln!(s, "neg({}).", a);
    }
    s
}
