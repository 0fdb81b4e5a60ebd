use std::fmt::Write as _;

use crate::logic::Clause;

use super::parse::parse_clauses;
use super::IoError;

/// Background knowledge: definite clauses and facts. Negated body literals
/// are rejected by the parser.
pub fn parse_bk(text: &str) -> Result<Vec<Clause>, IoError> {
    parse_clauses(text)
}

pub fn render_bk(bk: &[Clause]) -> String {
    let mut s = String::new();
    for c in bk {
        let _ = writeln!(s, "{}", c);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn train_listing() {
        let text = "
train(t3). has_car(t3,c31). has_car(t3,c32).
short(c31). long(c32). two_wheels(c31). three_wheels(c32).
roof_open(c31). roof_closed(c32).
has_load(c31,l311). has_load(c32,l321).
triangle(l311). circle(l321).
";
        assert_eq!(parse_bk(text).unwrap().len(), 13);
    }

    #[test]
    fn last_with_patterns() {
        let bk = parse_bk("last([H],H).\nlast([_|T],X):-last(T,X).").unwrap();
        assert_eq!(bk.len(), 2);
        assert!(bk[1].is_recursive());
    }

    #[test]
    fn negation_rejected() {
        assert!(matches!(parse_bk("p(X) :- \\+ q(X)."), Err(IoError::NonDefinite { .. })));
    }

    #[test]
    fn round_trip() {
        let bk = parse_bk("app([],L,L).\napp([H|T],L,[H|R]):-app(T,L,R).\nn(-3).").unwrap();
        assert_eq!(parse_bk(&render_bk(&bk)).unwrap(), bk);
    }
}
