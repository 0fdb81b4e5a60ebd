use std::fmt::Write as _;

use crate::logic::{Direction, LanguageBias, PredKey, Sym, Term};

use super::parse::{parse_clauses, tuple_functor};
use super::IoError;

fn bias_err(msg: impl Into<String>) -> IoError {
    IoError::Bias(msg.into())
}

fn ident(t: &Term, what: &str) -> Result<Sym, IoError> {
    match t {
        Term::Const(s) => Ok(*s),
        other => Err(bias_err(format!("expected {} name, found {}", what, other))),
    }
}

fn positive(t: &Term, what: &str) -> Result<usize, IoError> {
    match t {
        Term::Int(n) if *n > 0 => Ok(*n as usize),
        Term::Int(0) if what == "arity" => Ok(0),
        other => Err(bias_err(format!("expected positive integer for {}, found {}", what, other))),
    }
}

fn tuple(t: &Term) -> Result<Vec<Term>, IoError> {
    match t {
        Term::Compound(f, args) if *f == tuple_functor() => Ok(args.to_vec()),
        // a bare name is accepted as a one-element tuple
        Term::Const(_) => Ok(vec![t.clone()]),
        other => Err(bias_err(format!("expected a tuple, found {}", other))),
    }
}

/// Parses `head_pred/body_pred/type/direction` facts and search settings.
pub fn parse_bias(text: &str) -> Result<LanguageBias, IoError> {
    let clauses = parse_clauses(text)?;
    let mut b = LanguageBias::default();
    let mut types: Vec<(Sym, Vec<Sym>)> = Vec::new();
    let mut dirs: Vec<(Sym, Vec<Direction>)> = Vec::new();
    let mut settings: [Option<usize>; 3] = [None; 3];
    for c in clauses {
        if !c.body.is_empty() {
            return Err(bias_err(format!("bias entries must be facts: {}", c)));
        }
        let h = &c.head;
        match (h.pred.as_str(), h.args.len()) {
            ("head_pred", 2) => {
                b.head_decls.insert((ident(&h.args[0], "predicate")?, positive(&h.args[1], "arity")?));
            }
            ("body_pred", 2) => {
                b.body_decls.insert((ident(&h.args[0], "predicate")?, positive(&h.args[1], "arity")?));
            }
            ("type", 2) => {
                let p = ident(&h.args[0], "predicate")?;
                let ts = tuple(&h.args[1])?.iter().map(|t| ident(t, "type")).collect::<Result<Vec<_>, _>>()?;
                types.push((p, ts));
            }
            ("direction", 2) => {
                let p = ident(&h.args[0], "predicate")?;
                let ds = tuple(&h.args[1])?
                    .iter()
                    .map(|t| match ident(t, "direction")?.as_str() {
                        "in" => Ok(Direction::In),
                        "out" => Ok(Direction::Out),
                        other => Err(bias_err(format!("unknown direction '{}'", other))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                dirs.push((p, ds));
            }
            ("max_vars", 1) => set(&mut settings[0], positive(&h.args[0], "max_vars")?, "max_vars")?,
            ("max_clauses", 1) => set(&mut settings[1], positive(&h.args[0], "max_clauses")?, "max_clauses")?,
            ("max_body", 1) => set(&mut settings[2], positive(&h.args[0], "max_body")?, "max_body")?,
            ("enable_recursion", 0) => b.recursion = true,
            (p, n) => return Err(bias_err(format!("unknown declaration {}/{}", p, n))),
        }
    }
    if b.head_decls.is_empty() {
        return Err(bias_err("no head_pred declaration"));
    }
    let declared: Vec<PredKey> = b.head_decls.iter().chain(b.body_decls.iter()).copied().collect();
    let resolve = |p: Sym, n: usize, kind: &str| -> Result<PredKey, IoError> {
        if declared.contains(&(p, n)) {
            return Ok((p, n));
        }
        match declared.iter().find(|k| k.0 == p) {
            Some(k) => Err(bias_err(format!(
                "{} declaration for {} has {} entries but {}/{} is declared",
                kind, p, n, p, k.1
            ))),
            None => Err(bias_err(format!("{} declaration for undeclared predicate {}/{}", kind, p, n))),
        }
    };
    for (p, ts) in types {
        let k = resolve(p, ts.len(), "type")?;
        if let Some(prev) = b.types.get(&k) {
            if *prev != ts {
                return Err(bias_err(format!("conflicting type declarations for {}/{}", k.0, k.1)));
            }
        }
        b.types.insert(k, ts);
    }
    for (p, ds) in dirs {
        let k = resolve(p, ds.len(), "direction")?;
        if let Some(prev) = b.directions.get(&k) {
            if *prev != ds {
                return Err(bias_err(format!("conflicting direction declarations for {}/{}", k.0, k.1)));
            }
        }
        b.directions.insert(k, ds);
    }
    let d = crate::logic::Limits::default();
    b.limits.max_vars = settings[0].unwrap_or(d.max_vars);
    b.limits.max_clauses = settings[1].unwrap_or(d.max_clauses);
    b.limits.max_body = settings[2].unwrap_or(d.max_body);
    Ok(b)
}

fn set(slot: &mut Option<usize>, v: usize, name: &str) -> Result<(), IoError> {
    match slot {
        Some(prev) if *prev != v => Err(bias_err(format!("conflicting {} settings", name))),
        _ => {
            *slot = Some(v);
            Ok(())
        }
    }
}

fn tuple_text<T: std::fmt::Display>(xs: &[T]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    if inner.len() == 1 {
        format!("({},)", inner[0])
    } else {
        format!("({})", inner.join(","))
    }
}

/// Text form accepted by `parse_bias`.
pub fn render_bias(b: &LanguageBias) -> String {
    let mut s = String::new();
    for (p, n) in &b.head_decls {
        let _ = writeln!(s, "head_pred({},{}).", p, n);
    }
    for (p, n) in &b.body_decls {
        let _ = writeln!(s, "body_pred({},{}).", p, n);
    }
    for ((p, _), ts) in &b.types {
        let _ = writeln!(s, "type({},{}).", p, tuple_text(ts));
    }
    for ((p, _), ds) in &b.directions {
        let _ = writeln!(s, "direction({},{}).", p, tuple_text(ds));
    }
    let _ = writeln!(s, "max_vars({}).", b.limits.max_vars);
    let _ = writeln!(s, "max_clauses({}).", b.limits.max_clauses);
    let _ = writeln!(s, "max_body({}).", b.limits.max_body);
    if b.recursion {
        let _ = writeln!(s, "enable_recursion.");
    }
    s
}
