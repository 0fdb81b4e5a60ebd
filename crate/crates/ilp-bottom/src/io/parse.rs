//! Tokenizer and clause parser shared by the bias, background and example
//! formats.

use std::collections::HashMap;

use crate::logic::{Atom, Clause, Sym, Term};

use super::IoError;

/// Compound terms nested deeper than this are rejected.
pub const MAX_NESTING: usize = 256;

/// Functor used for parenthesised tuples such as `(list,element)`.
pub fn tuple_functor() -> Sym {
    Sym::new(",")
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Bar,
    Dot,
    Neck,
    Negation,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> IoError {
    IoError::Syntax { line, col, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, IoError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let bump = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => bump(1, &mut i, &mut col),
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, line: l0, col: c0 });
                bump(1, &mut i, &mut col)
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, line: l0, col: c0 });
                bump(1, &mut i, &mut col)
            }
            '[' => {
                out.push(Spanned { tok: Tok::LBrack, line: l0, col: c0 });
                bump(1, &mut i, &mut col)
            }
            ']' => {
                out.push(Spanned { tok: Tok::RBrack, line: l0, col: c0 });
                bump(1, &mut i, &mut col)
            }
            ',' => {
                out.push(Spanned { tok: Tok::Comma, line: l0, col: c0 });
                bump(1, &mut i, &mut col)
            }
            '|' => {
                out.push(Spanned { tok: Tok::Bar, line: l0, col: c0 });
                bump(1, &mut i, &mut col)
            }
            '.' => {
                out.push(Spanned { tok: Tok::Dot, line: l0, col: c0 });
                bump(1, &mut i, &mut col)
            }
            ':' if chars.get(i + 1) == Some(&'-') => {
                out.push(Spanned { tok: Tok::Neck, line: l0, col: c0 });
                bump(2, &mut i, &mut col)
            }
            '\\' if chars.get(i + 1) == Some(&'+') => {
                out.push(Spanned { tok: Tok::Negation, line: l0, col: c0 });
                bump(2, &mut i, &mut col)
            }
            c if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).map_or(false, |d| d.is_ascii_digit())) => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let n = s.parse::<i64>().map_err(|_| err(l0, c0, format!("integer out of range: {}", s)))?;
                out.push(Spanned { tok: Tok::Int(n), line: l0, col: c0 });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = if c.is_ascii_lowercase() { Tok::Ident(s) } else { Tok::Var(s) };
                out.push(Spanned { tok, line: l0, col: c0 });
            }
            other => return Err(err(l0, c0, format!("unexpected character '{}'", other))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    vars: HashMap<String, u32>,
    next_var: u32,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, IoError> {
        let (l, c) = self.here();
        Err(err(l, c, msg))
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), IoError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {}", what))
        }
    }

    fn var(&mut self, name: &str) -> Term {
        if name == "_" {
            let v = self.next_var;
            self.next_var += 1;
            return Term::Var(v);
        }
        if let Some(v) = self.vars.get(name) {
            return Term::Var(*v);
        }
        let v = self.next_var;
        self.next_var += 1;
        self.vars.insert(name.to_string(), v);
        Term::Var(v)
    }

    fn term(&mut self, depth: usize) -> Result<Term, IoError> {
        if depth > MAX_NESTING {
            return self.fail("term nesting too deep");
        }
        let Some(tok) = self.peek().cloned() else {
            return self.fail("unexpected end of input");
        };
        match tok {
            Tok::Var(name) => {
                self.pos += 1;
                Ok(self.var(&name))
            }
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Term::Int(n))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let args = self.args(depth + 1, Tok::RParen)?;
                    Ok(Term::Compound(Sym::new(&name), args.into()))
                } else {
                    Ok(Term::Const(Sym::new(&name)))
                }
            }
            Tok::LBrack => {
                self.pos += 1;
                if self.peek() == Some(&Tok::RBrack) {
                    self.pos += 1;
                    return Ok(Term::list(vec![], None));
                }
                let mut items = vec![self.term(depth + 1)?];
                let mut tail = None;
                loop {
                    match self.peek() {
                        Some(Tok::Comma) => {
                            self.pos += 1;
                            items.push(self.term(depth + 1)?);
                        }
                        Some(Tok::Bar) => {
                            self.pos += 1;
                            tail = Some(self.term(depth + 1)?);
                            self.expect(Tok::RBrack, "']'")?;
                            break;
                        }
                        Some(Tok::RBrack) => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.fail("expected ',', '|' or ']' in list"),
                    }
                }
                Ok(Term::list(items, tail))
            }
            Tok::LParen => {
                self.pos += 1;
                let mut items = vec![self.term(depth + 1)?];
                loop {
                    match self.peek() {
                        Some(Tok::Comma) => {
                            self.pos += 1;
                            if self.peek() == Some(&Tok::RParen) {
                                self.pos += 1;
                                break;
                            }
                            items.push(self.term(depth + 1)?);
                        }
                        Some(Tok::RParen) => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.fail("expected ',' or ')' in tuple"),
                    }
                }
                Ok(Term::Compound(tuple_functor(), items.into()))
            }
            Tok::Negation => self.fail("negation is not allowed in definite programs"),
            _ => self.fail("expected a term"),
        }
    }

    fn args(&mut self, depth: usize, close: Tok) -> Result<Vec<Term>, IoError> {
        let mut out = vec![self.term(depth)?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                    out.push(self.term(depth)?);
                }
                Some(t) if *t == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.fail("expected ',' or ')'"),
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, IoError> {
        if self.peek() == Some(&Tok::Negation) {
            return Err(IoError::NonDefinite {
                line: self.here().0,
                msg: "negated body literal".into(),
            });
        }
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    self.args(1, Tok::RParen)?
                } else {
                    Vec::new()
                };
                Ok(Atom { pred: Sym::new(&name), args })
            }
            _ => self.fail("expected an atom"),
        }
    }

    fn clause(&mut self) -> Result<Clause, IoError> {
        self.vars.clear();
        self.next_var = 0;
        if self.peek() == Some(&Tok::Neck) {
            return self.fail("directives are not supported");
        }
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.peek() == Some(&Tok::Neck) {
            self.pos += 1;
            body.push(self.atom()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                body.push(self.atom()?);
            }
        }
        self.expect(Tok::Dot, "'.' at end of clause")?;
        Ok(Clause::new(head, body))
    }
}

/// Parses a sequence of clauses, each with its own variable scope.
/// Variables are numbered from 0 in order of first occurrence.
pub fn parse_clauses(text: &str) -> Result<Vec<Clause>, IoError> {
    let toks = tokenize(text)?;
    let end = toks.last().map_or((1, 1), |t| (t.line, t.col + 1));
    let mut p = Parser { toks, pos: 0, vars: HashMap::new(), next_var: 0, end };
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.clause()?);
    }
    Ok(out)
}

/// Parses one clause, e.g. `p(X) :- q(X).`
pub fn parse_clause(text: &str) -> Result<Clause, IoError> {
    let mut cs = parse_clauses(text)?;
    if cs.len() != 1 {
        return Err(err(1, 1, format!("expected exactly one clause, found {}", cs.len())));
    }
    Ok(cs.pop().unwrap())
}

/// Parses one atom; a trailing `.` is optional.
pub fn parse_atom(text: &str) -> Result<Atom, IoError> {
    let t = text.trim();
    let t = t.strip_suffix('.').unwrap_or(t);
    let c = parse_clause(&format!("{}.", t))?;
    if !c.body.is_empty() {
        return Err(err(1, 1, "expected an atom, found a rule"));
    }
    Ok(c.head)
}

pub fn parse_term(text: &str) -> Result<Term, IoError> {
    let a = parse_atom(&format!("t({})", text))?;
    Ok(a.args.into_iter().next().unwrap())
}
