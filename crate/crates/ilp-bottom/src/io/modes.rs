use std::fmt;

use crate::logic::{Direction, LanguageBias, PredKey, Sym};

use super::IoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModeKind {
    Head,
    Body,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Recall {
    Star,
    Bounded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModeDeclaration {
    pub kind: ModeKind,
    pub recall: Recall,
    pub pred: Sym,
    pub args: Vec<(Direction, Sym)>,
}

impl fmt::Display for ModeDeclaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ModeKind::Head => "modeh",
            ModeKind::Body => "modeb",
        };
        write!(f, "{}(", kind)?;
        match self.recall {
            Recall::Star => f.write_str("*")?,
            Recall::Bounded(n) => write!(f, "{}", n)?,
        }
        write!(f, ", {}", self.pred)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, (d, t)) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                let sign = match d {
                    Direction::In => '+',
                    Direction::Out => '-',
                };
                write!(f, "{}{}", sign, t)?;
            }
            f.write_str(")")?;
        }
        f.write_str(")")
    }
}

fn mode_for(b: &LanguageBias, k: &PredKey, kind: ModeKind) -> Result<ModeDeclaration, IoError> {
    let types = b
        .type_of(k)
        .ok_or_else(|| IoError::Bias(format!("no type declaration for {}/{}", k.0, k.1)))?;
    let dirs = b
        .dirs(k)
        .ok_or_else(|| IoError::Bias(format!("no direction declaration for {}/{}", k.0, k.1)))?;
    Ok(ModeDeclaration {
        kind,
        recall: Recall::Star,
        pred: k.0,
        args: dirs.iter().copied().zip(types.iter().copied()).collect(),
    })
}

/// One `modeh` per head predicate and one `modeb` per body predicate, all
/// with unbounded recall.
pub fn to_mode_declarations(b: &LanguageBias) -> Result<Vec<ModeDeclaration>, IoError> {
    let mut out = Vec::new();
    for k in &b.head_decls {
        out.push(mode_for(b, k, ModeKind::Head)?);
    }
    for k in &b.body_decls {
        out.push(mode_for(b, k, ModeKind::Body)?);
    }
    Ok(out)
}

/// Inverse of `to_mode_declarations`, ignoring recall. Limits and the
/// recursion flag are left at their defaults.
pub fn from_mode_declarations(modes: &[ModeDeclaration]) -> LanguageBias {
    let mut b = LanguageBias::default();
    for m in modes {
        let k = (m.pred, m.args.len());
        match m.kind {
            ModeKind::Head => b.head_decls.insert(k),
            ModeKind::Body => b.body_decls.insert(k),
        };
        b.types.insert(k, m.args.iter().map(|a| a.1).collect());
        b.directions.insert(k, m.args.iter().map(|a| a.0).collect());
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_bias;

    const BIAS: &str = "
head_pred(palindrome,1). body_pred(first,2). body_pred(last,2). body_pred(middle,2). body_pred(empty,1).
type(palindrome,(list,)). type(first,(list,element)). type(last,(list,element)).
type(middle,(list,list)). type(empty,(list,)).
direction(palindrome,(in,)). direction(first,(in,out)). direction(last,(in,out)).
direction(middle,(in,out)). direction(empty,(out,)).
";

    #[test]
    fn palindrome_modes() {
        let b = parse_bias(BIAS).unwrap();
        let text: Vec<String> = to_mode_declarations(&b).unwrap().iter().map(|m| m.to_string()).collect();
        assert!(text.contains(&"modeh(*, palindrome(+list))".to_string()));
        assert!(text.contains(&"modeb(*, last(+list,-element))".to_string()));
        assert!(text.contains(&"modeb(*, empty(-list))".to_string()));
        assert_eq!(text.len(), 5);
    }

    #[test]
    fn missing_type_is_error() {
        let b = parse_bias("head_pred(f,1). body_pred(g,1). type(f,(t,)). direction(f,(in,)).").unwrap();
        assert!(to_mode_declarations(&b).is_err());
    }

    #[test]
    fn invertible() {
        let b = parse_bias(BIAS).unwrap();
        let back = from_mode_declarations(&to_mode_declarations(&b).unwrap());
        assert_eq!(back.head_decls, b.head_decls);
        assert_eq!(back.body_decls, b.body_decls);
        assert_eq!(back.types, b.types);
        assert_eq!(back.directions, b.directions);
    }
}
