//! Integer relations available to every program unless the program defines
//! a predicate of the same name and arity.

use crate::logic::{PredKey, Sym};

use super::machine::Machine;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Succ,
    Decrement,
    Increment,
    Geq,
    Zero,
    One,
    Sum,
}

pub const NAMES: [(&str, usize); 7] = [
    ("succ", 2),
    ("decrement", 2),
    ("increment", 2),
    ("geq", 2),
    ("zero", 1),
    ("one", 1),
    ("sum", 3),
];

pub fn lookup(k: &PredKey) -> Option<Builtin> {
    let all = [
        Builtin::Succ,
        Builtin::Decrement,
        Builtin::Increment,
        Builtin::Geq,
        Builtin::Zero,
        Builtin::One,
        Builtin::Sum,
    ];
    NAMES
        .iter()
        .position(|(n, a)| *a == k.1 && Sym::new(n) == k.0)
        .map(|i| all[i])
}

/// `succ(X,Y)`: Y = X+1 over naturals. `decrement(X,Y)`: Y = X-1.
/// `increment(X,Y)`: Y = X+1. `geq(X,Y)`: X >= Y. `sum(X,Y,Z)`: Z = X+Y.
/// Relations that cannot be solved from the bound arguments fail.
pub(crate) fn run(m: &mut Machine<'_>, b: Builtin, args: u32) -> bool {
    let arg = |i: u32| args + i;
    let int = |m: &Machine<'_>, i: u32| m.int_at(args + i);
    // arithmetic that overflows has no answer
    let put = |m: &mut Machine<'_>, i: u32, v: Option<i64>| v.is_some_and(|v| m.unify_int(arg(i), v));
    match b {
        Builtin::Succ => match (int(m, 0), int(m, 1)) {
            (Some(x), _) if x >= 0 => put(m, 1, x.checked_add(1)),
            (None, Some(y)) if y > 0 => put(m, 0, Some(y - 1)),
            _ => false,
        },
        Builtin::Decrement | Builtin::Increment => {
            let d = if b == Builtin::Increment { 1 } else { -1 };
            match (int(m, 0), int(m, 1)) {
                (Some(x), _) => put(m, 1, x.checked_add(d)),
                (None, Some(y)) => put(m, 0, y.checked_sub(d)),
                _ => false,
            }
        }
        Builtin::Geq => matches!((int(m, 0), int(m, 1)), (Some(x), Some(y)) if x >= y),
        Builtin::Zero => m.unify_int(arg(0), 0),
        Builtin::One => m.unify_int(arg(0), 1),
        Builtin::Sum => match (int(m, 0), int(m, 1), int(m, 2)) {
            (Some(x), Some(y), _) => put(m, 2, x.checked_add(y)),
            (Some(x), None, Some(z)) => put(m, 1, z.checked_sub(x)),
            (None, Some(y), Some(z)) => put(m, 0, z.checked_sub(y)),
            _ => false,
        },
    }
}
