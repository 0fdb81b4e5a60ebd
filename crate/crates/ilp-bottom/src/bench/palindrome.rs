//! The palindrome task, with and without a `reverse` helper.

use crate::io::ProblemInput;

pub const BK: &str = "\
first([H|_],H).
last([H],H).
last([_|T],X) :- last(T,X).
middle([_|T],T2) :- droplast(T,T2).
droplast([_],[]).
droplast([H|T],[H|T2]) :- droplast(T,T2).
empty([]).
one(1).
length([],0).
length([_|T],N) :- length(T,M), succ(M,N).
";

pub const REVERSE_BK: &str = "\
reverse([],[]).
reverse([H|T],L) :- reverse(T,T2), append(T2,[H],L).
append([],L,L).
append([H|T],L,[H|R]) :- append(T,L,R).
";

pub const BIAS: &str = "\
head_pred(palindrome,1).
body_pred(first,2).
body_pred(last,2).
body_pred(middle,2).
body_pred(empty,1).
body_pred(length,2).
body_pred(one,1).
type(palindrome,(list,)).
type(first,(list,element)).
type(last,(list,element)).
type(middle,(list,list)).
type(empty,(list,)).
type(length,(list,int)).
type(one,(int,)).
direction(palindrome,(in,)).
direction(first,(in,out)).
direction(last,(in,out)).
direction(middle,(in,out)).
direction(empty,(out,)).
direction(length,(in,out)).
direction(one,(out,)).
max_vars(4).
max_clauses(3).
max_body(4).
enable_recursion.
";

pub const REVERSE_BIAS: &str = "\
body_pred(reverse,2).
type(reverse,(list,list)).
direction(reverse,(in,out)).
";

pub const EXAMPLES: &str = "\
pos(palindrome([r,a,c,e,c,a,r])).
pos(palindrome([m,o,m])).
pos(palindrome([d,e,e,d])).
pos(palindrome([a])).
pos(palindrome([])).
neg(palindrome([c,a,r,r,i,a,g,e])).
neg(palindrome([m,o,p])).
neg(palindrome([p,a,l,i,n,d,r,o,m,e])).
neg(palindrome([d,e,a,d])).
neg(palindrome([a,t])).
";

pub fn problem(with_reverse: bool) -> ProblemInput {
    let (bk, bias) = if with_reverse {
        (format!("{}{}", BK, REVERSE_BK), format!("{}{}", BIAS, REVERSE_BIAS))
    } else {
        (BK.to_string(), BIAS.to_string())
    };
    ProblemInput::from_texts(&bias, &bk, EXAMPLES).expect("bundled palindrome problem parses")
}
