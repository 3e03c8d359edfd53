//! Loop terms and identities.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! identity := expr '=' expr
//! expr     := postfix (('*' | '\' | '/') postfix)*     left-associative, one precedence level
//! postfix  := atom ('^rho' | '^lambda')*
//! atom     := letter | '1' | '(' expr ')'
//! ```
//!
//! `x^rho` is the right inverse (`x * x^rho = 1`), `x^lambda` the left
//! inverse (`x^lambda * x = 1`). The constant `1` is element `0`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::table::{Element, LoopTable};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(char),
    One,
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
    RDiv(Box<Term>, Box<Term>),
    RhoInv(Box<Term>),
    LambdaInv(Box<Term>),
}

impl Term {
    pub fn var(name: char) -> Term {
        Term::Var(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::LDiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: Term, b: Term) -> Term {
        Term::RDiv(Box::new(a), Box::new(b))
    }

    pub fn rho(a: Term) -> Term {
        Term::RhoInv(Box::new(a))
    }

    pub fn lambda(a: Term) -> Term {
        Term::LambdaInv(Box::new(a))
    }

    /// Pushes each variable name once, in order of first occurrence.
    fn collect_vars(&self, out: &mut Vec<char>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::One => {}
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::RhoInv(a) | Term::LambdaInv(a) => a.collect_vars(out),
        }
    }

    pub fn vars(&self) -> Vec<char> {
        let mut v = Vec::new();
        self.collect_vars(&mut v);
        v
    }

    /// Evaluates the term in `table` under `assignment`.
    pub fn eval(&self, assignment: &Assignment, table: &LoopTable) -> Result<Element, EvalError> {
        Ok(match self {
            Term::Var(v) => assignment.get(*v).ok_or(EvalError::UnboundVariable(*v))?,
            Term::One => 0,
            Term::Mul(a, b) => table.mul(a.eval(assignment, table)?, b.eval(assignment, table)?),
            Term::LDiv(a, b) => table.ldiv(a.eval(assignment, table)?, b.eval(assignment, table)?),
            Term::RDiv(a, b) => table.rdiv(a.eval(assignment, table)?, b.eval(assignment, table)?),
            Term::RhoInv(a) => table.right_inverse(a.eval(assignment, table)?),
            Term::LambdaInv(a) => table.left_inverse(a.eval(assignment, table)?),
        })
    }
}

/// Fully parenthesized rendering that the parser reads back unchanged.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::One => f.write_str("1"),
            Term::Mul(a, b) => write!(f, "({a}*{b})"),
            Term::LDiv(a, b) => write!(f, "({a}\\{b})"),
            Term::RDiv(a, b) => write!(f, "({a}/{b})"),
            Term::RhoInv(a) => write!(f, "{a}^rho"),
            Term::LambdaInv(a) => write!(f, "{a}^lambda"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable '{0}' is not assigned")]
    UnboundVariable(char),
}

/// Values for a list of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub vars: Vec<char>,
    pub values: Vec<Element>,
}

impl Assignment {
    pub fn new(pairs: &[(char, Element)]) -> Self {
        Assignment {
            vars: pairs.iter().map(|p| p.0).collect(),
            values: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn get(&self, var: char) -> Option<Element> {
        self.vars.iter().position(|&v| v == var).map(|i| self.values[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (char, Element)> + '_ {
        self.vars.iter().copied().zip(self.values.iter().copied())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}={x}")?;
        }
        Ok(())
    }
}

/// A universally quantified equation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    /// Quantified variables, alphabetical unless declared otherwise.
    pub vars: Vec<char>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let mut vars = lhs.vars();
        for v in rhs.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort_unstable();
        Identity { lhs, rhs, vars }
    }

    /// Same identity with an explicit variable order; `vars` must cover
    /// every variable that occurs.
    pub fn with_vars(lhs: Term, rhs: Term, vars: Vec<char>) -> Result<Self, EvalError> {
        let id = Identity::new(lhs, rhs);
        if let Some(&missing) = id.vars.iter().find(|v| !vars.contains(v)) {
            return Err(EvalError::UnboundVariable(missing));
        }
        Ok(Identity { vars, ..id })
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_identity(text)
    }

    /// Mirror image: every product and division is reversed and the
    /// inverses swap sides.
    pub fn mirror(&self) -> Identity {
        Identity { lhs: mirror(&self.lhs), rhs: mirror(&self.rhs), vars: self.vars.clone() }
    }

    pub fn compile(&self) -> CompiledIdentity {
        CompiledIdentity {
            lhs: Program::compile(&self.lhs, &self.vars),
            rhs: Program::compile(&self.rhs, &self.vars),
            arity: self.vars.len(),
        }
    }

    /// True iff the identity holds for every assignment (`n^k` evaluations).
    pub fn holds(&self, table: &LoopTable) -> bool {
        self.counterexample(table).is_none()
    }

    /// The lexicographically first falsifying assignment, if any.
    pub fn counterexample(&self, table: &LoopTable) -> Option<Assignment> {
        let compiled = self.compile();
        let mut stack = Vec::new();
        let mut values = alloc::vec![0 as Element; self.vars.len()];
        let n = table.order();
        loop {
            if compiled.lhs.eval(&values, table, &mut stack) != compiled.rhs.eval(&values, table, &mut stack) {
                return Some(Assignment { vars: self.vars.clone(), values });
            }
            if !next_tuple(&mut values, n) {
                return None;
            }
        }
    }
}

/// Advances `values` to the next tuple in lexicographic order over `0..n`.
pub(crate) fn next_tuple(values: &mut [Element], n: usize) -> bool {
    for i in (0..values.len()).rev() {
        if (values[i] as usize) + 1 < n {
            values[i] += 1;
            return true;
        }
        values[i] = 0;
    }
    false
}

fn mirror(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::One => t.clone(),
        Term::Mul(a, b) => Term::mul(mirror(b), mirror(a)),
        // a \ b = c  <=>  a c = b, mirrored: c' a' = b'  <=>  c' = b' / a'
        Term::LDiv(a, b) => Term::rdiv(mirror(b), mirror(a)),
        Term::RDiv(a, b) => Term::ldiv(mirror(b), mirror(a)),
        Term::RhoInv(a) => Term::lambda(mirror(a)),
        Term::LambdaInv(a) => Term::rho(mirror(a)),
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Postfix instruction of a compiled term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Var(u8),
    One,
    Mul,
    LDiv,
    RDiv,
    RhoInv,
    LambdaInv,
}

/// A term flattened to postfix with variables resolved to slot indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub ops: Vec<Op>,
}

impl Program {
    pub fn compile(term: &Term, vars: &[char]) -> Program {
        fn go(t: &Term, vars: &[char], out: &mut Vec<Op>) {
            match t {
                Term::Var(v) => {
                    let slot = vars.iter().position(|x| x == v).expect("variable declared");
                    out.push(Op::Var(slot as u8));
                }
                Term::One => out.push(Op::One),
                Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                    go(a, vars, out);
                    go(b, vars, out);
                    out.push(match t {
                        Term::Mul(..) => Op::Mul,
                        Term::LDiv(..) => Op::LDiv,
                        _ => Op::RDiv,
                    });
                }
                Term::RhoInv(a) | Term::LambdaInv(a) => {
                    go(a, vars, out);
                    out.push(if matches!(t, Term::RhoInv(_)) { Op::RhoInv } else { Op::LambdaInv });
                }
            }
        }
        let mut ops = Vec::new();
        go(term, vars, &mut ops);
        Program { ops }
    }

    pub fn eval(&self, values: &[Element], table: &LoopTable, stack: &mut Vec<Element>) -> Element {
        stack.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => values[i as usize],
                Op::One => 0,
                Op::RhoInv => {
                    let a = stack.pop().unwrap();
                    table.right_inverse(a)
                }
                Op::LambdaInv => {
                    let a = stack.pop().unwrap();
                    table.left_inverse(a)
                }
                Op::Mul | Op::LDiv | Op::RDiv => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    match op {
                        Op::Mul => table.mul(a, b),
                        Op::LDiv => table.ldiv(a, b),
                        _ => table.rdiv(a, b),
                    }
                }
            };
            stack.push(v);
        }
        stack[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledIdentity {
    pub lhs: Program,
    pub rhs: Program,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: &'static str },
    #[error("unbalanced parentheses at position {position}")]
    UnbalancedParentheses { position: usize },
    #[error("unknown token '{found}' at position {position}")]
    UnknownToken { position: usize, found: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(char),
    One,
    Star,
    Backslash,
    Slash,
    Rho,
    Lambda,
    LParen,
    RParen,
    Eq,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '*' => Tok::Star,
            '\\' => Tok::Backslash,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            '1' => Tok::One,
            '^' => {
                let rest = &text[pos + 1..];
                let (tok, len) = if rest.starts_with("rho") {
                    (Tok::Rho, 3)
                } else if rest.starts_with("lambda") {
                    (Tok::Lambda, 6)
                } else {
                    let end = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
                    return Err(ParseError::UnknownToken { position: pos, found: String::from(&text[pos..pos + 1 + end]) });
                };
                for _ in 0..len {
                    chars.next();
                }
                // "^rhox" is not "^rho" followed by x
                if matches!(chars.peek(), Some((_, c)) if c.is_ascii_alphanumeric()) {
                    let end = text[pos + 1..].find(|c: char| !c.is_ascii_alphanumeric()).map_or(text.len(), |e| pos + 1 + e);
                    return Err(ParseError::UnknownToken { position: pos, found: String::from(&text[pos..end]) });
                }
                tok
            }
            c if c.is_ascii_alphabetic() => {
                if matches!(chars.peek(), Some((_, n)) if n.is_ascii_alphanumeric()) {
                    return Err(ParseError::SyntaxError { position: pos + 1, message: "variables are single letters" });
                }
                Tok::Var(c)
            }
            other => {
                let mut found = String::new();
                found.push(other);
                return Err(ParseError::UnknownToken { position: pos, found });
            }
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.postfix()?;
        loop {
            let make: fn(Term, Term) -> Term = match self.peek() {
                Some(Tok::Star) => Term::mul,
                Some(Tok::Backslash) => Term::ldiv,
                Some(Tok::Slash) => Term::rdiv,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.postfix()?;
            acc = make(acc, rhs);
        }
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Rho) => t = Term::rho(t),
                Some(Tok::Lambda) => t = Term::lambda(t),
                _ => return Ok(t),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let position = self.offset();
        let tok = self.peek();
        self.pos += 1;
        match tok {
            Some(Tok::Var(v)) => Ok(Term::Var(v)),
            Some(Tok::One) => Ok(Term::One),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(ParseError::UnbalancedParentheses { position });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::RParen) => Err(ParseError::UnbalancedParentheses { position }),
            None => Err(ParseError::SyntaxError { position, message: "unexpected end of input" }),
            Some(_) => Err(ParseError::SyntaxError { position, message: "expected a variable, '1' or '('" }),
        }
    }
}

/// Parses `lhs = rhs`.
pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let toks = tokenize(text)?;
    check_balance(&toks)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let lhs = p.expr()?;
    if p.peek() != Some(Tok::Eq) {
        return Err(ParseError::SyntaxError { position: p.offset(), message: "expected '='" });
    }
    p.pos += 1;
    let rhs = p.expr()?;
    if p.peek().is_some() {
        return Err(ParseError::SyntaxError { position: p.offset(), message: "trailing input" });
    }
    Ok(Identity::new(lhs, rhs))
}

/// Parses a single term (no `=`).
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let toks = tokenize(text)?;
    check_balance(&toks)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let t = p.expr()?;
    if p.peek().is_some() {
        return Err(ParseError::SyntaxError { position: p.offset(), message: "trailing input" });
    }
    Ok(t)
}

/// Parentheses must balance within each side of the `=`.
fn check_balance(toks: &[(usize, Tok)]) -> Result<(), ParseError> {
    let mut open: Vec<usize> = Vec::new();
    for &(pos, tok) in toks {
        match tok {
            Tok::LParen => open.push(pos),
            Tok::RParen => {
                if open.pop().is_none() {
                    return Err(ParseError::UnbalancedParentheses { position: pos });
                }
            }
            Tok::Eq => {
                if let Some(&p) = open.last() {
                    return Err(ParseError::UnbalancedParentheses { position: p });
                }
            }
            _ => {}
        }
    }
    match open.last() {
        Some(&p) => Err(ParseError::UnbalancedParentheses { position: p }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{example_3_3, symmetric_3};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn x() -> Term {
        Term::var('x')
    }
    fn y() -> Term {
        Term::var('y')
    }
    fn z() -> Term {
        Term::var('z')
    }

    #[test]
    fn parses_left_cheban() {
        let id = parse_identity("x*(x*y*z) = (y*x)*(x*z)").unwrap();
        assert_eq!(id.lhs, Term::mul(x(), Term::mul(Term::mul(x(), y()), z())));
        assert_eq!(id.rhs, Term::mul(Term::mul(y(), x()), Term::mul(x(), z())));
        assert_eq!(id.vars, ['x', 'y', 'z']);
    }

    #[test]
    fn trivial_identity() {
        let id = parse_identity("x = x").unwrap();
        assert_eq!(id.lhs, x());
        assert_eq!(id.rhs, x());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_identity("x*(y = z"), Err(ParseError::UnbalancedParentheses { position: 2 }));
        assert!(matches!(parse_identity("x*y) = z"), Err(ParseError::UnbalancedParentheses { position: 3 })));
        assert!(matches!(parse_identity("x + y = z"), Err(ParseError::UnknownToken { position: 2, .. })));
        assert!(matches!(parse_identity("x^inv = x"), Err(ParseError::UnknownToken { .. })));
        assert!(matches!(parse_identity("x * = y"), Err(ParseError::SyntaxError { position: 4, .. })));
        assert!(matches!(parse_identity("x * y"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_identity("xy = yx"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_identity("x = y = z"), Err(ParseError::SyntaxError { .. })));
    }

    #[test]
    fn operators_share_precedence() {
        let t = parse_term("x/y*z\\w").unwrap();
        let expected = Term::ldiv(Term::mul(Term::rdiv(x(), y()), z()), Term::var('w'));
        assert_eq!(t, expected);
        let t = parse_term("x*y^rho^lambda").unwrap();
        assert_eq!(t, Term::mul(x(), Term::lambda(Term::rho(y()))));
    }

    #[test]
    fn eval_examples() {
        let q = example_3_3();
        let a = Assignment::new(&[('x', 2), ('y', 1)]);
        assert_eq!(Term::mul(x(), Term::mul(x(), y())).eval(&a, &q), Ok(1));
        assert_eq!(Term::One.eval(&a, &q), Ok(0));
        let a = Assignment::new(&[('x', 3)]);
        assert_eq!(Term::rho(x()).eval(&a, &q), Ok(4));
        assert_eq!(z().eval(&a, &q), Err(EvalError::UnboundVariable('z')));
    }

    #[test]
    fn holds_and_counterexample() {
        let lc = parse_identity("x*(x*y*z) = (y*x)*(x*z)").unwrap();
        let q = example_3_3();
        assert!(lc.holds(&q));
        assert_eq!(lc.counterexample(&q), None);
        assert!(parse_identity("x = x").unwrap().holds(&q));

        let s3 = symmetric_3();
        assert!(!lc.holds(&s3));
        // brute-force the first falsifying triple independently
        let mut first = None;
        'outer: for a in 0..6u8 {
            for b in 0..6u8 {
                for c in 0..6u8 {
                    let l = s3.mul(a, s3.mul(s3.mul(a, b), c));
                    let r = s3.mul(s3.mul(b, a), s3.mul(a, c));
                    if l != r {
                        first = Some([a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        let cx = lc.counterexample(&s3).unwrap();
        assert_eq!(Some(cx.values.as_slice()), first.as_ref().map(|f| &f[..]));
        assert_eq!(cx.values, [1, 3, 0]);
    }

    #[test]
    fn mirror_of_left_cheban_is_right_cheban() {
        let lc = parse_identity("x*(x*y*z) = (y*x)*(x*z)").unwrap();
        let rc = parse_identity("(z*(y*x))*x = (z*x)*(x*y)").unwrap();
        assert_eq!(lc.mirror(), rc);
        assert_eq!(lc.mirror().mirror(), lc);
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            prop::sample::select(alloc::vec!['x', 'y', 'z', 'w']).prop_map(Term::Var),
            Just(Term::One),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::ldiv(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::rdiv(a, b)),
                inner.clone().prop_map(Term::rho),
                inner.prop_map(Term::lambda),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(a in arb_term(), b in arb_term()) {
            let id = Identity::new(a, b);
            let back = parse_identity(&id.to_string()).unwrap();
            prop_assert_eq!(back, id);
        }

        #[test]
        fn compiled_matches_tree_eval(t in arb_term(), vals in proptest::collection::vec(0u8..8, 4)) {
            let q = example_3_3();
            let vars = ['w', 'x', 'y', 'z'];
            let a = Assignment { vars: vars.to_vec(), values: vals.clone() };
            let prog = Program::compile(&t, &vars);
            let mut stack = Vec::new();
            prop_assert_eq!(prog.eval(&vals, &q, &mut stack), t.eval(&a, &q).unwrap());
        }
    }
}
