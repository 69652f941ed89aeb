//! Untyped lambda terms: concrete syntax, alpha-equivalence and
//! capture-avoiding substitution.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Variable names are plain strings over `[A-Za-z_][A-Za-z0-9_']*`.
pub type Ident = String;

/// Abstract syntax of untyped lambda terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Term {
    Var(Ident),
    App(Box<Term>, Box<Term>),
    Abs(Ident, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<Ident>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn abs(binder: impl Into<Ident>, body: Term) -> Term {
        Term::Abs(binder.into(), Box::new(body))
    }

    /// Number of constructors in the term.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Abs(_, b) => 1 + b.size(),
        }
    }

    /// Free variables, in no particular order.
    pub fn free_vars(&self) -> BTreeSet<Ident> {
        fn go(t: &Term, bound: &mut Vec<Ident>, acc: &mut BTreeSet<Ident>) {
            match t {
                Term::Var(x) => {
                    if !bound.iter().any(|b| b == x) {
                        acc.insert(x.clone());
                    }
                }
                Term::App(f, a) => {
                    go(f, bound, acc);
                    go(a, bound, acc);
                }
                Term::Abs(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, acc);
                    bound.pop();
                }
            }
        }
        let mut acc = BTreeSet::new();
        go(self, &mut Vec::new(), &mut acc);
        acc
    }

    /// All identifiers occurring in the term, bound or free.
    pub fn all_idents(&self) -> BTreeSet<Ident> {
        let mut acc = BTreeSet::new();
        fn go(t: &Term, acc: &mut BTreeSet<Ident>) {
            match t {
                Term::Var(x) => {
                    acc.insert(x.clone());
                }
                Term::App(f, a) => {
                    go(f, acc);
                    go(a, acc);
                }
                Term::Abs(x, b) => {
                    acc.insert(x.clone());
                    go(b, acc);
                }
            }
        }
        go(self, &mut acc);
        acc
    }
}

/// Deterministic source of fresh names: `<prefix><counter>`, skipping an
/// avoid-set supplied at each draw.
#[derive(Debug, Clone)]
pub struct NameSupply {
    prefix: Ident,
    counter: u64,
}

impl NameSupply {
    pub fn new(prefix: impl Into<Ident>) -> NameSupply {
        NameSupply { prefix: prefix.into(), counter: 0 }
    }

    /// Draw the next name not present in `avoid`.
    pub fn fresh(&mut self, avoid: &BTreeSet<Ident>) -> Ident {
        loop {
            let candidate = format!("{}{}", self.prefix, self.counter);
            self.counter += 1;
            if !avoid.contains(&candidate) {
                return candidate;
            }
        }
    }
}

impl Default for NameSupply {
    fn default() -> Self {
        NameSupply::new("v")
    }
}

/// Alpha-equivalence: bound variables compared positionally, free variables
/// by name.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    fn go(a: &Term, b: &Term, env_a: &mut Vec<Ident>, env_b: &mut Vec<Ident>) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                let ia = env_a.iter().rposition(|v| v == x);
                let ib = env_b.iter().rposition(|v| v == y);
                match (ia, ib) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::App(f1, a1), Term::App(f2, a2)) => {
                go(f1, f2, env_a, env_b) && go(a1, a2, env_a, env_b)
            }
            (Term::Abs(x, b1), Term::Abs(y, b2)) => {
                env_a.push(x.clone());
                env_b.push(y.clone());
                let r = go(b1, b2, env_a, env_b);
                env_a.pop();
                env_b.pop();
                r
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

/// Capture-avoiding substitution of `replacement` for every free occurrence
/// of `target` in `t`. Binders that would capture a free variable of
/// `replacement` are renamed with names drawn from `supply`.
pub fn substitute(t: &Term, target: &str, replacement: &Term, supply: &mut NameSupply) -> Term {
    match t {
        Term::Var(x) => {
            if x == target {
                replacement.clone()
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => Term::app(
            substitute(f, target, replacement, supply),
            substitute(a, target, replacement, supply),
        ),
        Term::Abs(x, b) => {
            if x == target {
                // shadowed: no free occurrences below
                t.clone()
            } else if replacement.free_vars().contains(x) && b.free_vars().contains(target) {
                let mut avoid = replacement.free_vars();
                avoid.append(&mut b.all_idents());
                avoid.insert(target.to_string());
                let x2 = supply.fresh(&avoid);
                let renamed = substitute(b, x, &Term::var(x2.clone()), supply);
                Term::abs(x2, substitute(&renamed, target, replacement, supply))
            } else {
                Term::abs(x.clone(), substitute(b, target, replacement, supply))
            }
        }
    }
}

/// Rename every bound variable of `t` to a fresh name from `supply`.
pub fn refresh_bound(t: &Term, supply: &mut NameSupply, avoid: &BTreeSet<Ident>) -> Term {
    fn go(
        t: &Term,
        ren: &mut Vec<(Ident, Ident)>,
        supply: &mut NameSupply,
        avoid: &BTreeSet<Ident>,
    ) -> Term {
        match t {
            Term::Var(x) => match ren.iter().rev().find(|(old, _)| old == x) {
                Some((_, new)) => Term::var(new.clone()),
                None => t.clone(),
            },
            Term::App(f, a) => Term::app(go(f, ren, supply, avoid), go(a, ren, supply, avoid)),
            Term::Abs(x, b) => {
                let x2 = supply.fresh(avoid);
                ren.push((x.clone(), x2.clone()));
                let b2 = go(b, ren, supply, avoid);
                ren.pop();
                Term::abs(x2, b2)
            }
        }
    }
    go(t, &mut Vec::new(), supply, avoid)
}

/// Parse error, reported with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            if let Some(c) = rest.chars().next() {
                if c.is_whitespace() {
                    self.pos += c.len_utf8();
                    continue;
                }
            }
            if rest.starts_with("--") {
                match rest.find('\n') {
                    Some(i) => self.pos += i + 1,
                    None => self.pos = self.src.len(),
                }
                continue;
            }
            break;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
    }

    fn ident(&mut self) -> Result<Ident, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        match rest.chars().next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.error("expected identifier"),
        }
        let mut end = rest.len();
        for (i, c) in rest.char_indices().skip(1) {
            if !(c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                end = i;
                break;
            }
        }
        let name = &rest[..end];
        self.pos += end;
        Ok(name.to_string())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('\\') | Some('λ') => self.lambda(),
            _ => self.application(),
        }
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        let c = self.peek().unwrap();
        self.bump(c);
        let mut binders = Vec::new();
        loop {
            match self.peek() {
                Some('.') => {
                    self.bump('.');
                    break;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => binders.push(self.ident()?),
                _ => return self.error("expected binder or '.' in abstraction"),
            }
        }
        if binders.is_empty() {
            return self.error("abstraction binds no variables");
        }
        let mut body = self.term()?;
        for b in binders.into_iter().rev() {
            body = Term::abs(b, body);
        }
        Ok(body)
    }

    fn application(&mut self) -> Result<Term, ParseError> {
        let mut t = match self.atom()? {
            Some(t) => t,
            None => return self.error("expected term"),
        };
        while let Some(next) = self.atom()? {
            t = Term::app(t, next);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Option<Term>, ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump('(');
                let t = self.term()?;
                match self.peek() {
                    Some(')') => {
                        self.bump(')');
                        Ok(Some(t))
                    }
                    _ => self.error("expected ')'"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => Ok(Some(Term::Var(self.ident()?))),
            _ => Ok(None),
        }
    }
}

/// Parse a term. Applications associate left, `\x y. B` abbreviates
/// `\x. \y. B`, and `λ` is accepted as an alias for `\`.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(t)
}

/// Pretty-print with merged binders and minimal parentheses; inverse of
/// [`parse`] up to structural equality.
pub fn pretty(t: &Term) -> String {
    fn operand(t: &Term, out: &mut String) {
        match t {
            Term::Var(x) => out.push_str(x),
            _ => {
                out.push('(');
                go(t, out);
                out.push(')');
            }
        }
    }
    fn operator(t: &Term, out: &mut String) {
        match t {
            Term::Var(_) | Term::App(_, _) => go(t, out),
            Term::Abs(_, _) => {
                out.push('(');
                go(t, out);
                out.push(')');
            }
        }
    }
    fn go(t: &Term, out: &mut String) {
        match t {
            Term::Var(x) => out.push_str(x),
            Term::App(f, a) => {
                operator(f, out);
                out.push(' ');
                operand(a, out);
            }
            Term::Abs(_, _) => {
                out.push('\\');
                let mut cur = t;
                let mut first = true;
                while let Term::Abs(x, b) = cur {
                    if !first {
                        out.push(' ');
                    }
                    out.push_str(x);
                    first = false;
                    cur = b;
                }
                out.push_str(". ");
                go(cur, out);
            }
        }
    }
    let mut out = String::new();
    go(t, &mut out);
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn parse_baby_example() {
        let t = p("(\\x. x x)(\\y. y)");
        let expected = Term::app(
            Term::abs("x", Term::app(Term::var("x"), Term::var("x"))),
            Term::abs("y", Term::var("y")),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn parse_single_abstraction() {
        assert_eq!(p("\\x.x"), Term::abs("x", Term::var("x")));
    }

    #[test]
    fn parse_missing_operand_term() {
        let t = p("(\\u . u (y1 u)) (\\v . v y2)");
        let expected = Term::app(
            Term::abs(
                "u",
                Term::app(Term::var("u"), Term::app(Term::var("y1"), Term::var("u"))),
            ),
            Term::abs("v", Term::app(Term::var("v"), Term::var("y2"))),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn parse_accepts_unicode_lambda_and_comments() {
        assert_eq!(p("λx y. x -- a comment\n"), p("\\x. \\y. x"));
    }

    #[test]
    fn parse_reports_offset() {
        let err = parse("\\x. (x").unwrap_err();
        assert_eq!(err.offset, 6);
    }

    #[test]
    fn pretty_merges_binders() {
        assert_eq!(pretty(&p("\\x. \\y. \\z. x")), "\\x y z. x");
    }

    #[test]
    fn pretty_identity() {
        assert_eq!(pretty(&Term::abs("x", Term::var("x"))), "\\x. x");
    }

    #[test]
    fn pretty_right_nested_application() {
        let t = Term::app(Term::var("f"), Term::app(Term::var("g"), Term::var("h")));
        assert_eq!(pretty(&t), "f (g h)");
    }

    #[test]
    fn pretty_varity_normal_form() {
        let t = p("\\x y s z. s (x s (y s z))");
        assert_eq!(pretty(&t), "\\x y s z. s (x s (y s z))");
    }

    #[test]
    fn alpha_eq_basics() {
        assert!(alpha_eq(&p("\\x.x"), &p("\\y.y")));
        assert!(!alpha_eq(&p("\\x.f x"), &p("\\y.g y")));
        assert!(alpha_eq(&p("\\x y. x"), &p("\\a b. a")));
        assert!(!alpha_eq(&p("\\x y. x"), &p("\\a b. b")));
    }

    #[test]
    fn substitute_capture() {
        // (\y. x)[x := y]  ->  \y'. y
        let t = p("\\y. x");
        let mut supply = NameSupply::new("y");
        let r = substitute(&t, "x", &Term::var("y"), &mut supply);
        match r {
            Term::Abs(b, body) => {
                assert_ne!(b, "y");
                assert_eq!(*body, Term::var("y"));
            }
            other => panic!("expected abstraction, got {other}"),
        }
    }

    #[test]
    fn substitute_plain() {
        let t = p("x x");
        let mut supply = NameSupply::default();
        let r = substitute(&t, "x", &p("\\z.z"), &mut supply);
        assert_eq!(r, p("(\\z.z)(\\z.z)"));
    }

    #[test]
    fn substitute_shadowed() {
        let t = p("\\x. x");
        let mut supply = NameSupply::default();
        let r = substitute(&t, "x", &p("s"), &mut supply);
        assert_eq!(r, t);
    }
}
