//! Surface expressions with abbreviations, and their parenthesized prefix
//! syntax:
//!
//! ```text
//! (forall z (iff (in z t) (or (eq z x) (eq z y))))
//! (numeral 2)
//! empty
//! ```
//!
//! `;` starts a comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

use crate::assembly::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expression {
    Letter(Letter),
    Not(Box<Expression>),
    Or(Box<Expression>, Box<Expression>),
    And(Box<Expression>, Box<Expression>),
    Implies(Box<Expression>, Box<Expression>),
    Iff(Box<Expression>, Box<Expression>),
    Eq(Box<Expression>, Box<Expression>),
    In(Box<Expression>, Box<Expression>),
    NotIn(Box<Expression>, Box<Expression>),
    Neq(Box<Expression>, Box<Expression>),
    Subset(Box<Expression>, Box<Expression>),
    Forall(Letter, Box<Expression>),
    Exists(Letter, Box<Expression>),
    Tau(Letter, Box<Expression>),
    /// `Coll_x R`: the relation "R is collectivizing in x".
    Coll(Letter, Box<Expression>),
    /// `{x | R}`
    SetOf(Letter, Box<Expression>),
    /// `{T₁, …, Tₙ}`, never empty.
    Enum(Vec<Expression>),
    Singleton(Box<Expression>),
    Couple(Box<Expression>, Box<Expression>),
    Empty,
    Union(Box<Expression>, Box<Expression>),
    Succ(Box<Expression>),
    Numeral(u64),
    /// `(T|x) body`
    Subst(Box<Expression>, Letter, Box<Expression>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Term,
    Relation,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Term => "term",
            Sort::Relation => "relation",
        })
    }
}

pub const KEYWORDS: [&str; 24] = [
    "not", "or", "and", "implies", "iff", "eq", "in", "notin", "neq", "subset", "forall", "exists", "tau", "coll",
    "setof", "enum", "singleton", "couple", "empty", "union", "succ", "numeral", "subst", "letter",
];

fn bx(e: Expression) -> Box<Expression> {
    Box::new(e)
}

impl Expression {
    pub fn letter(name: &str) -> Self {
        Expression::Letter(Letter::new(name).expect("valid letter name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Expression) -> Self {
        Expression::Not(bx(a))
    }
    pub fn or(a: Expression, b: Expression) -> Self {
        Expression::Or(bx(a), bx(b))
    }
    pub fn and(a: Expression, b: Expression) -> Self {
        Expression::And(bx(a), bx(b))
    }
    pub fn implies(a: Expression, b: Expression) -> Self {
        Expression::Implies(bx(a), bx(b))
    }
    pub fn iff(a: Expression, b: Expression) -> Self {
        Expression::Iff(bx(a), bx(b))
    }
    pub fn eq(a: Expression, b: Expression) -> Self {
        Expression::Eq(bx(a), bx(b))
    }
    pub fn elem(a: Expression, b: Expression) -> Self {
        Expression::In(bx(a), bx(b))
    }
    pub fn subset(a: Expression, b: Expression) -> Self {
        Expression::Subset(bx(a), bx(b))
    }
    pub fn forall(x: &str, body: Expression) -> Self {
        Expression::Forall(Letter::new(x).expect("valid letter name"), bx(body))
    }
    pub fn set_of(x: &str, body: Expression) -> Self {
        Expression::SetOf(Letter::new(x).expect("valid letter name"), bx(body))
    }

    /// Sort determined by the root abbreviation.
    pub fn sort(&self) -> Sort {
        use Expression::*;
        match self {
            Letter(_) | Tau(..) | SetOf(..) | Enum(_) | Singleton(_) | Couple(..) | Empty | Union(..) | Succ(_)
            | Numeral(_) => Sort::Term,
            Not(_) | Or(..) | And(..) | Implies(..) | Iff(..) | Eq(..) | In(..) | NotIn(..) | Neq(..) | Subset(..)
            | Forall(..) | Exists(..) | Coll(..) => Sort::Relation,
            Subst(body, _, _) => body.sort(),
        }
    }

    /// The first subexpression whose argument has the wrong sort, as
    /// `(keyword, expected)`.
    pub fn sort_error(&self) -> Option<(&'static str, Sort)> {
        use Expression::*;
        let need = |e: &Expression, want: Sort, kw: &'static str| {
            e.sort_error().or_else(|| (e.sort() != want).then_some((kw, want)))
        };
        match self {
            Letter(_) | Empty | Numeral(_) => None,
            Not(a) => need(a, Sort::Relation, "not"),
            Or(a, b) => need(a, Sort::Relation, "or").or_else(|| need(b, Sort::Relation, "or")),
            And(a, b) => need(a, Sort::Relation, "and").or_else(|| need(b, Sort::Relation, "and")),
            Implies(a, b) => need(a, Sort::Relation, "implies").or_else(|| need(b, Sort::Relation, "implies")),
            Iff(a, b) => need(a, Sort::Relation, "iff").or_else(|| need(b, Sort::Relation, "iff")),
            Eq(a, b) => need(a, Sort::Term, "eq").or_else(|| need(b, Sort::Term, "eq")),
            In(a, b) => need(a, Sort::Term, "in").or_else(|| need(b, Sort::Term, "in")),
            NotIn(a, b) => need(a, Sort::Term, "notin").or_else(|| need(b, Sort::Term, "notin")),
            Neq(a, b) => need(a, Sort::Term, "neq").or_else(|| need(b, Sort::Term, "neq")),
            Subset(a, b) => need(a, Sort::Term, "subset").or_else(|| need(b, Sort::Term, "subset")),
            Forall(_, r) => need(r, Sort::Relation, "forall"),
            Exists(_, r) => need(r, Sort::Relation, "exists"),
            Tau(_, r) => need(r, Sort::Relation, "tau"),
            Coll(_, r) => need(r, Sort::Relation, "coll"),
            SetOf(_, r) => need(r, Sort::Relation, "setof"),
            Enum(items) => items.iter().find_map(|e| need(e, Sort::Term, "enum")),
            Singleton(a) => need(a, Sort::Term, "singleton"),
            Couple(a, b) => need(a, Sort::Term, "couple").or_else(|| need(b, Sort::Term, "couple")),
            Union(a, b) => need(a, Sort::Term, "union").or_else(|| need(b, Sort::Term, "union")),
            Succ(a) => need(a, Sort::Term, "succ"),
            Subst(body, _, t) => body.sort_error().or_else(|| need(t, Sort::Term, "subst")),
        }
    }

    /// Every letter name written in the expression, bound or not.
    pub fn letters(&self) -> Vec<&Letter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters<'a>(&'a self, out: &mut Vec<&'a Letter>) {
        use Expression::*;
        match self {
            Letter(l) => out.push(l),
            Empty | Numeral(_) => {}
            Not(a) | Singleton(a) | Succ(a) => a.collect_letters(out),
            Or(a, b) | And(a, b) | Implies(a, b) | Iff(a, b) | Eq(a, b) | In(a, b) | NotIn(a, b) | Neq(a, b)
            | Subset(a, b) | Couple(a, b) | Union(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            Forall(x, r) | Exists(x, r) | Tau(x, r) | Coll(x, r) | SetOf(x, r) => {
                out.push(x);
                r.collect_letters(out);
            }
            Enum(items) => items.iter().for_each(|e| e.collect_letters(out)),
            Subst(body, x, t) => {
                body.collect_letters(out);
                out.push(x);
                t.collect_letters(out);
            }
        }
    }
}

/// `0 = ∅` and `n = {0, 1, …, n−1}`.
pub fn numeral_expr(n: u64) -> Expression {
    if n == 0 {
        Expression::Empty
    } else {
        Expression::Enum((0..n).map(Expression::Numeral).collect())
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expression::*;
        match self {
            Letter(l) => write!(f, "{l}"),
            Empty => f.write_str("empty"),
            Numeral(n) => write!(f, "(numeral {n})"),
            Not(a) => write!(f, "(not {a})"),
            Singleton(a) => write!(f, "(singleton {a})"),
            Succ(a) => write!(f, "(succ {a})"),
            Or(a, b) => write!(f, "(or {a} {b})"),
            And(a, b) => write!(f, "(and {a} {b})"),
            Implies(a, b) => write!(f, "(implies {a} {b})"),
            Iff(a, b) => write!(f, "(iff {a} {b})"),
            Eq(a, b) => write!(f, "(eq {a} {b})"),
            In(a, b) => write!(f, "(in {a} {b})"),
            NotIn(a, b) => write!(f, "(notin {a} {b})"),
            Neq(a, b) => write!(f, "(neq {a} {b})"),
            Subset(a, b) => write!(f, "(subset {a} {b})"),
            Couple(a, b) => write!(f, "(couple {a} {b})"),
            Union(a, b) => write!(f, "(union {a} {b})"),
            Forall(x, r) => write!(f, "(forall {x} {r})"),
            Exists(x, r) => write!(f, "(exists {x} {r})"),
            Tau(x, r) => write!(f, "(tau {x} {r})"),
            Coll(x, r) => write!(f, "(coll {x} {r})"),
            SetOf(x, r) => write!(f, "(setof {x} {r})"),
            Enum(items) => {
                f.write_str("(enum")?;
                for e in items {
                    write!(f, " {e}")?;
                }
                f.write_str(")")
            }
            Subst(body, x, t) => write!(f, "(subst {body} {x} {t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("unknown abbreviation `{0}`")]
    UnknownKeyword(String),
    #[error("`{keyword}` expects {expected}")]
    Arity { keyword: String, expected: &'static str },
    #[error("invalid letter `{0}`")]
    BadLetter(String),
    #[error("invalid natural number `{0}`")]
    BadNumber(String),
    #[error("trailing input after the expression")]
    Trailing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' | ')' => {
                chars.next();
                column += 1;
                let tok = if c == '(' { Tok::Open } else { Tok::Close };
                out.push(Spanned { tok, line: l0, column: c0 });
            }
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                    column += 1;
                }
                out.push(Spanned {
                    tok: Tok::Atom(atom),
                    line: l0,
                    column: c0,
                });
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn err_at(&self, at: Option<&Spanned>, kind: ParseErrorKind) -> ParseError {
        let (line, column) = at.map_or(self.end, |s| (s.line, s.column));
        ParseError { line, column, kind }
    }

    fn next(&mut self) -> Result<Spanned, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err_at(None, ParseErrorKind::UnexpectedEnd))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Close => Err(self.err_at(Some(&t), ParseErrorKind::Unexpected(")".into()))),
            Tok::Atom(a) if a == "empty" => Ok(Expression::Empty),
            Tok::Atom(a) if KEYWORDS.contains(&a.as_str()) => Err(self.err_at(
                Some(&t),
                ParseErrorKind::Arity {
                    keyword: a.clone(),
                    expected: "to be used inside parentheses",
                },
            )),
            Tok::Atom(a) => Letter::new(a)
                .map(Expression::Letter)
                .map_err(|_| self.err_at(Some(&t), ParseErrorKind::BadLetter(a.clone()))),
            Tok::Open => {
                let head = self.next()?;
                let Tok::Atom(kw) = &head.tok else {
                    return Err(self.err_at(Some(&head), ParseErrorKind::Unexpected(tok_text(&head.tok))));
                };
                let e = self.compound(kw, &head)?;
                let close = self.next()?;
                if close.tok != Tok::Close {
                    return Err(self.err_at(
                        Some(&close),
                        ParseErrorKind::Arity {
                            keyword: kw.clone(),
                            expected: arity_text(kw),
                        },
                    ));
                }
                Ok(e)
            }
        }
    }

    fn letter(&mut self, kw: &str) -> Result<Letter, ParseError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Atom(a) if !KEYWORDS.contains(&a.as_str()) => {
                Letter::new(a).map_err(|_| self.err_at(Some(&t), ParseErrorKind::BadLetter(a.clone())))
            }
            _ => Err(self.err_at(
                Some(&t),
                ParseErrorKind::Arity {
                    keyword: kw.to_string(),
                    expected: arity_text(kw),
                },
            )),
        }
    }

    fn arg(&mut self, kw: &str) -> Result<Box<Expression>, ParseError> {
        if self.peek().is_some_and(|t| t.tok == Tok::Close) {
            let t = self.peek().cloned();
            return Err(self.err_at(
                t.as_ref(),
                ParseErrorKind::Arity {
                    keyword: kw.to_string(),
                    expected: arity_text(kw),
                },
            ));
        }
        self.expr().map(Box::new)
    }

    fn compound(&mut self, kw: &str, head: &Spanned) -> Result<Expression, ParseError> {
        use Expression as E;
        Ok(match kw {
            "letter" => E::Letter(self.letter(kw)?),
            "not" => E::Not(self.arg(kw)?),
            "singleton" => E::Singleton(self.arg(kw)?),
            "succ" => E::Succ(self.arg(kw)?),
            "or" => E::Or(self.arg(kw)?, self.arg(kw)?),
            "and" => E::And(self.arg(kw)?, self.arg(kw)?),
            "implies" => E::Implies(self.arg(kw)?, self.arg(kw)?),
            "iff" => E::Iff(self.arg(kw)?, self.arg(kw)?),
            "eq" => E::Eq(self.arg(kw)?, self.arg(kw)?),
            "in" => E::In(self.arg(kw)?, self.arg(kw)?),
            "notin" => E::NotIn(self.arg(kw)?, self.arg(kw)?),
            "neq" => E::Neq(self.arg(kw)?, self.arg(kw)?),
            "subset" => E::Subset(self.arg(kw)?, self.arg(kw)?),
            "couple" => E::Couple(self.arg(kw)?, self.arg(kw)?),
            "union" => E::Union(self.arg(kw)?, self.arg(kw)?),
            "forall" => E::Forall(self.letter(kw)?, self.arg(kw)?),
            "exists" => E::Exists(self.letter(kw)?, self.arg(kw)?),
            "tau" => E::Tau(self.letter(kw)?, self.arg(kw)?),
            "coll" => E::Coll(self.letter(kw)?, self.arg(kw)?),
            "setof" => E::SetOf(self.letter(kw)?, self.arg(kw)?),
            "empty" => E::Empty,
            "enum" => {
                let mut items = vec![*self.arg(kw)?];
                while self.peek().is_some_and(|t| t.tok != Tok::Close) {
                    items.push(self.expr()?);
                }
                E::Enum(items)
            }
            "numeral" => {
                let t = self.next()?;
                match &t.tok {
                    Tok::Atom(a) => E::Numeral(
                        a.parse()
                            .map_err(|_| self.err_at(Some(&t), ParseErrorKind::BadNumber(a.clone())))?,
                    ),
                    _ => {
                        return Err(self.err_at(
                            Some(&t),
                            ParseErrorKind::Arity {
                                keyword: kw.into(),
                                expected: arity_text(kw),
                            },
                        ))
                    }
                }
            }
            "subst" => {
                let body = self.arg(kw)?;
                let x = self.letter(kw)?;
                E::Subst(body, x, self.arg(kw)?)
            }
            other => return Err(self.err_at(Some(head), ParseErrorKind::UnknownKeyword(other.to_string()))),
        })
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Open => "(".into(),
        Tok::Close => ")".into(),
        Tok::Atom(a) => a.clone(),
    }
}

fn arity_text(kw: &str) -> &'static str {
    match kw {
        "letter" => "one letter name",
        "not" | "singleton" | "succ" => "one argument",
        "forall" | "exists" | "tau" | "coll" | "setof" => "a letter and one argument",
        "enum" => "one or more arguments",
        "empty" => "no arguments",
        "numeral" => "one natural number",
        "subst" => "a body, a letter and a replacement",
        _ => "two arguments",
    }
}

pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    let toks = tokenize(text);
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1)
    };
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if let Some(t) = p.peek().cloned() {
        return Err(p.err_at(Some(&t), ParseErrorKind::Trailing));
    }
    Ok(e)
}

impl std::str::FromStr for Expression {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expression(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: &str) -> Expression {
        Expression::letter(n)
    }

    #[test]
    fn subset_instance() {
        assert_eq!(parse_expression("(subset x y)").unwrap(), Expression::subset(l("x"), l("y")));
    }

    #[test]
    fn pair_builder_body() {
        let e = parse_expression("(forall z (iff (in z t) (or (eq z x) (eq z y))))").unwrap();
        let want = Expression::forall(
            "z",
            Expression::iff(
                Expression::elem(l("z"), l("t")),
                Expression::or(Expression::eq(l("z"), l("x")), Expression::eq(l("z"), l("y"))),
            ),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn numeral_and_empty() {
        assert_eq!(parse_expression("(numeral 2)").unwrap(), Expression::Numeral(2));
        assert_eq!(parse_expression("empty").unwrap(), Expression::Empty);
        assert_eq!(parse_expression("(empty)").unwrap(), Expression::Empty);
    }

    #[test]
    fn numeral_expressions() {
        assert_eq!(numeral_expr(0), Expression::Empty);
        assert_eq!(
            numeral_expr(2),
            Expression::Enum(vec![Expression::Numeral(0), Expression::Numeral(1)])
        );
        assert_eq!(
            numeral_expr(3),
            Expression::Enum(vec![Expression::Numeral(0), Expression::Numeral(1), Expression::Numeral(2)])
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expression("(subset x\n  (frob y))").unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
        assert_eq!(e.kind, ParseErrorKind::UnknownKeyword("frob".into()));

        let e = parse_expression("(not x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);

        let e = parse_expression("(eq x)").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Arity { .. }));
        assert_eq!((e.line, e.column), (1, 6));

        let e = parse_expression("x y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Trailing);

        let e = parse_expression("(numeral two)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadNumber("two".into()));
    }

    #[test]
    fn comments_are_skipped() {
        let e = parse_expression("; the empty set\nempty ; trailing\n").unwrap();
        assert_eq!(e, Expression::Empty);
    }

    #[test]
    fn printing_is_canonical() {
        for text in [
            "(subst (in x y) x (numeral 1))",
            "(enum a b (singleton c))",
            "(setof x (and (in x a) (notin x b)))",
            "(coll x (neq x x))",
            "empty",
        ] {
            assert_eq!(parse_expression(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn sorts() {
        assert_eq!(parse_expression("(numeral 3)").unwrap().sort(), Sort::Term);
        assert_eq!(parse_expression("(subset x y)").unwrap().sort(), Sort::Relation);
        assert_eq!(parse_expression("(in (eq x y) z)").unwrap().sort_error(), Some(("in", Sort::Term)));
        assert_eq!(parse_expression("(not (enum x))").unwrap().sort_error(), Some(("not", Sort::Relation)));
    }
}
