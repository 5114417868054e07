//! A small language for writing and combining sets:
//!
//! ```text
//! let a = {};
//! let b = {a, {a}};
//! union(b, {3})   # decimal numerals denote von Neumann numerals
//! ```
//!
//! `(x, y)` is the couple of `x` and `y`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{equiv, graph, HfError, HfSet};
use crate::ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HfValue {
    Set(HfSet),
    Bool(bool),
}

impl fmt::Display for HfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HfValue::Set(s) => write!(f, "{s}"),
            HfValue::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: {message}")]
    Eval { line: usize, column: usize, message: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, LangError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let at = |tok| Lexed { tok, line: li + 1, column };
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if "{}(),;=".contains(c) {
                out.push(at(Tok::Sym(c)));
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse().map_err(|_| LangError::Syntax {
                    line: li + 1,
                    column,
                    message: format!("numeral `{digits}` is too large"),
                })?;
                out.push(at(Tok::Num(n)));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(at(Tok::Ident(chars[start..i].iter().collect())));
            } else {
                return Err(LangError::Syntax {
                    line: li + 1,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

/// Numerals above this are refused; their sets grow linearly but every
/// operation on them is at least that costly.
const MAX_NUMERAL: u64 = 10_000;

struct Eval<'a> {
    toks: &'a [Lexed],
    pos: usize,
    env: HashMap<String, HfValue>,
}

impl Eval<'_> {
    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        }
    }

    fn syntax(&self, message: impl Into<String>) -> LangError {
        let (line, column) = self.here();
        LangError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn eval_err(&self, at: (usize, usize), message: impl Into<String>) -> LangError {
        LangError::Eval {
            line: at.0,
            column: at.1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn expect(&mut self, c: char) -> Result<(), LangError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{c}`")))
        }
    }

    fn program(&mut self) -> Result<HfValue, LangError> {
        while self.peek() == Some(&Tok::Ident("let".into())) {
            self.pos += 1;
            let name = match self.peek() {
                Some(Tok::Ident(n)) if n != "let" => n.clone(),
                _ => return Err(self.syntax("expected a name after `let`")),
            };
            self.pos += 1;
            self.expect('=')?;
            let v = self.expr()?;
            self.expect(';')?;
            self.env.insert(name, v);
        }
        let v = self.expr()?;
        if self.peek() == Some(&Tok::Sym(';')) {
            self.pos += 1;
        }
        if self.pos < self.toks.len() {
            return Err(self.syntax("unexpected input after the final expression"));
        }
        Ok(v)
    }

    fn set_expr(&mut self) -> Result<HfSet, LangError> {
        let at = self.here();
        match self.expr()? {
            HfValue::Set(s) => Ok(s),
            HfValue::Bool(_) => Err(self.eval_err(at, "expected a set, found a truth value")),
        }
    }

    fn expr(&mut self) -> Result<HfValue, LangError> {
        let at = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.syntax("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) if n > MAX_NUMERAL => Err(self.eval_err(at, format!("numeral {n} exceeds {MAX_NUMERAL}"))),
            Tok::Num(n) => Ok(HfValue::Set(HfSet::numeral(n))),
            Tok::Sym('{') => {
                let mut elems = Vec::new();
                if self.peek() != Some(&Tok::Sym('}')) {
                    elems.push(self.set_expr()?);
                    while self.peek() == Some(&Tok::Sym(',')) {
                        self.pos += 1;
                        elems.push(self.set_expr()?);
                    }
                }
                self.expect('}')?;
                Ok(HfValue::Set(HfSet::make_set(elems)))
            }
            Tok::Sym('(') => {
                let x = self.set_expr()?;
                self.expect(',')?;
                let y = self.set_expr()?;
                self.expect(')')?;
                Ok(HfValue::Set(graph::couple(&x, &y)))
            }
            Tok::Ident(name) if self.peek() == Some(&Tok::Sym('(')) => {
                self.pos += 1;
                let mut args = Vec::new();
                if self.peek() != Some(&Tok::Sym(')')) {
                    args.push(self.set_expr()?);
                    while self.peek() == Some(&Tok::Sym(',')) {
                        self.pos += 1;
                        args.push(self.set_expr()?);
                    }
                }
                self.expect(')')?;
                call(&name, &args).map_err(|m| self.eval_err(at, m))
            }
            Tok::Ident(name) => self
                .env
                .get(&name)
                .cloned()
                .ok_or_else(|| self.eval_err(at, format!("unbound name `{name}`"))),
            Tok::Sym(c) => Err(LangError::Syntax {
                line: at.0,
                column: at.1,
                message: format!("unexpected `{c}`"),
            }),
        }
    }
}

fn call(name: &str, args: &[HfSet]) -> Result<HfValue, String> {
    use HfValue::{Bool, Set};
    let arity = match name {
        "powerset" | "bigunion" | "first" | "second" | "inverse" | "pr1" | "pr2" | "diagonal" | "succ" | "sup"
        | "card" | "rank" | "is_functional" | "is_ordinal" | "is_transitive" | "is_decent" => 1,
        "union" | "inter" | "diff" | "product" | "couple" | "compose" | "image" | "preimage" | "apply" | "closure"
        | "quotient" | "subset" | "member" | "equal" | "is_equivalence" => 2,
        _ => return Err(format!("unknown function `{name}`")),
    };
    if args.len() != arity {
        return Err(format!("`{name}` takes {arity} argument(s), got {}", args.len()));
    }
    let hf = |e: HfError| e.to_string();
    let a = &args[0];
    let b = args.get(1);
    let b = || b.expect("arity checked");
    Ok(match name {
        "union" => Set(a.union(b())),
        "inter" => Set(a.intersection(b())),
        "diff" => Set(a.difference(b())),
        "powerset" => Set(a.powerset().map_err(hf)?),
        "bigunion" => Set(a.big_union()),
        "product" => Set(graph::product(a, b())),
        "couple" => Set(graph::couple(a, b())),
        "first" => Set(graph::decouple(a).map_err(hf)?.0),
        "second" => Set(graph::decouple(a).map_err(hf)?.1),
        "inverse" => Set(graph::graph_inverse(a).map_err(hf)?),
        "compose" => Set(graph::graph_compose(a, b()).map_err(hf)?),
        "image" => Set(graph::graph_image(a, b()).map_err(hf)?),
        "preimage" => Set(graph::preimage(a, b()).map_err(hf)?),
        "pr1" => Set(graph::pr1_set(a).map_err(hf)?),
        "pr2" => Set(graph::pr2_set(a).map_err(hf)?),
        "apply" => Set(graph::apply(a, b()).map_err(hf)?),
        "diagonal" => Set(graph::diagonal(a)),
        "closure" => Set(equiv::equivalence_closure(a, b()).map_err(hf)?),
        "quotient" => Set(equiv::quotient(a, b()).map_err(hf)?),
        "succ" => Set(a.successor()),
        "sup" => Set(ordinal::sup_ordinals(a).map_err(|e| e.to_string())?),
        "card" => Set(ordinal::cardinal_of(a)),
        "rank" => Set(HfSet::numeral(u64::from(a.rank()))),
        "subset" => Bool(a.is_subset(b())),
        "member" => Bool(b().contains(a)),
        "equal" => Bool(a == b()),
        "is_functional" => Bool(graph::is_functional(a).map_err(hf)?),
        "is_ordinal" => Bool(ordinal::is_ordinal(a)),
        "is_transitive" => Bool(ordinal::is_transitive_set(a)),
        "is_decent" => Bool(ordinal::is_decent(a)),
        "is_equivalence" => Bool(equiv::equivalence_check(a, b()).map_err(hf)?.verdict()),
        _ => unreachable!("arity table covers every name"),
    })
}

/// Evaluate `let` bindings followed by one expression.
pub fn eval_program(text: &str) -> Result<HfValue, LangError> {
    let toks = lex(text)?;
    Eval {
        toks: &toks,
        pos: 0,
        env: HashMap::new(),
    }
    .program()
}

/// Parse a program whose value is a set.
pub fn parse_set(text: &str) -> Result<HfSet, LangError> {
    match eval_program(text)? {
        HfValue::Set(s) => Ok(s),
        HfValue::Bool(_) => Err(LangError::Eval {
            line: 1,
            column: 1,
            message: "expected a set, found a truth value".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(text: &str) -> HfSet {
        parse_set(text).unwrap()
    }

    #[test]
    fn literals_and_numerals() {
        assert_eq!(set("{}"), HfSet::empty());
        assert_eq!(set("{{},{{}}}"), HfSet::numeral(2));
        assert_eq!(set("{1, 0}"), HfSet::numeral(2));
        assert_eq!(set("{{}, {}}"), HfSet::numeral(1));
    }

    #[test]
    fn lets_and_calls() {
        let v = eval_program("let a = {};\nlet b = {a, {a}};\nunion(b, {2})").unwrap();
        assert_eq!(v, HfValue::Set(HfSet::numeral(3)));
        assert_eq!(eval_program("member(1, 3)").unwrap(), HfValue::Bool(true));
        assert_eq!(set("first((4, 7))"), HfSet::numeral(4));
        assert_eq!(set("card(product(2, 3))"), HfSet::numeral(6));
    }

    #[test]
    fn errors_have_positions() {
        let e = eval_program("let a = {};\nunion(a, b)").unwrap_err();
        assert_eq!(
            e,
            LangError::Eval {
                line: 2,
                column: 10,
                message: "unbound name `b`".into()
            }
        );
        assert!(matches!(eval_program("{1, 2"), Err(LangError::Syntax { .. })));
        assert!(matches!(eval_program("frob(1)"), Err(LangError::Eval { .. })));
        assert!(matches!(eval_program("first(2)"), Err(LangError::Eval { .. })));
    }
}
