//! Text formats for fixed-point instances.
//!
//! Each file is a list of `key: value` lines; `#` starts a comment. Elements
//! are HF literals (`{}`, `{{},{{}}}`) or decimal numerals, written without
//! spaces.
//!
//! Injection pair:
//! ```text
//! E: 0 1 2
//! F: 0 1
//! f: 0->1 1->0 2->{{1}}
//! g: 0->0 1->1
//! ```
//! (every element of `f` and `g` must be in the stated sets)
//!
//! Monotone map on an order, either an explicit carrier with generating
//! pairs or the inclusion order on the subsets of a base set:
//! ```text
//! carrier: 0 1 2
//! order: 0<=1 1<=2
//! map: 0->1 1->1 2->2
//! ```
//! ```text
//! powerset: 0 1
//! map: 0->{0} 1->{0} {1}->{0} 2->2
//! ```
//!
//! König instance, one group per index separated by `|`; tuples of `A` are
//! written `(x0,x1,…)`:
//! ```text
//! B: 0 1 | 0 1
//! A: (1,0) | (0,1)
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fixpoint::{tuple_set, FixpointError, InjectionPair, MonotoneMap};
use crate::hf::{parse_set, HfSet};
use crate::ordinal::{FiniteOrder, OrdinalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
    #[error(transparent)]
    Order(#[from] OrdinalError),
    #[error(transparent)]
    Instance(#[from] FixpointError),
}

struct Fields<'a> {
    lines: BTreeMap<String, (usize, &'a str)>,
}

impl<'a> Fields<'a> {
    fn parse(text: &'a str, allowed: &[&str]) -> Result<Self, FormatError> {
        let mut lines = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| FormatError::Syntax { line: i + 1, message };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| syntax("expected `key: value`".into()))?;
            let key = key.trim();
            if !allowed.contains(&key) {
                return Err(syntax(format!("unknown key `{key}`, expected one of {}", allowed.join(", "))));
            }
            if lines.insert(key.to_string(), (i + 1, value.trim())).is_some() {
                return Err(syntax(format!("`{key}` given twice")));
            }
        }
        Ok(Fields { lines })
    }

    fn get(&self, key: &'static str) -> Option<(usize, &'a str)> {
        self.lines.get(key).copied()
    }

    fn require(&self, key: &'static str) -> Result<(usize, &'a str), FormatError> {
        self.get(key).ok_or(FormatError::Missing(key))
    }
}

fn element(line: usize, token: &str) -> Result<HfSet, FormatError> {
    parse_set(token).map_err(|e| FormatError::Syntax {
        line,
        message: format!("bad element `{token}`: {e}"),
    })
}

fn elements(line: usize, text: &str) -> Result<Vec<HfSet>, FormatError> {
    text.split_whitespace().map(|t| element(line, t)).collect()
}

fn arrows(line: usize, text: &str) -> Result<Vec<(HfSet, HfSet)>, FormatError> {
    text.split_whitespace()
        .map(|t| {
            let (x, y) = t.split_once("->").ok_or_else(|| FormatError::Syntax {
                line,
                message: format!("expected `x->y`, found `{t}`"),
            })?;
            Ok((element(line, x)?, element(line, y)?))
        })
        .collect()
}

fn function(line: usize, text: &str) -> Result<BTreeMap<HfSet, HfSet>, FormatError> {
    let pairs = arrows(line, text)?;
    let mut map = BTreeMap::new();
    for (x, y) in pairs {
        if map.insert(x.clone(), y).is_some() {
            return Err(FormatError::Syntax {
                line,
                message: format!("{} is mapped twice", x.compact()),
            });
        }
    }
    Ok(map)
}

pub fn parse_injection_pair(text: &str) -> Result<InjectionPair, FormatError> {
    let fields = Fields::parse(text, &["E", "F", "f", "g"])?;
    let (le, e) = fields.require("E")?;
    let (lf, f_set) = fields.require("F")?;
    let (lf_map, f) = fields.require("f")?;
    let (lg_map, g) = fields.require("g")?;
    Ok(InjectionPair::new(
        elements(le, e)?.into_iter().collect(),
        elements(lf, f_set)?.into_iter().collect(),
        function(lf_map, f)?,
        function(lg_map, g)?,
    )?)
}

/// The order of a `carrier:`/`order:` or `powerset:` file, without a map.
pub fn parse_order(text: &str) -> Result<FiniteOrder, FormatError> {
    let fields = Fields::parse(text, &["carrier", "order", "powerset", "map"])?;
    order_of(&fields)
}

fn order_of(fields: &Fields<'_>) -> Result<FiniteOrder, FormatError> {
    match (fields.get("carrier"), fields.get("powerset")) {
        (Some(_), Some((line, _))) => Err(FormatError::Syntax {
            line,
            message: "give either `carrier:` or `powerset:`".into(),
        }),
        (None, Some((line, base))) => Ok(FiniteOrder::powerset(&elements(line, base)?.into_iter().collect())?),
        (Some((line, carrier)), None) => {
            let carrier: HfSet = elements(line, carrier)?.into_iter().collect();
            let generators = match fields.get("order") {
                None => vec![],
                Some((line, text)) => text
                    .split_whitespace()
                    .map(|t| {
                        let (x, y) = t.split_once("<=").ok_or_else(|| FormatError::Syntax {
                            line,
                            message: format!("expected `x<=y`, found `{t}`"),
                        })?;
                        Ok((element(line, x)?, element(line, y)?))
                    })
                    .collect::<Result<_, FormatError>>()?,
            };
            Ok(FiniteOrder::generated_by(&carrier, &generators)?)
        }
        (None, None) => Err(FormatError::Missing("carrier")),
    }
}

pub fn parse_monotone_map(text: &str) -> Result<MonotoneMap, FormatError> {
    let fields = Fields::parse(text, &["carrier", "order", "powerset", "map"])?;
    let order = order_of(&fields)?;
    let (line, map) = fields.require("map")?;
    let pairs: Vec<_> = function(line, map)?.into_iter().collect();
    Ok(MonotoneMap::from_pairs(order, &pairs)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoenigInstance {
    pub b: Vec<HfSet>,
    pub a: Vec<HfSet>,
}

fn groups(text: &str) -> Vec<&str> {
    if text.trim().is_empty() {
        vec![]
    } else {
        text.split('|').collect()
    }
}

fn tuple(line: usize, token: &str) -> Result<HfSet, FormatError> {
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| FormatError::Syntax {
            line,
            message: format!("expected a tuple `(x0,x1,…)`, found `{token}`"),
        })?;
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in inner.char_indices() {
        match c {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !inner.is_empty() {
        parts.push(&inner[start..]);
    }
    let xs = parts.into_iter().map(|p| element(line, p)).collect::<Result<Vec<_>, _>>()?;
    Ok(tuple_set(&xs))
}

pub fn parse_koenig(text: &str) -> Result<KoenigInstance, FormatError> {
    let fields = Fields::parse(text, &["B", "A"])?;
    let (lb, b) = fields.require("B")?;
    let (la, a) = fields.require("A")?;
    let b = groups(b)
        .into_iter()
        .map(|g| Ok(elements(lb, g)?.into_iter().collect()))
        .collect::<Result<Vec<HfSet>, FormatError>>()?;
    let a = groups(a)
        .into_iter()
        .map(|g| g.split_whitespace().map(|t| tuple(la, t)).collect())
        .collect::<Result<Vec<HfSet>, FormatError>>()?;
    Ok(KoenigInstance { b, a })
}
