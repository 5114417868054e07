//! Nameless assemblies: trees of signs where every `τ` binds its squares by
//! position instead of by name.
//!
//! A square (`□`) is stored as a [`Node::Bound`] carrying the number of `τ`
//! binders one has to cross, innermost first, to reach the `τ` it is linked
//! to. Two assemblies that differ only by the names of bound letters are
//! therefore the same value, which is exactly how squares-with-links behave.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Tokens used by the linear text format. They can never be letter names.
pub const SIGN_TOKENS: [&str; 6] = ["tau", "box", "not", "or", "eq", "in"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("invalid letter name `{0}`")]
    InvalidLetter(String),
    #[error("{kind} expects {expected} argument(s), got {found}")]
    Arity {
        kind: BuildKind,
        expected: usize,
        found: usize,
    },
}

/// A letter of the theory. Names starting with `_` are reserved for template
/// letters introduced by abbreviation expansion.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Result<Self, AssemblyError> {
        let mut chars = name.chars();
        let valid_head = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
        let valid_tail = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid_head || !valid_tail || SIGN_TOKENS.contains(&name) {
            return Err(AssemblyError::InvalidLetter(name.to_string()));
        }
        Ok(Letter(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_reserved(&self) -> bool {
        self.0.starts_with('_')
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelSign {
    Eq,
    In,
}

/// One sign of a linear assembly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sign {
    Tau,
    Box,
    Not,
    Or,
    Eq,
    In,
    Letter(Letter),
}

impl Sign {
    pub fn arity(&self) -> usize {
        match self {
            Sign::Tau | Sign::Not => 1,
            Sign::Or | Sign::Eq | Sign::In => 2,
            Sign::Box | Sign::Letter(_) => 0,
        }
    }

    pub fn token(&self) -> &str {
        match self {
            Sign::Tau => "tau",
            Sign::Box => "box",
            Sign::Not => "not",
            Sign::Or => "or",
            Sign::Eq => "eq",
            Sign::In => "in",
            Sign::Letter(l) => l.as_str(),
        }
    }

    pub fn from_token(token: &str) -> Result<Self, AssemblyError> {
        Ok(match token {
            "tau" => Sign::Tau,
            "box" => Sign::Box,
            "not" => Sign::Not,
            "or" => Sign::Or,
            "eq" => Sign::Eq,
            "in" => Sign::In,
            other => Sign::Letter(Letter::new(other)?),
        })
    }

    /// The mathematical glyph, used by the DOT renderer.
    pub fn glyph(&self) -> &str {
        match self {
            Sign::Tau => "τ",
            Sign::Box => "□",
            Sign::Not => "¬",
            Sign::Or => "∨",
            Sign::Eq => "=",
            Sign::In => "∈",
            Sign::Letter(l) => l.as_str(),
        }
    }
}

/// Root constructors available to [`Assembly::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildKind {
    Neg,
    Disj,
    Eq,
    Elem,
}

impl BuildKind {
    pub fn arity(self) -> usize {
        match self {
            BuildKind::Neg => 1,
            BuildKind::Disj | BuildKind::Eq | BuildKind::Elem => 2,
        }
    }
}

impl fmt::Display for BuildKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuildKind::Neg => "neg",
            BuildKind::Disj => "disj",
            BuildKind::Eq => "eq",
            BuildKind::Elem => "elem",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Term,
    Relation,
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Term => "Term",
            Classification::Relation => "Relation",
            Classification::Neither => "Neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Letter(Letter),
    /// A square linked to the `depth`-th enclosing `τ` (1 = innermost).
    Bound(u32),
    Not(Assembly),
    Or(Assembly, Assembly),
    Rel(RelSign, Assembly, Assembly),
    Tau(Assembly),
}

#[derive(Debug)]
struct Cell {
    node: Node,
    // no free letters below this node
    closed: bool,
}

/// An immutable, cheaply clonable assembly. Subtrees are shared, so
/// substitution copies pointers rather than signs.
#[derive(Clone)]
pub struct Assembly(Arc<Cell>);

impl PartialEq for Assembly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.node == other.0.node
    }
}

impl Eq for Assembly {}

impl Hash for Assembly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.node.hash(state);
    }
}

impl fmt::Debug for Assembly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assembly({})", crate::linear::linearize(self).signs_text())
    }
}

impl Assembly {
    fn from_node(node: Node) -> Self {
        let closed = match &node {
            Node::Letter(_) => false,
            Node::Bound(_) => true,
            Node::Not(a) | Node::Tau(a) => a.is_closed(),
            Node::Or(a, b) | Node::Rel(_, a, b) => a.is_closed() && b.is_closed(),
        };
        Assembly(Arc::new(Cell { node, closed }))
    }

    pub fn letter(letter: Letter) -> Self {
        Self::from_node(Node::Letter(letter))
    }

    /// Convenience for tests and examples; panics on an invalid name.
    pub fn var(name: &str) -> Self {
        Self::letter(Letter::new(name).expect("valid letter name"))
    }

    pub(crate) fn bound(depth: u32) -> Self {
        debug_assert!(depth >= 1);
        Self::from_node(Node::Bound(depth))
    }

    pub(crate) fn tau_raw(body: Assembly) -> Self {
        Self::from_node(Node::Tau(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Assembly) -> Self {
        Self::from_node(Node::Not(a))
    }

    pub fn or(a: Assembly, b: Assembly) -> Self {
        Self::from_node(Node::Or(a, b))
    }

    pub fn rel(sign: RelSign, a: Assembly, b: Assembly) -> Self {
        Self::from_node(Node::Rel(sign, a, b))
    }

    pub fn eq(a: Assembly, b: Assembly) -> Self {
        Self::rel(RelSign::Eq, a, b)
    }

    pub fn elem(a: Assembly, b: Assembly) -> Self {
        Self::rel(RelSign::In, a, b)
    }

    pub fn build(kind: BuildKind, children: &[Assembly]) -> Result<Self, AssemblyError> {
        if children.len() != kind.arity() {
            return Err(AssemblyError::Arity {
                kind,
                expected: kind.arity(),
                found: children.len(),
            });
        }
        let c = |i: usize| children[i].clone();
        Ok(match kind {
            BuildKind::Neg => Self::not(c(0)),
            BuildKind::Disj => Self::or(c(0), c(1)),
            BuildKind::Eq => Self::eq(c(0), c(1)),
            BuildKind::Elem => Self::elem(c(0), c(1)),
        })
    }

    /// `τ_x(body)`: every free `x` in `body` becomes a square linked to the
    /// new `τ`.
    pub fn tau_bind(x: &Letter, body: &Assembly) -> Self {
        let body = abstract_letter(body, x, 1).unwrap_or_else(|| body.clone());
        Self::tau_raw(body)
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// True when no letter occurs free.
    pub fn is_closed(&self) -> bool {
        self.0.closed
    }

    pub fn is_letter(&self) -> bool {
        matches!(self.node(), Node::Letter(_))
    }

    /// Number of free occurrences of `x`.
    pub fn occurrences(&self, x: &Letter) -> u64 {
        if self.is_closed() {
            return 0;
        }
        match self.node() {
            Node::Letter(y) => u64::from(y == x),
            Node::Bound(_) => 0,
            Node::Not(a) | Node::Tau(a) => a.occurrences(x),
            Node::Or(a, b) | Node::Rel(_, a, b) => a.occurrences(x) + b.occurrences(x),
        }
    }

    pub fn free_letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Letter>) {
        if self.is_closed() {
            return;
        }
        match self.node() {
            Node::Letter(y) => {
                out.insert(y.clone());
            }
            Node::Bound(_) => {}
            Node::Not(a) | Node::Tau(a) => a.collect_letters(out),
            Node::Or(a, b) | Node::Rel(_, a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    /// Simultaneous substitution `(T₁|x₁,…,Tₙ|xₙ)A`. Images are inserted as
    /// they are; squares are never touched, so capture cannot happen.
    pub fn substitute(&self, bindings: &BTreeMap<Letter, Assembly>) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        substitute_inner(self, bindings).unwrap_or_else(|| self.clone())
    }

    pub fn substitute_one(&self, x: &Letter, image: &Assembly) -> Self {
        let mut map = BTreeMap::new();
        map.insert(x.clone(), image.clone());
        self.substitute(&map)
    }

    /// Replace the squares linked to the root of a `τ` body by `x`.
    /// `body` is the child of a `Tau` node; the result is the relation `R`
    /// with `τ_x(R)` equal to that node whenever `x` is not free in `body`.
    pub fn open(body: &Assembly, x: &Letter) -> Self {
        open_inner(body, x, 1).unwrap_or_else(|| body.clone())
    }

    pub fn classify(&self) -> Classification {
        match self.node() {
            Node::Letter(_) | Node::Bound(_) => Classification::Term,
            Node::Tau(body) => match body.classify() {
                Classification::Relation => Classification::Term,
                _ => Classification::Neither,
            },
            Node::Not(a) => match a.classify() {
                Classification::Relation => Classification::Relation,
                _ => Classification::Neither,
            },
            Node::Or(a, b) => {
                if a.classify() == Classification::Relation && b.classify() == Classification::Relation {
                    Classification::Relation
                } else {
                    Classification::Neither
                }
            }
            Node::Rel(_, a, b) => {
                if a.classify() == Classification::Term && b.classify() == Classification::Term {
                    Classification::Relation
                } else {
                    Classification::Neither
                }
            }
        }
    }
}

fn abstract_letter(a: &Assembly, x: &Letter, depth: u32) -> Option<Assembly> {
    if a.is_closed() {
        return None;
    }
    match a.node() {
        Node::Letter(y) if y == x => Some(Assembly::bound(depth)),
        Node::Letter(_) | Node::Bound(_) => None,
        Node::Not(b) => abstract_letter(b, x, depth).map(Assembly::not),
        Node::Tau(b) => abstract_letter(b, x, depth + 1).map(Assembly::tau_raw),
        Node::Or(l, r) => rebuild2(l, r, |c| abstract_letter(c, x, depth), Assembly::or),
        Node::Rel(s, l, r) => rebuild2(l, r, |c| abstract_letter(c, x, depth), |p, q| Assembly::rel(*s, p, q)),
    }
}

fn substitute_inner(a: &Assembly, map: &BTreeMap<Letter, Assembly>) -> Option<Assembly> {
    if a.is_closed() {
        return None;
    }
    match a.node() {
        Node::Letter(y) => map.get(y).cloned(),
        Node::Bound(_) => None,
        Node::Not(b) => substitute_inner(b, map).map(Assembly::not),
        Node::Tau(b) => substitute_inner(b, map).map(Assembly::tau_raw),
        Node::Or(l, r) => rebuild2(l, r, |c| substitute_inner(c, map), Assembly::or),
        Node::Rel(s, l, r) => rebuild2(l, r, |c| substitute_inner(c, map), |p, q| Assembly::rel(*s, p, q)),
    }
}

fn open_inner(a: &Assembly, x: &Letter, depth: u32) -> Option<Assembly> {
    match a.node() {
        Node::Bound(d) if *d == depth => Some(Assembly::letter(x.clone())),
        Node::Letter(_) | Node::Bound(_) => None,
        Node::Not(b) => open_inner(b, x, depth).map(Assembly::not),
        Node::Tau(b) => open_inner(b, x, depth + 1).map(Assembly::tau_raw),
        Node::Or(l, r) => rebuild2(l, r, |c| open_inner(c, x, depth), Assembly::or),
        Node::Rel(s, l, r) => rebuild2(l, r, |c| open_inner(c, x, depth), |p, q| Assembly::rel(*s, p, q)),
    }
}

fn rebuild2(
    l: &Assembly,
    r: &Assembly,
    mut f: impl FnMut(&Assembly) -> Option<Assembly>,
    mk: impl FnOnce(Assembly, Assembly) -> Assembly,
) -> Option<Assembly> {
    match (f(l), f(r)) {
        (None, None) => None,
        (nl, nr) => Some(mk(nl.unwrap_or_else(|| l.clone()), nr.unwrap_or_else(|| r.clone()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::linearize;

    fn v(n: &str) -> Assembly {
        Assembly::var(n)
    }
    fn l(n: &str) -> Letter {
        Letter::new(n).unwrap()
    }

    #[test]
    fn build_prefix_words() {
        let a = Assembly::build(BuildKind::Elem, &[v("x"), v("X")]).unwrap();
        let lin = linearize(&a);
        assert_eq!(lin.signs_text(), "in x X");
        assert_eq!(lin.links().len(), 0);

        let n = Assembly::build(BuildKind::Neg, &[a]).unwrap();
        assert_eq!(linearize(&n).signs().len(), 4);

        let d = Assembly::or(Assembly::not(Assembly::elem(v("z"), v("x"))), Assembly::elem(v("z"), v("y")));
        assert_eq!(linearize(&d).signs_text(), "or not in z x in z y");
        assert_eq!(linearize(&d).signs().len(), 8);
    }

    #[test]
    fn build_rejects_wrong_arity() {
        let err = Assembly::build(BuildKind::Disj, &[v("x")]).unwrap_err();
        assert_eq!(
            err,
            AssemblyError::Arity {
                kind: BuildKind::Disj,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn letter_names() {
        assert!(Letter::new("x").is_ok());
        assert!(Letter::new("_z0").unwrap().is_reserved());
        assert!(Letter::new("").is_err());
        assert!(Letter::new("1x").is_err());
        assert!(Letter::new("tau").is_err());
        assert!(Letter::new("a b").is_err());
    }

    #[test]
    fn tau_over_subset_body() {
        // ¬(z∈x ⇒ z∈y) with ⇒ written as ∨¬
        let body = Assembly::not(Assembly::or(
            Assembly::not(Assembly::elem(v("z"), v("x"))),
            Assembly::elem(v("z"), v("y")),
        ));
        let t = Assembly::tau_bind(&l("z"), &body);
        let lin = linearize(&t);
        assert_eq!(lin.signs_text(), "tau not or not in box x in box y");
        assert_eq!(lin.signs().len(), 10);
        assert_eq!(lin.links().len(), 2);
    }

    #[test]
    fn tau_without_occurrence_keeps_the_tau() {
        let t = Assembly::tau_bind(&l("x"), &v("y"));
        let lin = linearize(&t);
        assert_eq!(lin.signs_text(), "tau y");
        assert!(lin.links().is_empty());
        assert_eq!(t.occurrences(&l("x")), 0);
    }

    #[test]
    fn substitution_basics() {
        let t = Assembly::elem(v("a"), v("b"));
        assert_eq!(v("x").substitute_one(&l("x"), &t), t);
        let a = Assembly::eq(v("p"), v("q"));
        assert_eq!(a.substitute_one(&l("z"), &t), a);
        assert!(a.substitute_one(&l("z"), &t) == a);
    }

    #[test]
    fn substitution_is_simultaneous() {
        let a = Assembly::eq(v("x"), v("y"));
        let mut map = BTreeMap::new();
        map.insert(l("x"), v("y"));
        map.insert(l("y"), v("x"));
        assert_eq!(a.substitute(&map), Assembly::eq(v("y"), v("x")));
    }

    #[test]
    fn substitution_leaves_squares_alone() {
        let a = Assembly::tau_bind(&l("x"), &Assembly::elem(v("x"), v("y")));
        let b = a.substitute_one(&l("x"), &v("w"));
        assert_eq!(a, b);
        let c = a.substitute_one(&l("y"), &v("x"));
        assert_eq!(linearize(&c).signs_text(), "tau in box x");
    }

    #[test]
    fn classification() {
        assert_eq!(v("x").classify(), Classification::Term);
        let r = Assembly::elem(v("x"), v("y"));
        assert_eq!(r.classify(), Classification::Relation);
        assert_eq!(Assembly::tau_bind(&l("x"), &r).classify(), Classification::Term);
        assert_eq!(Assembly::or(v("x"), v("y")).classify(), Classification::Neither);
        assert_eq!(Assembly::not(v("x")).classify(), Classification::Neither);
        assert_eq!(Assembly::elem(r.clone(), v("y")).classify(), Classification::Neither);
        // τ over a term is not formative
        assert_eq!(Assembly::tau_bind(&l("x"), &v("y")).classify(), Classification::Neither);
    }

    #[test]
    fn open_inverts_tau_bind() {
        let r = Assembly::or(Assembly::elem(v("x"), v("y")), Assembly::eq(v("x"), v("x")));
        let t = Assembly::tau_bind(&l("x"), &r);
        let Node::Tau(body) = t.node() else { panic!() };
        assert_eq!(Assembly::open(body, &l("x")), r);
    }
}
