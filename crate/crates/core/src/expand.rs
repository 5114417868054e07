//! Expansion of abbreviations into raw assemblies.
//!
//! Template letters are `_z0` (the bound variable of builders and of `⊂`)
//! and `_t0` (the set being defined). User expressions may not mention any
//! letter starting with `_`.

use std::collections::HashMap;

use thiserror::Error;

use crate::assembly::{Assembly, Letter};
use crate::expr::{Expression, Sort};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("letter `{0}` is reserved for template letters")]
    ReservedLetter(String),
    #[error("`{keyword}` expects a {expected} argument")]
    Sort { keyword: &'static str, expected: Sort },
}

pub(crate) fn z0() -> Letter {
    Letter::new("_z0").expect("reserved name")
}

pub(crate) fn t0() -> Letter {
    Letter::new("_t0").expect("reserved name")
}

/// Reject reserved letters and ill-sorted arguments.
pub fn check_expression(e: &Expression) -> Result<(), ExpandError> {
    if let Some(l) = e.letters().into_iter().find(|l| l.is_reserved()) {
        return Err(ExpandError::ReservedLetter(l.to_string()));
    }
    if let Some((keyword, expected)) = e.sort_error() {
        return Err(ExpandError::Sort { keyword, expected });
    }
    Ok(())
}

pub fn expand(e: &Expression) -> Result<Assembly, ExpandError> {
    check_expression(e)?;
    Ok(Expander::default().expand(e))
}

/// `A ⇒ B` is `∨¬AB`.
pub fn implies(a: Assembly, b: Assembly) -> Assembly {
    Assembly::or(Assembly::not(a), b)
}

/// `A et B` is `¬∨¬A¬B`.
pub fn and(a: Assembly, b: Assembly) -> Assembly {
    Assembly::not(Assembly::or(Assembly::not(a), Assembly::not(b)))
}

pub fn iff(a: Assembly, b: Assembly) -> Assembly {
    and(implies(a.clone(), b.clone()), implies(b, a))
}

/// `(∃x)R` is `(τ_x(R)|x)R`.
pub fn exists(x: &Letter, r: &Assembly) -> Assembly {
    r.substitute_one(x, &Assembly::tau_bind(x, r))
}

/// `(∀x)R` is `¬¬(τ_x(¬R)|x)R`.
pub fn forall(x: &Letter, r: &Assembly) -> Assembly {
    let witness = Assembly::tau_bind(x, &Assembly::not(r.clone()));
    Assembly::not(Assembly::not(r.substitute_one(x, &witness)))
}

/// `(∀x)((x∈y) ⇔ R)` with `y` the reserved `_t0`.
fn builder_body(x: &Letter, r: &Assembly) -> Assembly {
    let x_in_y = Assembly::elem(Assembly::letter(x.clone()), Assembly::letter(t0()));
    forall(x, &iff(x_in_y, r.clone()))
}

/// `{x | R}` is `τ_y (∀x)((x∈y) ⇔ R)`.
pub fn set_of(x: &Letter, r: &Assembly) -> Assembly {
    Assembly::tau_bind(&t0(), &builder_body(x, r))
}

/// `Coll_x R` is `(∃y)(∀x)((x∈y) ⇔ R)`.
pub fn coll(x: &Letter, r: &Assembly) -> Assembly {
    exists(&t0(), &builder_body(x, r))
}

/// `{T₁,…,Tₙ}` is `{z | z=T₁ ou (z=T₂ ou …)}`. A single element is listed
/// twice, as in `{T} = {T, T}`.
pub fn enumeration(items: &[Assembly]) -> Assembly {
    assert!(!items.is_empty(), "enumeration needs at least one element");
    if items.len() == 1 {
        return enumeration(&[items[0].clone(), items[0].clone()]);
    }
    let z = Assembly::letter(z0());
    let mut chain = Assembly::eq(z.clone(), items[items.len() - 1].clone());
    for item in items[..items.len() - 1].iter().rev() {
        chain = Assembly::or(Assembly::eq(z.clone(), item.clone()), chain);
    }
    set_of(&z0(), &chain)
}

pub fn empty_set() -> Assembly {
    let z = Assembly::letter(z0());
    let not_in = Assembly::not(Assembly::elem(z, Assembly::letter(t0())));
    Assembly::tau_bind(&t0(), &forall(&z0(), &not_in))
}

pub fn couple(a: Assembly, b: Assembly) -> Assembly {
    enumeration(&[enumeration(std::slice::from_ref(&a)), enumeration(&[a, b])])
}

pub fn union(a: Assembly, b: Assembly) -> Assembly {
    let z = Assembly::letter(z0());
    let body = Assembly::or(Assembly::elem(z.clone(), a), Assembly::elem(z, b));
    set_of(&z0(), &body)
}

/// `(∀z)(z∈A ⇒ z∈B)`.
pub fn subset(a: Assembly, b: Assembly) -> Assembly {
    let z = Assembly::letter(z0());
    forall(&z0(), &implies(Assembly::elem(z.clone(), a), Assembly::elem(z, b)))
}

/// Expands with a numeral cache, so `0 … n` share their subtrees.
#[derive(Default)]
pub struct Expander {
    numerals: HashMap<u64, Assembly>,
}

impl Expander {
    pub fn numeral(&mut self, n: u64) -> Assembly {
        if let Some(a) = self.numerals.get(&n) {
            return a.clone();
        }
        let a = if n == 0 {
            empty_set()
        } else {
            let items: Vec<Assembly> = (0..n).map(|i| self.numeral(i)).collect();
            enumeration(&items)
        };
        self.numerals.insert(n, a.clone());
        a
    }

    /// Expand without checking letters or sorts.
    pub fn expand(&mut self, e: &Expression) -> Assembly {
        use Expression as E;
        match e {
            E::Letter(l) => Assembly::letter(l.clone()),
            E::Not(a) => Assembly::not(self.expand(a)),
            E::Or(a, b) => Assembly::or(self.expand(a), self.expand(b)),
            E::And(a, b) => and(self.expand(a), self.expand(b)),
            E::Implies(a, b) => implies(self.expand(a), self.expand(b)),
            E::Iff(a, b) => iff(self.expand(a), self.expand(b)),
            E::Eq(a, b) => Assembly::eq(self.expand(a), self.expand(b)),
            E::In(a, b) => Assembly::elem(self.expand(a), self.expand(b)),
            E::NotIn(a, b) => Assembly::not(Assembly::elem(self.expand(a), self.expand(b))),
            E::Neq(a, b) => Assembly::not(Assembly::eq(self.expand(a), self.expand(b))),
            E::Subset(a, b) => subset(self.expand(a), self.expand(b)),
            E::Forall(x, r) => forall(x, &self.expand(r)),
            E::Exists(x, r) => exists(x, &self.expand(r)),
            E::Tau(x, r) => Assembly::tau_bind(x, &self.expand(r)),
            E::Coll(x, r) => coll(x, &self.expand(r)),
            E::SetOf(x, r) => set_of(x, &self.expand(r)),
            E::Enum(items) => {
                let items: Vec<Assembly> = items.iter().map(|i| self.expand(i)).collect();
                enumeration(&items)
            }
            E::Singleton(a) => enumeration(&[self.expand(a)]),
            E::Couple(a, b) => couple(self.expand(a), self.expand(b)),
            E::Empty => self.numeral(0),
            E::Union(a, b) => union(self.expand(a), self.expand(b)),
            E::Succ(a) => {
                let a = self.expand(a);
                union(a.clone(), enumeration(&[a]))
            }
            E::Numeral(n) => self.numeral(*n),
            E::Subst(body, x, t) => self.expand(body).substitute_one(x, &self.expand(t)),
        }
    }
}
