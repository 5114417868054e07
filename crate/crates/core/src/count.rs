//! Exact sign and link counts.
//!
//! [`count_materialized`] walks an assembly sign by sign. [`count_symbolic`]
//! never builds the assembly: it mirrors the expander on count vectors,
//! using the substitution and `τ` laws.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::assembly::{Assembly, Letter};
use crate::expand::{check_expression, t0, z0, ExpandError};
use crate::expr::Expression;
use crate::linear::{for_each_sign, SignRef};

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("assembly has more than {budget} signs; use the symbolic count instead")]
    Budget { budget: u64 },
    #[error(transparent)]
    Expand(#[from] ExpandError),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountVector {
    pub signs: BigUint,
    pub links: BigUint,
    /// Free occurrences per letter; letters that do not occur are absent.
    pub occ: BTreeMap<Letter, BigUint>,
}

impl CountVector {
    pub fn letter(x: &Letter) -> Self {
        let mut occ = BTreeMap::new();
        occ.insert(x.clone(), BigUint::one());
        CountVector {
            signs: BigUint::one(),
            links: BigUint::zero(),
            occ,
        }
    }

    pub fn occurrences(&self, x: &Letter) -> BigUint {
        self.occ.get(x).cloned().unwrap_or_default()
    }

    /// Counts of `¬A`.
    pub fn not(a: &Self) -> Self {
        CountVector {
            signs: &a.signs + 1u32,
            ..a.clone()
        }
    }

    /// Counts of `∨AB`, `=AB` or `∈AB`.
    pub fn binary(a: &Self, b: &Self) -> Self {
        let mut occ = a.occ.clone();
        for (l, n) in &b.occ {
            *occ.entry(l.clone()).or_default() += n;
        }
        CountVector {
            signs: &a.signs + &b.signs + 1u32,
            links: &a.links + &b.links,
            occ,
        }
    }

    /// Counts of `τ_x(A)`.
    pub fn tau(x: &Letter, a: &Self) -> Self {
        let mut occ = a.occ.clone();
        let bound = occ.remove(x).unwrap_or_default();
        CountVector {
            signs: &a.signs + 1u32,
            links: &a.links + bound,
            occ,
        }
    }

    /// Counts of `(T|x)A`.
    pub fn substitute(a: &Self, x: &Letter, t: &Self) -> Self {
        Self::substitute_many(a, &[(x.clone(), t.clone())])
    }

    /// Counts of the simultaneous substitution `(T₁|x₁,…,Tₙ|xₙ)A`; the
    /// letters must be distinct.
    pub fn substitute_many(a: &Self, bindings: &[(Letter, Self)]) -> Self {
        let mut out = a.clone();
        for (x, _) in bindings {
            out.occ.remove(x);
        }
        for (x, t) in bindings {
            let o = a.occurrences(x);
            if o.is_zero() {
                continue;
            }
            out.signs = out.signs + &o * &t.signs - &o;
            out.links += &o * &t.links;
            for (y, n) in &t.occ {
                *out.occ.entry(y.clone()).or_default() += &o * n;
            }
        }
        out
    }

    /// Occurrence map without template letters.
    pub fn user_occ(&self) -> impl Iterator<Item = (&Letter, &BigUint)> {
        self.occ.iter().filter(|(l, _)| !l.is_reserved())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let occ: serde_json::Map<String, serde_json::Value> =
            self.user_occ().map(|(l, n)| (l.to_string(), n.to_string().into())).collect();
        serde_json::json!({
            "signs": self.signs.to_string(),
            "links": self.links.to_string(),
            "occ": occ,
        })
    }
}

impl fmt::Display for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "signs: {}", self.signs)?;
        writeln!(f, "links: {}", self.links)?;
        for (l, n) in self.user_occ() {
            writeln!(f, "occ {l}: {n}")?;
        }
        Ok(())
    }
}

/// Count by walking the signs, refusing assemblies longer than `budget`.
pub fn count_materialized(a: &Assembly, budget: u64) -> Result<CountVector, CountError> {
    let mut signs = 0u64;
    let mut links = 0u64;
    let mut occ: HashMap<&Letter, u64> = HashMap::new();
    let complete = for_each_sign(a, &mut |_, s| {
        signs += 1;
        if signs > budget {
            return false;
        }
        match s {
            SignRef::Box(_) => links += 1,
            SignRef::Letter(l) => *occ.entry(l).or_default() += 1,
            _ => {}
        }
        true
    });
    if !complete {
        return Err(CountError::Budget { budget });
    }
    Ok(CountVector {
        signs: signs.into(),
        links: links.into(),
        occ: occ.into_iter().map(|(l, n)| (l.clone(), n.into())).collect(),
    })
}

/// Count the expansion of `e` without building it.
pub fn count_symbolic(e: &Expression) -> Result<CountVector, CountError> {
    check_expression(e)?;
    Ok(SymbolicCounter::default().count(e))
}

fn implies(a: &CountVector, b: &CountVector) -> CountVector {
    CountVector::binary(&CountVector::not(a), b)
}

fn and(a: &CountVector, b: &CountVector) -> CountVector {
    CountVector::not(&CountVector::binary(&CountVector::not(a), &CountVector::not(b)))
}

fn iff(a: &CountVector, b: &CountVector) -> CountVector {
    and(&implies(a, b), &implies(b, a))
}

fn exists(x: &Letter, r: &CountVector) -> CountVector {
    CountVector::substitute(r, x, &CountVector::tau(x, r))
}

fn forall(x: &Letter, r: &CountVector) -> CountVector {
    let witness = CountVector::tau(x, &CountVector::not(r));
    CountVector::not(&CountVector::not(&CountVector::substitute(r, x, &witness)))
}

fn builder_body(x: &Letter, r: &CountVector) -> CountVector {
    let x_in_y = CountVector::binary(&CountVector::letter(x), &CountVector::letter(&t0()));
    forall(x, &iff(&x_in_y, r))
}

fn set_of(x: &Letter, r: &CountVector) -> CountVector {
    CountVector::tau(&t0(), &builder_body(x, r))
}

fn coll(x: &Letter, r: &CountVector) -> CountVector {
    exists(&t0(), &builder_body(x, r))
}

fn enumeration(items: &[CountVector]) -> CountVector {
    if items.len() == 1 {
        return enumeration(&[items[0].clone(), items[0].clone()]);
    }
    let z = CountVector::letter(&z0());
    let mut chain = CountVector::binary(&z, &items[items.len() - 1]);
    for item in items[..items.len() - 1].iter().rev() {
        chain = CountVector::binary(&CountVector::binary(&z, item), &chain);
    }
    set_of(&z0(), &chain)
}

fn empty_set() -> CountVector {
    let not_in = CountVector::not(&CountVector::binary(&CountVector::letter(&z0()), &CountVector::letter(&t0())));
    CountVector::tau(&t0(), &forall(&z0(), &not_in))
}

fn union(a: &CountVector, b: &CountVector) -> CountVector {
    let z = CountVector::letter(&z0());
    set_of(&z0(), &CountVector::binary(&CountVector::binary(&z, a), &CountVector::binary(&z, b)))
}

fn subset(a: &CountVector, b: &CountVector) -> CountVector {
    let z = CountVector::letter(&z0());
    forall(&z0(), &implies(&CountVector::binary(&z, a), &CountVector::binary(&z, b)))
}

/// Mirror of the expander on count vectors, with a numeral cache.
#[derive(Default)]
pub struct SymbolicCounter {
    numerals: HashMap<u64, CountVector>,
}

impl SymbolicCounter {
    pub fn numeral(&mut self, n: u64) -> CountVector {
        if let Some(c) = self.numerals.get(&n) {
            return c.clone();
        }
        let c = if n == 0 {
            empty_set()
        } else {
            let items: Vec<CountVector> = (0..n).map(|i| self.numeral(i)).collect();
            enumeration(&items)
        };
        self.numerals.insert(n, c.clone());
        c
    }

    /// Count without checking letters or sorts.
    pub fn count(&mut self, e: &Expression) -> CountVector {
        use Expression as E;
        let bin = CountVector::binary;
        match e {
            E::Letter(l) => CountVector::letter(l),
            E::Not(a) => CountVector::not(&self.count(a)),
            E::Or(a, b) | E::Eq(a, b) | E::In(a, b) => bin(&self.count(a), &self.count(b)),
            E::And(a, b) => and(&self.count(a), &self.count(b)),
            E::Implies(a, b) => implies(&self.count(a), &self.count(b)),
            E::Iff(a, b) => iff(&self.count(a), &self.count(b)),
            E::NotIn(a, b) | E::Neq(a, b) => CountVector::not(&bin(&self.count(a), &self.count(b))),
            E::Subset(a, b) => subset(&self.count(a), &self.count(b)),
            E::Forall(x, r) => forall(x, &self.count(r)),
            E::Exists(x, r) => exists(x, &self.count(r)),
            E::Tau(x, r) => CountVector::tau(x, &self.count(r)),
            E::Coll(x, r) => coll(x, &self.count(r)),
            E::SetOf(x, r) => set_of(x, &self.count(r)),
            E::Enum(items) => {
                let items: Vec<CountVector> = items.iter().map(|i| self.count(i)).collect();
                enumeration(&items)
            }
            E::Singleton(a) => enumeration(&[self.count(a)]),
            E::Couple(a, b) => {
                let (a, b) = (self.count(a), self.count(b));
                enumeration(&[enumeration(std::slice::from_ref(&a)), enumeration(&[a, b])])
            }
            E::Empty => self.numeral(0),
            E::Union(a, b) => union(&self.count(a), &self.count(b)),
            E::Succ(a) => {
                let a = self.count(a);
                union(&a, &enumeration(std::slice::from_ref(&a)))
            }
            E::Numeral(n) => self.numeral(*n),
            E::Subst(body, x, t) => CountVector::substitute(&self.count(body), x, &self.count(t)),
        }
    }
}

/// Counts of the enumeration template `{_x0, …, _x(k−1)}`.
fn template_counts(k: u64) -> (CountVector, Vec<Letter>) {
    let holes: Vec<Letter> = (0..k).map(|i| Letter::new(&format!("_x{i}")).expect("reserved name")).collect();
    let items: Vec<CountVector> = holes.iter().map(CountVector::letter).collect();
    (enumeration(&items), holes)
}

/// Counts of numerals `0 ..= n`, each obtained by substituting the
/// previous numerals into an enumeration template.
pub fn numeral_rows(n: u64) -> Vec<CountVector> {
    let mut rows = vec![empty_set()];
    for k in 1..=n {
        let (template, holes) = template_counts(k);
        let bindings: Vec<(Letter, CountVector)> = holes.into_iter().zip(rows.iter().cloned()).collect();
        rows.push(CountVector::substitute_many(&template, &bindings));
    }
    rows
}

pub fn numeral_counts(n: u64) -> CountVector {
    numeral_rows(n).pop().expect("at least one row")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: u64,
    pub signs: BigUint,
    pub links: BigUint,
}

#[derive(Serialize)]
struct GrowthRowJson {
    n: String,
    signs: String,
    links: String,
}

impl GrowthRow {
    /// Numbers as decimal strings, e.g. `{"n":"1","signs":"513","links":"134"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GrowthRowJson {
            n: self.n.to_string(),
            signs: self.signs.to_string(),
            links: self.links.to_string(),
        })
        .expect("plain strings serialize")
    }
}

impl fmt::Display for GrowthRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.n, self.signs, self.links)
    }
}

pub fn growth_table(n_max: u64) -> Vec<GrowthRow> {
    numeral_rows(n_max)
        .into_iter()
        .zip(0..)
        .map(|(c, n)| GrowthRow {
            n,
            signs: c.signs,
            links: c.links,
        })
        .collect()
}
