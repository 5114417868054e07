//! Fixed points of monotone maps on finite orders, and the finite witnesses
//! of Cantor–Bernstein, Cantor's diagonal and König's inequality.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::hf::{apply, couple, HfSet};
use crate::ordinal::FiniteOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixpointError {
    #[error("map sends {0} outside the carrier")]
    OutsideCarrier(String),
    #[error("map is undefined at {0}")]
    Undefined(String),
    #[error("map is not monotone: {x} ≤ {y} but their images are not ordered")]
    NotMonotone { x: String, y: String },
    #[error("the {0} does not exist")]
    MissingBound(&'static str),
    #[error("the domain is not a lattice")]
    NotLattice,
    #[error("{0} is not injective")]
    NotInjective(&'static str),
    #[error("{0} is not a subset of E")]
    NotSubset(String),
    #[error("index lists differ in length: {b} sets B, {a} sets A")]
    LengthMismatch { b: usize, a: usize },
    #[error("A_{index} has {a} elements, not fewer than the {b} of B_{index}")]
    NotSmaller { index: usize, a: usize, b: usize },
    #[error("{0} is not a tuple of the product")]
    NotATuple(String),
    #[error("{size} elements exceed the limit of {cap}")]
    TooLarge { size: usize, cap: usize },
}

/// A monotone self-map of a finite order, stored by carrier index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: FiniteOrder,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(domain: FiniteOrder, table: Vec<usize>) -> Result<Self, FixpointError> {
        let n = domain.len();
        if let Some(i) = (0..n).find(|&i| table.get(i).is_none_or(|&t| t >= n)) {
            return Err(FixpointError::OutsideCarrier(domain.elements()[i].compact().to_string()));
        }
        for i in 0..n {
            for j in 0..n {
                if domain.le(i, j) && !domain.le(table[i], table[j]) {
                    let e = domain.elements();
                    return Err(FixpointError::NotMonotone {
                        x: e[i].compact().to_string(),
                        y: e[j].compact().to_string(),
                    });
                }
            }
        }
        Ok(MonotoneMap { domain, table })
    }

    pub fn from_fn(domain: FiniteOrder, mut f: impl FnMut(&HfSet) -> HfSet) -> Result<Self, FixpointError> {
        let table = domain
            .elements()
            .iter()
            .map(|x| {
                let y = f(x);
                domain
                    .index_of(&y)
                    .ok_or_else(|| FixpointError::OutsideCarrier(x.compact().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(domain, table)
    }

    pub fn from_pairs(domain: FiniteOrder, pairs: &[(HfSet, HfSet)]) -> Result<Self, FixpointError> {
        let map: BTreeMap<&HfSet, &HfSet> = pairs.iter().map(|(x, y)| (x, y)).collect();
        let table = domain
            .elements()
            .iter()
            .map(|x| {
                let y = map.get(x).ok_or_else(|| FixpointError::Undefined(x.compact().to_string()))?;
                domain
                    .index_of(y)
                    .ok_or_else(|| FixpointError::OutsideCarrier(x.compact().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(domain, table)
    }

    pub fn domain(&self) -> &FiniteOrder {
        &self.domain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: &HfSet) -> Option<HfSet> {
        self.domain
            .index_of(x)
            .map(|i| self.domain.elements()[self.table[i]].clone())
    }

    /// Carrier indices of the fixed points.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&i| self.table[i] == i).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TarskiExtrema {
    /// `inf {z | f(z) ≤ z}`
    pub v: HfSet,
    /// `sup {z | z ≤ f(z)}`
    pub w: HfSet,
}

impl TarskiExtrema {
    pub fn to_json(&self) -> Value {
        json!({"v": set_json(&self.v), "w": set_json(&self.w)})
    }
}

pub fn tarski_extrema(m: &MonotoneMap) -> Result<TarskiExtrema, FixpointError> {
    let d = &m.domain;
    let mask = |keep: &dyn Fn(usize) -> bool| (0..d.len()).filter(|&i| keep(i)).fold(0u64, |acc, i| acc | 1 << i);
    let post = mask(&|i| d.le(m.table[i], i));
    let pre = mask(&|i| d.le(i, m.table[i]));
    let v = d
        .inf(post)
        .ok_or(FixpointError::MissingBound("infimum of {z | f(z) ≤ z}"))?;
    let w = d
        .sup(pre)
        .ok_or(FixpointError::MissingBound("supremum of {z | z ≤ f(z)}"))?;
    Ok(TarskiExtrema {
        v: d.elements()[v].clone(),
        w: d.elements()[w].clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub fixed_points: Vec<HfSet>,
    /// Every nonempty family of fixed points has a supremum and an infimum
    /// among the fixed points.
    pub complete: bool,
    /// Those suprema and infima agree with the least fixed point above
    /// `sup Y` and the greatest fixed point below `inf Y`.
    pub interval_construction_agrees: bool,
}

/// Largest fixed-point set whose subfamilies are enumerated.
const MAX_FIXED_POINTS: usize = 20;

fn is_lattice(d: &FiniteOrder) -> bool {
    let n = d.len();
    n > 0 && (0..n).all(|i| (0..n).all(|j| d.sup(1 << i | 1 << j).is_some() && d.inf(1 << i | 1 << j).is_some()))
}

pub fn fixed_point_lattice(m: &MonotoneMap) -> Result<FixedPointReport, FixpointError> {
    let d = &m.domain;
    if !is_lattice(d) {
        return Err(FixpointError::NotLattice);
    }
    let fixed = m.fixed_points();
    if fixed.len() > MAX_FIXED_POINTS {
        return Err(FixpointError::TooLarge {
            size: fixed.len(),
            cap: MAX_FIXED_POINTS,
        });
    }
    let all = d.full_mask();
    let top = d.sup(all).expect("finite lattice has a top");
    let bottom = d.inf(all).expect("finite lattice has a bottom");
    let fixed_mask = fixed.iter().fold(0u64, |acc, &i| acc | 1 << i);

    // least fixed point of f on [lo, hi], via the infimum of its post-fixed points
    let least_fixed_in = |lo: usize, hi: usize| {
        let post = (0..d.len())
            .filter(|&z| d.le(lo, z) && d.le(z, hi) && d.le(m.table[z], z))
            .fold(0u64, |acc, z| acc | 1 << z);
        d.inf(post).filter(|&v| d.le(lo, v))
    };
    let greatest_fixed_in = |lo: usize, hi: usize| {
        let pre = (0..d.len())
            .filter(|&z| d.le(lo, z) && d.le(z, hi) && d.le(z, m.table[z]))
            .fold(0u64, |acc, z| acc | 1 << z);
        d.sup(pre).filter(|&w| d.le(w, hi))
    };

    let mut complete = !fixed.is_empty();
    let mut agrees = true;
    for sub in 1u64..1 << fixed.len() {
        let y = fixed
            .iter()
            .enumerate()
            .filter(|(k, _)| sub >> k & 1 == 1)
            .fold(0u64, |acc, (_, &i)| acc | 1 << i);
        let upper = fixed
            .iter()
            .filter(|&&p| (0..d.len()).all(|q| y >> q & 1 == 0 || d.le(q, p)))
            .fold(0u64, |acc, &p| acc | 1 << p);
        let lower = fixed
            .iter()
            .filter(|&&p| (0..d.len()).all(|q| y >> q & 1 == 0 || d.le(p, q)))
            .fold(0u64, |acc, &p| acc | 1 << p);
        let sup_p = d.least(upper & fixed_mask);
        let inf_p = d.greatest(lower & fixed_mask);
        complete &= sup_p.is_some() && inf_p.is_some();
        let via_sup = d.sup(y).and_then(|s| least_fixed_in(s, top));
        let via_inf = d.inf(y).and_then(|s| greatest_fixed_in(bottom, s));
        agrees &= sup_p.is_some() && sup_p == via_sup && inf_p.is_some() && inf_p == via_inf;
    }
    Ok(FixedPointReport {
        fixed_points: fixed.iter().map(|&i| d.elements()[i].clone()).collect(),
        complete,
        interval_construction_agrees: agrees,
    })
}

/// Injections `f: E → F` and `g: F → E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionPair {
    e: HfSet,
    f_set: HfSet,
    f: BTreeMap<HfSet, HfSet>,
    g: BTreeMap<HfSet, HfSet>,
}

fn check_injection(
    name: &'static str,
    dom: &HfSet,
    cod: &HfSet,
    map: &BTreeMap<HfSet, HfSet>,
) -> Result<(), FixpointError> {
    if let Some(x) = dom.iter().find(|x| !map.contains_key(x)) {
        return Err(FixpointError::Undefined(x.compact().to_string()));
    }
    if let Some(x) = map.keys().find(|x| !dom.contains(x)) {
        return Err(FixpointError::Undefined(x.compact().to_string()));
    }
    if let Some(x) = map.values().find(|y| !cod.contains(y)) {
        return Err(FixpointError::OutsideCarrier(x.compact().to_string()));
    }
    let image: HfSet = map.values().cloned().collect();
    if image.len() != map.len() {
        return Err(FixpointError::NotInjective(name));
    }
    Ok(())
}

impl InjectionPair {
    pub fn new(
        e: HfSet,
        f_set: HfSet,
        f: BTreeMap<HfSet, HfSet>,
        g: BTreeMap<HfSet, HfSet>,
    ) -> Result<Self, FixpointError> {
        check_injection("f", &e, &f_set, &f)?;
        check_injection("g", &f_set, &e, &g)?;
        Ok(InjectionPair { e, f_set, f, g })
    }

    pub fn e(&self) -> &HfSet {
        &self.e
    }

    pub fn f_set(&self) -> &HfSet {
        &self.f_set
    }

    pub fn f(&self) -> &BTreeMap<HfSet, HfSet> {
        &self.f
    }

    pub fn g(&self) -> &BTreeMap<HfSet, HfSet> {
        &self.g
    }

    /// The same injections read from `F` to `E`.
    pub fn swapped(&self) -> InjectionPair {
        InjectionPair {
            e: self.f_set.clone(),
            f_set: self.e.clone(),
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    fn image(map: &BTreeMap<HfSet, HfSet>, x: &HfSet) -> HfSet {
        x.iter().map(|a| map[a].clone()).collect()
    }

    /// `X ↦ E − g⟨F − f⟨X⟩⟩`.
    pub fn step(&self, x: &HfSet) -> HfSet {
        let rest = self.f_set.difference(&Self::image(&self.f, x));
        self.e.difference(&Self::image(&self.g, &rest))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbWitness {
    /// `A ⊂ E` with `E − A = g⟨F − f⟨A⟩⟩`.
    pub a: HfSet,
    /// `f` on `A` and `g⁻¹` on `E − A`.
    pub bijection: BTreeMap<HfSet, HfSet>,
    /// Steps from `∅` that changed the set, at most `|E|`.
    pub iterations: usize,
}

fn set_json(s: &HfSet) -> Value {
    Value::String(s.compact().to_string())
}

impl CbWitness {
    /// Recheck the fixed-point equation and that the map is a bijection.
    pub fn verify(&self, p: &InjectionPair) -> bool {
        let equation = p.step(&self.a) == self.a;
        let keys: HfSet = self.bijection.keys().cloned().collect();
        let values: HfSet = self.bijection.values().cloned().collect();
        equation && keys == p.e && values == p.f_set && values.len() == self.bijection.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "A": set_json(&self.a),
            "iterations": self.iterations,
            "bijection": self.bijection.iter().map(|(x, y)| json!([set_json(x), set_json(y)])).collect::<Vec<_>>(),
        })
    }

    /// The bijection as a graph of couples.
    pub fn graph(&self) -> HfSet {
        self.bijection.iter().map(|(x, y)| couple(x, y)).collect()
    }
}

/// Least fixed point of [`InjectionPair::step`], reached by iterating
/// from `∅`, and the bijection it splits `E` into.
pub fn cantor_bernstein(p: &InjectionPair) -> CbWitness {
    let mut a = HfSet::empty();
    let mut iterations = 0;
    loop {
        let next = p.step(&a);
        if next == a {
            break;
        }
        a = next;
        iterations += 1;
    }
    let g_inv: BTreeMap<&HfSet, &HfSet> = p.g.iter().map(|(y, x)| (x, y)).collect();
    let bijection = p
        .e
        .iter()
        .map(|x| {
            let y = if a.contains(x) { p.f[x].clone() } else { g_inv[x].clone() };
            (x.clone(), y)
        })
        .collect();
    CbWitness { a, bijection, iterations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalWitness {
    /// `{x ∈ E | x ∉ f(x)}`
    pub d: HfSet,
    /// `D` differs from every `f(x)`.
    pub outside_image: bool,
}

impl DiagonalWitness {
    pub fn to_json(&self) -> Value {
        json!({"D": set_json(&self.d), "outside_image": self.outside_image})
    }
}

pub fn cantor_diagonal(e: &HfSet, f: &BTreeMap<HfSet, HfSet>) -> Result<DiagonalWitness, FixpointError> {
    for x in e.iter() {
        let fx = f.get(x).ok_or_else(|| FixpointError::Undefined(x.compact().to_string()))?;
        if !fx.is_subset(e) {
            return Err(FixpointError::NotSubset(fx.compact().to_string()));
        }
    }
    let d = e.filter(|x| !f[x].contains(x));
    let outside_image = e.iter().all(|x| f[x] != d);
    Ok(DiagonalWitness { d, outside_image })
}

/// `{(0, x₀), (1, x₁), …}`.
pub fn tuple_set(xs: &[HfSet]) -> HfSet {
    xs.iter()
        .enumerate()
        .map(|(i, x)| couple(&HfSet::numeral(i as u64), x))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoenigWitness {
    /// `xᵢ ∈ Bᵢ − prᵢ(Aᵢ)`
    pub tuple: Vec<HfSet>,
    /// The tuple lies in no `Aᵢ`.
    pub uncovered: bool,
    pub sum: BigUint,
    pub product: BigUint,
}

impl KoenigWitness {
    pub fn strict(&self) -> bool {
        self.sum < self.product
    }

    /// Counts as decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "tuple": self.tuple.iter().map(set_json).collect::<Vec<_>>(),
            "uncovered": self.uncovered,
            "sum": self.sum.to_string(),
            "product": self.product.to_string(),
            "strict": self.strict(),
        })
    }
}

/// For `|Aᵢ| < |Bᵢ|` with each `Aᵢ` a set of tuples of `∏Bⱼ`, pick the
/// least `xᵢ ∈ Bᵢ − prᵢ(Aᵢ)` in canonical order.
pub fn koenig_uncovered(b: &[HfSet], a: &[HfSet]) -> Result<KoenigWitness, FixpointError> {
    if a.len() != b.len() {
        return Err(FixpointError::LengthMismatch { b: b.len(), a: a.len() });
    }
    let indices: Vec<HfSet> = (0..b.len() as u64).map(HfSet::numeral).collect();
    let coordinate = |t: &HfSet, i: usize| -> Result<HfSet, FixpointError> {
        let bad = || FixpointError::NotATuple(t.compact().to_string());
        let x = apply(t, &indices[i]).map_err(|_| bad())?;
        if t.len() != b.len() || !b[i].contains(&x) {
            return Err(bad());
        }
        Ok(x)
    };
    let mut tuple = Vec::with_capacity(b.len());
    for (i, (bi, ai)) in b.iter().zip(a).enumerate() {
        if ai.len() >= bi.len() {
            return Err(FixpointError::NotSmaller {
                index: i,
                a: ai.len(),
                b: bi.len(),
            });
        }
        for t in ai.iter() {
            for j in 0..b.len() {
                coordinate(t, j)?;
            }
        }
        let projection: HfSet = ai.iter().map(|t| coordinate(t, i)).collect::<Result<_, _>>()?;
        let x = bi
            .iter()
            .find(|x| !projection.contains(x))
            .expect("|prᵢ(Aᵢ)| ≤ |Aᵢ| < |Bᵢ|");
        tuple.push(x.clone());
    }
    let t = tuple_set(&tuple);
    let uncovered = a.iter().all(|ai| !ai.contains(&t));
    let sum = a.iter().map(|ai| BigUint::from(ai.len())).sum();
    let product = b.iter().fold(BigUint::one(), |acc, bi| acc * bi.len());
    Ok(KoenigWitness {
        tuple,
        uncovered,
        sum,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> HfSet {
        HfSet::numeral(k)
    }

    fn set(xs: &[u64]) -> HfSet {
        xs.iter().map(|&k| n(k)).collect()
    }

    fn map(pairs: &[(u64, u64)]) -> BTreeMap<HfSet, HfSet> {
        pairs.iter().map(|&(x, y)| (n(x), n(y))).collect()
    }

    #[test]
    fn identity_on_powerset() {
        let d = FiniteOrder::powerset(&set(&[1, 2])).unwrap();
        let m = MonotoneMap::from_fn(d, |x| x.clone()).unwrap();
        let t = tarski_extrema(&m).unwrap();
        assert_eq!((t.v, t.w), (n(0), set(&[1, 2])));
        let r = fixed_point_lattice(&m).unwrap();
        assert_eq!(r.fixed_points.len(), 4);
        assert!(r.complete && r.interval_construction_agrees);
    }

    #[test]
    fn constant_map() {
        let d = FiniteOrder::powerset(&set(&[1, 2])).unwrap();
        let c = set(&[2]);
        let m = MonotoneMap::from_fn(d, |_| c.clone()).unwrap();
        let t = tarski_extrema(&m).unwrap();
        assert_eq!((t.v, t.w), (c.clone(), c));
    }

    #[test]
    fn non_monotone_is_refused() {
        let d = FiniteOrder::powerset(&set(&[1])).unwrap();
        let base = set(&[1]);
        assert!(matches!(
            MonotoneMap::from_fn(d, |x| base.difference(x)),
            Err(FixpointError::NotMonotone { .. })
        ));
    }

    #[test]
    fn missing_bound_is_reported() {
        // two incomparable points, identity map: no infimum of both
        let d = FiniteOrder::from_relation(&set(&[0, 1]), |x, y| x == y).unwrap();
        let m = MonotoneMap::from_fn(d, |x| x.clone()).unwrap();
        assert!(matches!(tarski_extrema(&m), Err(FixpointError::MissingBound(_))));
        assert_eq!(fixed_point_lattice(&m), Err(FixpointError::NotLattice));
    }

    #[test]
    fn cantor_bernstein_identity() {
        let e = set(&[0, 1, 2]);
        let id = map(&[(0, 0), (1, 1), (2, 2)]);
        let p = InjectionPair::new(e.clone(), e.clone(), id.clone(), id.clone()).unwrap();
        let w = cantor_bernstein(&p);
        assert_eq!(w.a, HfSet::empty());
        assert_eq!(w.bijection, id);
        assert!(w.verify(&p));
    }

    #[test]
    fn cantor_bernstein_shift() {
        // f: x ↦ x+1 mod 4, g the identity
        let e = set(&[0, 1, 2, 3]);
        let f = map(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let g = map(&[(0, 0), (1, 1), (2, 2), (3, 3)]);
        let p = InjectionPair::new(e.clone(), e, f, g).unwrap();
        let w = cantor_bernstein(&p);
        assert!(w.verify(&p));
        assert!(InjectionPair::new(set(&[0, 1]), set(&[0]), map(&[(0, 0), (1, 0)]), map(&[(0, 0)])).is_err());
    }

    #[test]
    fn diagonal() {
        let e = set(&[0, 1, 2]);
        let singletons: BTreeMap<HfSet, HfSet> = e.iter().map(|x| (x.clone(), HfSet::singleton(x.clone()))).collect();
        let w = cantor_diagonal(&e, &singletons).unwrap();
        assert_eq!(w.d, n(0));
        assert_eq!(w.to_json().to_string(), r#"{"D":"0","outside_image":true}"#);
        assert!(w.outside_image);
        let empties: BTreeMap<HfSet, HfSet> = e.iter().map(|x| (x.clone(), n(0))).collect();
        assert_eq!(cantor_diagonal(&e, &empties).unwrap().d, e);
        let bad: BTreeMap<HfSet, HfSet> = e.iter().map(|x| (x.clone(), set(&[7]))).collect();
        assert!(cantor_diagonal(&e, &bad).is_err());
    }

    #[test]
    fn koenig_three_coins() {
        let b = vec![n(2); 3];
        let a: Vec<HfSet> = (0..3)
            .map(|i| {
                let mut t = vec![n(0); 3];
                t[i] = n(1);
                HfSet::singleton(tuple_set(&t))
            })
            .collect();
        let w = koenig_uncovered(&b, &a).unwrap();
        assert_eq!((w.sum.clone(), w.product.clone()), (BigUint::from(3u32), BigUint::from(8u32)));
        assert!(w.strict() && w.uncovered);
        assert_eq!(w.tuple, vec![n(0), n(0), n(0)]);
    }

    #[test]
    fn koenig_empty_family() {
        let w = koenig_uncovered(&[], &[]).unwrap();
        assert!(w.tuple.is_empty() && w.uncovered && w.strict());
        assert_eq!(w.product, BigUint::one());
    }

    #[test]
    fn koenig_preconditions() {
        assert!(matches!(koenig_uncovered(&[n(1)], &[]), Err(FixpointError::LengthMismatch { .. })));
        let a = HfSet::singleton(tuple_set(&[n(0)]));
        assert!(matches!(koenig_uncovered(&[n(1)], &[a]), Err(FixpointError::NotSmaller { .. })));
        let bad = HfSet::singleton(tuple_set(&[n(5)]));
        assert!(matches!(koenig_uncovered(&[n(2)], &[bad]), Err(FixpointError::NotATuple(_))));
    }
}
