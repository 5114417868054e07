//! Finite ordered sets with relation rows stored as bitmasks.

use std::collections::HashMap;

use super::OrdinalError;
use crate::hf::{couple, pairs, HfSet};

/// Largest carrier a [`FiniteOrder`] accepts.
pub const MAX_CARRIER: usize = 64;
/// Largest carrier for which the well-order check enumerates subsets.
pub const EXHAUSTIVE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrder {
    carrier: HfSet,
    /// `up[i]` has bit `j` set iff `elems[i] ≤ elems[j]`, with elements
    /// indexed in canonical order.
    up: Vec<u64>,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl FiniteOrder {
    fn check_size(n: usize) -> Result<(), OrdinalError> {
        if n > MAX_CARRIER {
            return Err(OrdinalError::TooLarge {
                size: n,
                cap: MAX_CARRIER,
            });
        }
        Ok(())
    }

    fn from_rows(carrier: HfSet, up: Vec<u64>) -> Result<Self, OrdinalError> {
        let o = FiniteOrder { carrier, up };
        let n = o.len();
        for i in 0..n {
            if !o.le(i, i) {
                return Err(OrdinalError::NotAnOrder(format!("{} is not below itself", o.name(i))));
            }
            for j in bits(o.up[i]) {
                if j != i && o.le(j, i) {
                    return Err(OrdinalError::NotAnOrder(format!(
                        "{} and {} are below each other",
                        o.name(i),
                        o.name(j)
                    )));
                }
                if o.up[j] & !o.up[i] != 0 {
                    return Err(OrdinalError::NotAnOrder(format!(
                        "not transitive through {} ≤ {}",
                        o.name(i),
                        o.name(j)
                    )));
                }
            }
        }
        Ok(o)
    }

    fn name(&self, i: usize) -> String {
        self.carrier.elems()[i].compact().to_string()
    }

    /// The order `x ≤ y iff le(x, y)` on `carrier`.
    pub fn from_relation(carrier: &HfSet, mut le: impl FnMut(&HfSet, &HfSet) -> bool) -> Result<Self, OrdinalError> {
        Self::check_size(carrier.len())?;
        let elems = carrier.elems();
        let up = elems
            .iter()
            .map(|x| {
                elems
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| le(x, y))
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Self::from_rows(carrier.clone(), up)
    }

    /// The order whose graph is `graph`, a set of couples `(x, y)` meaning
    /// `x ≤ y`; it must already be reflexive and transitive.
    pub fn from_graph(carrier: &HfSet, graph: &HfSet) -> Result<Self, OrdinalError> {
        let ps = pairs(graph).map_err(|e| OrdinalError::NotAnOrder(e.to_string()))?;
        for (a, b) in &ps {
            for x in [a, b] {
                if !carrier.contains(x) {
                    return Err(OrdinalError::NotInCarrier(x.compact().to_string()));
                }
            }
        }
        Self::from_relation(carrier, |x, y| ps.iter().any(|(a, b)| a == x && b == y))
    }

    /// The least order containing the given pairs.
    pub fn generated_by(carrier: &HfSet, generators: &[(HfSet, HfSet)]) -> Result<Self, OrdinalError> {
        Self::check_size(carrier.len())?;
        let index = |x: &HfSet| {
            carrier
                .elems()
                .binary_search(x)
                .map_err(|_| OrdinalError::NotInCarrier(x.compact().to_string()))
        };
        let mut up: Vec<u64> = (0..carrier.len()).map(|i| 1u64 << i).collect();
        for (a, b) in generators {
            let (i, j) = (index(a)?, index(b)?);
            up[i] |= 1 << j;
        }
        loop {
            let next: Vec<u64> = up.iter().map(|&row| bits(row).fold(row, |m, j| m | up[j])).collect();
            if next == up {
                break;
            }
            up = next;
        }
        Self::from_rows(carrier.clone(), up)
    }

    /// `x ≤ y iff x = y or x ∈ y`, the order of an ordinal.
    pub fn membership(alpha: &HfSet) -> Result<Self, OrdinalError> {
        Self::from_relation(alpha, |x, y| x == y || y.contains(x))
    }

    /// Inclusion on a family of sets.
    pub fn inclusion(family: &HfSet) -> Result<Self, OrdinalError> {
        Self::from_relation(family, |x, y| x.is_subset(y))
    }

    /// Inclusion on all subsets of `base`.
    pub fn powerset(base: &HfSet) -> Result<Self, OrdinalError> {
        if base.len() > 6 {
            return Err(OrdinalError::TooLarge { size: base.len(), cap: 6 });
        }
        Self::inclusion(&base.powerset().expect("small base"))
    }

    /// The chain listing `elems` from least to greatest.
    pub fn chain(elems: &[HfSet]) -> Result<Self, OrdinalError> {
        let carrier = HfSet::make_set(elems.to_vec());
        if carrier.len() != elems.len() {
            return Err(OrdinalError::NotAnOrder("repeated element in chain".into()));
        }
        let pos: HashMap<&HfSet, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        Self::from_relation(&carrier, |x, y| pos[x] <= pos[y])
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn carrier(&self) -> &HfSet {
        &self.carrier
    }

    /// Carrier elements in canonical order; indices refer to this slice.
    pub fn elements(&self) -> &[HfSet] {
        self.carrier.elems()
    }

    pub fn index_of(&self, x: &HfSet) -> Option<usize> {
        self.carrier.elems().binary_search(x).ok()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// Mask of elements above `i`, including `i`.
    pub fn up_set(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// Mask of elements below `i`, including `i`.
    pub fn down_set(&self, i: usize) -> u64 {
        (0..self.len()).filter(|&j| self.le(j, i)).fold(0, |m, j| m | 1 << j)
    }

    pub fn full_mask(&self) -> u64 {
        full(self.len())
    }

    /// The graph `{(x, y) | x ≤ y}`.
    pub fn graph(&self) -> HfSet {
        let e = self.elements();
        (0..self.len())
            .flat_map(|i| bits(self.up[i]).map(move |j| couple(&e[i], &e[j])))
            .collect()
    }

    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.le(i, j) || self.le(j, i)))
    }

    /// The least element of a subset given as a mask.
    pub fn least(&self, mask: u64) -> Option<usize> {
        bits(mask).find(|&i| mask & !self.up[i] == 0)
    }

    pub fn greatest(&self, mask: u64) -> Option<usize> {
        bits(mask).find(|&i| bits(mask).all(|j| self.le(j, i)))
    }

    /// Greatest lower bound of a subset, if any.
    pub fn inf(&self, mask: u64) -> Option<usize> {
        let lower = (0..self.len())
            .filter(|&i| mask & !self.up[i] == 0)
            .fold(0u64, |m, i| m | 1 << i);
        self.greatest(lower)
    }

    /// Least upper bound of a subset, if any.
    pub fn sup(&self, mask: u64) -> Option<usize> {
        let upper = bits(mask).fold(self.full_mask(), |m, i| m & self.up[i]);
        self.least(upper)
    }

    /// Every nonempty subset has a least element, checked subset by subset.
    pub fn is_well_order(&self) -> Result<bool, OrdinalError> {
        let n = self.len();
        if n > EXHAUSTIVE_CAP {
            return Err(OrdinalError::TooLarge {
                size: n,
                cap: EXHAUSTIVE_CAP,
            });
        }
        Ok((1..=full(n)).all(|mask| self.least(mask).is_some()))
    }

    /// Carrier indices from least to greatest, when the order is total.
    pub fn chain_positions(&self) -> Option<Vec<usize>> {
        if !self.is_total() {
            return None;
        }
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(self.up[i].count_ones()));
        Some(idx)
    }

    /// `S_x = {y | y < x}`.
    pub fn segment(&self, x: &HfSet) -> Result<HfSet, OrdinalError> {
        let i = self
            .index_of(x)
            .ok_or_else(|| OrdinalError::NotInCarrier(x.compact().to_string()))?;
        Ok(self.carrier.filter(|y| self.index_of(y).is_some_and(|j| self.lt(j, i))))
    }
}

/// Lexicographic order on tuples, each tuple written as the functional
/// graph `{(0, x₀), (1, x₁), …}`. No factors give the one-point order on
/// `{∅}`.
pub fn lex_product(factors: &[FiniteOrder]) -> Result<FiniteOrder, OrdinalError> {
    let size = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.len()));
    match size {
        Some(s) if s <= MAX_CARRIER => {}
        _ => {
            return Err(OrdinalError::TooLarge {
                size: size.unwrap_or(usize::MAX),
                cap: MAX_CARRIER,
            })
        }
    }
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.len()).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    let indices: Vec<HfSet> = (0..factors.len() as u64).map(HfSet::numeral).collect();
    let encode = |t: &[usize]| -> HfSet {
        t.iter()
            .enumerate()
            .map(|(i, &k)| couple(&indices[i], &factors[i].elements()[k]))
            .collect()
    };
    let by_set: HashMap<HfSet, Vec<usize>> = tuples.iter().map(|t| (encode(t), t.clone())).collect();
    let carrier: HfSet = by_set.keys().cloned().collect();
    FiniteOrder::from_relation(&carrier, |x, y| {
        let (s, t) = (&by_set[x], &by_set[y]);
        match (0..factors.len()).find(|&i| s[i] != t[i]) {
            None => true,
            Some(i) => factors[i].lt(s[i], t[i]),
        }
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

    #[test]
    fn totals_are_well_orders() {
        let o = FiniteOrder::chain(&[n(3), n(0), n(5)]).unwrap();
        assert!(o.is_total());
        assert!(o.is_well_order().unwrap());
        assert_eq!(o.segment(&n(5)).unwrap(), set(&[0, 3]));
    }

    #[test]
    fn divisibility_on_two_and_three() {
        let c = set(&[2, 3]);
        let o = FiniteOrder::from_relation(&c, |x, y| y.len() % x.len() == 0).unwrap();
        assert!(!o.is_total());
        assert!(!o.is_well_order().unwrap());
        assert_eq!(o.least(o.full_mask()), None);
    }

    #[test]
    fn ordinal_segments() {
        let alpha = n(5);
        let o = FiniteOrder::membership(&alpha).unwrap();
        for x in alpha.iter() {
            assert_eq!(&o.segment(x).unwrap(), x);
        }
    }

    #[test]
    fn rejects_non_orders() {
        let c = set(&[0, 1]);
        assert!(FiniteOrder::from_relation(&c, |_, _| true).is_err());
        assert!(FiniteOrder::from_relation(&c, |x, y| x != y).is_err());
        let g = FiniteOrder::generated_by(&c, &[(n(0), n(1))]).unwrap();
        assert!(g.le(0, 1) && g.is_total());
        assert!(FiniteOrder::generated_by(&c, &[(n(0), n(1)), (n(1), n(0))]).is_err());
        assert_eq!(FiniteOrder::from_graph(&c, &g.graph()).unwrap(), g);
    }

    #[test]
    fn lattice_bounds_in_powerset() {
        let o = FiniteOrder::powerset(&set(&[1, 2])).unwrap();
        let idx = |s: &HfSet| o.index_of(s).unwrap();
        let (a, b) = (idx(&set(&[1])), idx(&set(&[2])));
        let m = 1u64 << a | 1 << b;
        assert_eq!(o.sup(m), Some(idx(&set(&[1, 2]))));
        assert_eq!(o.inf(m), Some(idx(&n(0))));
        assert_eq!(o.sup(0), Some(idx(&n(0))));
    }

    #[test]
    fn lex_products() {
        let a = FiniteOrder::membership(&n(2)).unwrap();
        let b = FiniteOrder::membership(&n(3)).unwrap();
        let p = lex_product(&[a, b]).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.is_well_order().unwrap());
        let unit = lex_product(&[]).unwrap();
        assert_eq!(unit.carrier(), &n(1));
    }
}
