//! Hereditarily finite sets.
//!
//! An [`HfSet`] keeps its elements sorted and free of duplicates, so two sets
//! are equal exactly when they have the same elements. The order compares
//! rank, then cardinality, then elements lexicographically.

mod equiv;
mod graph;
mod lang;

pub use equiv::{equivalence_check, equivalence_closure, quotient, EquivalenceReport};
pub use graph::{
    apply, couple, decouple, diagonal, graph_compose, graph_image, graph_inverse, is_functional, pairs, pr1_set,
    pr2_set, preimage, product, Correspondence,
};
pub use lang::{eval_program, parse_set, HfValue, LangError};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HfError {
    #[error("{0} is not a couple")]
    NotACouple(String),
    #[error("graph is not functional")]
    NotFunctional,
    #[error("{0} is outside the domain of the graph")]
    OutsideDomain(String),
    #[error("graph is not an equivalence on the given set")]
    NotEquivalence,
    #[error("graph is not contained in the square of the given set")]
    NotInSquare,
    #[error("correspondence graph does not fit its source and target")]
    BadCorrespondence,
    #[error("set with {0} elements is too large for this operation")]
    TooLarge(usize),
}

struct Inner {
    rank: u32,
    elems: Vec<HfSet>,
}

#[derive(Clone)]
pub struct HfSet(Arc<Inner>);

impl HfSet {
    pub fn empty() -> Self {
        HfSet(Arc::new(Inner { rank: 0, elems: vec![] }))
    }

    /// Build from elements in any order, with repeats allowed.
    pub fn make_set(mut elems: Vec<HfSet>) -> Self {
        elems.sort();
        elems.dedup();
        Self::from_sorted(elems)
    }

    fn from_sorted(elems: Vec<HfSet>) -> Self {
        let rank = elems.last().map_or(0, |e| e.rank() + 1);
        HfSet(Arc::new(Inner { rank, elems }))
    }

    pub fn singleton(x: HfSet) -> Self {
        Self::from_sorted(vec![x])
    }

    pub fn pair(x: HfSet, y: HfSet) -> Self {
        Self::make_set(vec![x, y])
    }

    /// The von Neumann numeral `n = {0, …, n−1}`.
    pub fn numeral(n: u64) -> Self {
        (0..n).fold(Self::empty(), |s, _| s.successor())
    }

    /// `X ∪ {X}`.
    pub fn successor(&self) -> Self {
        self.union(&Self::singleton(self.clone()))
    }

    pub fn elems(&self) -> &[HfSet] {
        &self.0.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HfSet> {
        self.0.elems.iter()
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    /// Height of the membership tree; `∅` has rank 0.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.elems.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        self.len() <= other.len() && self.iter().all(|x| other.contains(x))
    }

    pub fn is_proper_subset(&self, other: &HfSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &HfSet) -> HfSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.iter().peekable(), other.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        out.push(a.next().unwrap().clone());
                        b.next();
                    }
                },
                (Some(_), None) => out.extend(a.by_ref().cloned()),
                (None, Some(_)) => out.extend(b.by_ref().cloned()),
                (None, None) => break,
            }
        }
        Self::from_sorted(out)
    }

    pub fn intersection(&self, other: &HfSet) -> HfSet {
        Self::from_sorted(self.iter().filter(|x| other.contains(x)).cloned().collect())
    }

    pub fn difference(&self, other: &HfSet) -> HfSet {
        Self::from_sorted(self.iter().filter(|x| !other.contains(x)).cloned().collect())
    }

    /// `⋃X`.
    pub fn big_union(&self) -> HfSet {
        Self::make_set(self.iter().flat_map(|x| x.iter().cloned()).collect())
    }

    /// Elements satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&HfSet) -> bool) -> HfSet {
        Self::from_sorted(self.iter().filter(|x| keep(x)).cloned().collect())
    }

    /// All subsets; refuses more than 20 elements.
    pub fn powerset(&self) -> Result<HfSet, HfError> {
        Ok(Self::make_set(self.subsets()?))
    }

    /// All subsets as a list, indexed by bitmask over the elements.
    pub fn subsets(&self) -> Result<Vec<HfSet>, HfError> {
        let n = self.len();
        if n > 20 {
            return Err(HfError::TooLarge(n));
        }
        Ok((0u32..1 << n).map(|mask| self.subset_by_mask(mask as u64)).collect())
    }

    pub fn subset_by_mask(&self, mask: u64) -> HfSet {
        Self::from_sorted(
            self.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect(),
        )
    }

    /// `Some(n)` when this set is the numeral `n`.
    pub fn as_numeral(&self) -> Option<u64> {
        let n = self.len();
        if self.rank() as usize != n {
            return None;
        }
        let Some(last) = self.0.elems.last() else {
            return Some(0);
        };
        (last.as_numeral() == Some(n as u64 - 1) && self.0.elems[..n - 1] == *last.elems()).then_some(n as u64)
    }

    /// Display with numerals written as decimals.
    pub fn compact(&self) -> Compact<'_> {
        Compact(self)
    }
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.rank == other.0.rank && self.0.elems == other.0.elems)
    }
}

impl Eq for HfSet {}

impl Ord for HfSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.rank()
            .cmp(&other.rank())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.0.elems.cmp(&other.0.elems))
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for HfSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.rank.hash(state);
        self.0.elems.hash(state);
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

pub struct Compact<'a>(&'a HfSet);

impl fmt::Display for Compact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.0.as_numeral() {
            return write!(f, "{n}");
        }
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x.compact())?;
        }
        f.write_str("}")
    }
}

impl FromIterator<HfSet> for HfSet {
    fn from_iter<I: IntoIterator<Item = HfSet>>(iter: I) -> Self {
        Self::make_set(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a HfSet {
    type Item = &'a HfSet;
    type IntoIter = std::slice::Iter<'a, HfSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}
