//! Von Neumann ordinals over hereditarily finite sets, finite orders,
//! recursion along well-orders and arithmetic defined by recursion.

mod order;
mod recursion;

pub use order::{lex_product, FiniteOrder, EXHAUSTIVE_CAP, MAX_CARRIER};
pub use recursion::{
    WellOrdered,
    nat_arith, order_type, transfinite_recurse, transfinite_recurse_worklist, ArithOp, NumeralOrder, Restriction,
    WellOrder,
};

use std::cmp::Ordering;
use std::collections::HashSet;

use thiserror::Error;

use crate::hf::HfSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("{0} is not an ordinal")]
    NotOrdinal(String),
    #[error("not an order: {0}")]
    NotAnOrder(String),
    #[error("order is not a well-order")]
    NotWellOrder,
    #[error("{size} elements exceed the limit of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("{0} is not in the carrier")]
    NotInCarrier(String),
    #[error("recursion step failed on the segment {segment}: {message}")]
    Recursion { segment: String, message: String },
    #[error("result does not fit in 64 bits")]
    Overflow,
}

/// Every element is a subset.
pub fn is_transitive_set(x: &HfSet) -> bool {
    x.iter().all(|e| e.is_subset(x))
}

/// No element is a member of itself.
pub fn is_decent(x: &HfSet) -> bool {
    x.iter().all(|e| !e.contains(e))
}

/// A transitive set whose elements are ordinals.
pub fn is_ordinal(x: &HfSet) -> bool {
    fn go(x: &HfSet, known: &mut HashSet<HfSet>) -> bool {
        if known.contains(x) {
            return true;
        }
        let ok = is_transitive_set(x) && x.iter().all(|e| go(e, known));
        if ok {
            known.insert(x.clone());
        }
        ok
    }
    go(x, &mut HashSet::new())
}

/// Every transitive proper subset is an element. Enumerates subsets, so it
/// refuses sets with more than 20 elements.
pub fn is_ordinal_by_definition(x: &HfSet) -> Result<bool, OrdinalError> {
    let subsets = x.subsets().map_err(|_| OrdinalError::TooLarge { size: x.len(), cap: 20 })?;
    Ok(subsets
        .iter()
        .filter(|y| y.len() < x.len() && is_transitive_set(y))
        .all(|y| x.contains(y)))
}

fn require_ordinal(x: &HfSet) -> Result<(), OrdinalError> {
    if is_ordinal(x) {
        Ok(())
    } else {
        Err(OrdinalError::NotOrdinal(x.compact().to_string()))
    }
}

/// `Less` iff `α ∈ β`.
pub fn ordinal_compare(alpha: &HfSet, beta: &HfSet) -> Result<Ordering, OrdinalError> {
    require_ordinal(alpha)?;
    require_ordinal(beta)?;
    Ok(if alpha == beta {
        Ordering::Equal
    } else if beta.contains(alpha) {
        Ordering::Less
    } else {
        Ordering::Greater
    })
}

/// `⋃E` for a set of ordinals.
pub fn sup_ordinals(e: &HfSet) -> Result<HfSet, OrdinalError> {
    e.iter().try_for_each(require_ordinal)?;
    Ok(e.big_union())
}

/// Bijection between two finite sets pairing elements in canonical order,
/// or `None` when they are not equipotent.
pub fn equipotence(a: &HfSet, b: &HfSet) -> Option<Vec<(HfSet, HfSet)>> {
    (a.len() == b.len()).then(|| a.iter().cloned().zip(b.iter().cloned()).collect())
}

/// The least ordinal equipotent to `x`.
pub fn cardinal_of(x: &HfSet) -> HfSet {
    let mut k = HfSet::empty();
    while equipotence(&k, x).is_none() {
        k = k.successor();
    }
    k
}
