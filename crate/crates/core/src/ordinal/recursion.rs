//! Definition by recursion along a well-order: `f(x) = φ(f|S_x)`.

use super::order::{FiniteOrder, EXHAUSTIVE_CAP};
use super::OrdinalError;
use crate::hf::HfSet;

/// A well-ordered set seen through positions `0, 1, …` from least to
/// greatest.
pub trait WellOrder {
    fn size(&self) -> usize;
    fn element_at(&self, position: usize) -> HfSet;
}

/// The numeral `n` under `∈`, without building its elements up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumeralOrder(pub u64);

impl WellOrder for NumeralOrder {
    fn size(&self) -> usize {
        self.0 as usize
    }

    fn element_at(&self, position: usize) -> HfSet {
        HfSet::numeral(position as u64)
    }
}

/// A finite order together with its elements listed from least to greatest.
#[derive(Debug, Clone)]
pub struct WellOrdered<'a> {
    order: &'a FiniteOrder,
    positions: Vec<usize>,
}

impl FiniteOrder {
    /// Fails unless the order is a well-order. Carriers within the
    /// exhaustive cap are checked subset by subset, larger ones by totality.
    pub fn as_well_order(&self) -> Result<WellOrdered<'_>, OrdinalError> {
        let ok = if self.len() <= EXHAUSTIVE_CAP {
            self.is_well_order()?
        } else {
            self.is_total()
        };
        match (ok, self.chain_positions()) {
            (true, Some(positions)) => Ok(WellOrdered { order: self, positions }),
            _ => Err(OrdinalError::NotWellOrder),
        }
    }
}

impl WellOrdered<'_> {
    /// Pair recursion results with the elements they belong to.
    pub fn label<V>(&self, values: Vec<V>) -> Vec<(HfSet, V)> {
        (0..values.len()).map(|p| self.element_at(p)).zip(values).collect()
    }
}

impl WellOrder for WellOrdered<'_> {
    fn size(&self) -> usize {
        self.positions.len()
    }

    fn element_at(&self, position: usize) -> HfSet {
        self.order.elements()[self.positions[position]].clone()
    }
}

struct Listed(Vec<HfSet>);

impl WellOrder for Listed {
    fn size(&self) -> usize {
        self.0.len()
    }

    fn element_at(&self, position: usize) -> HfSet {
        self.0[position].clone()
    }
}

/// `f|S_x`: the values already computed on the segment below `x`.
pub struct Restriction<'a, V> {
    position: usize,
    values: &'a [V],
    order: &'a dyn WellOrder,
}

impl<V> Restriction<'_, V> {
    /// Position of `x`, which is also the size of `S_x`.
    pub fn position(&self) -> usize {
        self.position
    }

    /// `f(y)` for `y < x`, from least to greatest.
    pub fn values(&self) -> &[V] {
        self.values
    }

    pub fn element(&self) -> HfSet {
        self.order.element_at(self.position)
    }

    pub fn segment(&self) -> HfSet {
        (0..self.position).map(|p| self.order.element_at(p)).collect()
    }

    /// `(y, f(y))` for `y < x`.
    pub fn entries(&self) -> Vec<(HfSet, &V)> {
        self.values
            .iter()
            .enumerate()
            .map(|(p, v)| (self.order.element_at(p), v))
            .collect()
    }
}

fn step_error<V>(r: &Restriction<'_, V>, message: String) -> OrdinalError {
    OrdinalError::Recursion {
        segment: r.segment().compact().to_string(),
        message,
    }
}

/// The unique `f` with `f(x) = φ(f|S_x)`, as values by position.
pub fn transfinite_recurse<V, W, F>(order: &W, mut phi: F) -> Result<Vec<V>, OrdinalError>
where
    W: WellOrder,
    F: FnMut(&Restriction<'_, V>) -> Result<V, String>,
{
    let n = order.size();
    let mut values = Vec::with_capacity(n);
    for position in 0..n {
        let r = Restriction {
            position,
            values: &values,
            order: order as &dyn WellOrder,
        };
        let v = phi(&r).map_err(|m| step_error(&r, m))?;
        values.push(v);
    }
    Ok(values)
}

/// The same `f`, built by repeatedly picking any element whose whole
/// segment is already defined. Results are listed in canonical carrier
/// order.
pub fn transfinite_recurse_worklist<V, F>(order: &FiniteOrder, mut phi: F) -> Result<Vec<(HfSet, V)>, OrdinalError>
where
    V: Clone,
    F: FnMut(&Restriction<'_, V>) -> Result<V, String>,
{
    order.as_well_order()?;
    let n = order.len();
    let below: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut s: Vec<usize> = (0..n).filter(|&j| order.lt(j, i)).collect();
            s.sort_by_key(|&j| (0..n).filter(|&k| order.lt(k, j)).count());
            s
        })
        .collect();
    let mut done: Vec<Option<V>> = vec![None; n];
    let mut remaining = n;
    while remaining > 0 {
        let i = (0..n)
            .rev()
            .find(|&i| done[i].is_none() && below[i].iter().all(|&j| done[j].is_some()))
            .expect("a well-order always has a minimal undefined element");
        let values: Vec<V> = below[i].iter().map(|&j| done[j].clone().expect("defined")).collect();
        let listed = Listed(
            below[i]
                .iter()
                .chain(std::iter::once(&i))
                .map(|&j| order.elements()[j].clone())
                .collect(),
        );
        let r = Restriction {
            position: values.len(),
            values: &values,
            order: &listed,
        };
        let v = phi(&r).map_err(|m| step_error(&r, m))?;
        done[i] = Some(v);
        remaining -= 1;
    }
    Ok(order
        .elements()
        .iter()
        .cloned()
        .zip(done.into_iter().map(|v| v.expect("all defined")))
        .collect())
}

/// The ordinal isomorphic to a finite well-order: `f(x) = {f(y) | y < x}`
/// and the type is the set of all values.
pub fn order_type(order: &FiniteOrder) -> Result<HfSet, OrdinalError> {
    let w = order.as_well_order()?;
    let values = transfinite_recurse(&w, |r| Ok(r.values().iter().cloned().collect::<HfSet>()))?;
    Ok(values.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Pow,
}

/// `u₀ = start`, `u_{k+1} = next(u_k)`, evaluated up to `u_n` along the
/// numeral `n + 1`.
fn iterate(start: u64, n: u64, mut next: impl FnMut(u64) -> Option<u64>) -> Result<u64, OrdinalError> {
    let values = transfinite_recurse(&NumeralOrder(n + 1), |r| match r.position() {
        0 => Ok(start),
        k => next(r.values()[k - 1]).ok_or_else(|| "overflow".to_string()),
    })
    .map_err(|_| OrdinalError::Overflow)?;
    Ok(*values.last().expect("n + 1 positions"))
}

/// `m + n`, `m · n` and `mⁿ`, each by recursion on `n` from the previous
/// operation; addition steps by successor.
pub fn nat_arith(op: ArithOp, m: u64, n: u64) -> Result<u64, OrdinalError> {
    match op {
        ArithOp::Add => iterate(m, n, |u| u.checked_add(1)),
        ArithOp::Mul => iterate(0, n, |u| nat_arith(ArithOp::Add, u, m).ok()),
        ArithOp::Pow => iterate(1, n, |u| nat_arith(ArithOp::Mul, u, m).ok()),
    }
}
