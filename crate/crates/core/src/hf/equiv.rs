//! Equivalence graphs and their quotients.

use super::graph::{diagonal, graph_compose, graph_image, graph_inverse, pairs, pr1_set, pr2_set};
use super::{HfError, HfSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// `pr₁G, pr₂G ⊂ E`, `Δ_E ⊂ G`, `G∘G ⊂ G` and `G⁻¹ = G`.
    pub criterion_a: bool,
    /// `pr₁G, pr₂G ⊂ E`, `Δ_E ⊂ G` and `G∘G⁻¹∘G ⊂ G`.
    pub criterion_b: bool,
    /// Reflexive on `E`, symmetric and transitive, checked pair by pair.
    pub definitional: bool,
}

impl EquivalenceReport {
    pub fn verdict(&self) -> bool {
        self.definitional
    }

    pub fn criteria_agree(&self) -> bool {
        self.criterion_a == self.criterion_b && self.criterion_b == self.definitional
    }
}

fn in_square(e: &HfSet, g: &HfSet) -> Result<bool, HfError> {
    Ok(pr1_set(g)?.is_subset(e) && pr2_set(g)?.is_subset(e))
}

pub fn equivalence_check(e: &HfSet, g: &HfSet) -> Result<EquivalenceReport, HfError> {
    let base = in_square(e, g)? && diagonal(e).is_subset(g);
    let inv = graph_inverse(g)?;
    let criterion_a = base && graph_compose(g, g)?.is_subset(g) && inv == *g;
    let criterion_b = base && graph_compose(g, &graph_compose(&inv, g)?)?.is_subset(g);

    let ps = pairs(g)?;
    let related = |x: &HfSet, y: &HfSet| ps.iter().any(|(a, b)| a == x && b == y);
    let definitional = ps.iter().all(|(a, b)| e.contains(a) && e.contains(b))
        && e.iter().all(|x| related(x, x))
        && ps.iter().all(|(a, b)| related(b, a))
        && ps.iter().all(|(a, b)| ps.iter().filter(|(c, _)| c == b).all(|(_, d)| related(a, d)));
    Ok(EquivalenceReport {
        criterion_a,
        criterion_b,
        definitional,
    })
}

/// The least equivalence graph on `E` containing `G`: unions of powers of
/// `Δ_E ∪ G ∪ G⁻¹` until they stop growing.
pub fn equivalence_closure(e: &HfSet, g: &HfSet) -> Result<HfSet, HfError> {
    if !in_square(e, g)? {
        return Err(HfError::NotInSquare);
    }
    let step = diagonal(e).union(g).union(&graph_inverse(g)?);
    let mut acc = step.clone();
    loop {
        let next = acc.union(&graph_compose(&step, &acc)?);
        if next == acc {
            return Ok(acc);
        }
        acc = next;
    }
}

/// `E/G` as the set of classes `G⟨{x}⟩`.
pub fn quotient(e: &HfSet, g: &HfSet) -> Result<HfSet, HfError> {
    if !equivalence_check(e, g)?.verdict() {
        return Err(HfError::NotEquivalence);
    }
    e.iter().map(|x| graph_image(g, &HfSet::singleton(x.clone()))).collect()
}
