//! Graphs as sets of couples.

use std::collections::BTreeMap;

use super::{HfError, HfSet};

/// `(x, y) = {{x}, {x, y}}`.
pub fn couple(x: &HfSet, y: &HfSet) -> HfSet {
    HfSet::pair(HfSet::singleton(x.clone()), HfSet::pair(x.clone(), y.clone()))
}

pub fn decouple(z: &HfSet) -> Result<(HfSet, HfSet), HfError> {
    let bad = || HfError::NotACouple(z.compact().to_string());
    match z.elems() {
        [s] if s.len() == 1 => Ok((s.elems()[0].clone(), s.elems()[0].clone())),
        [s, p] if s.len() == 1 && p.len() == 2 => {
            let x = &s.elems()[0];
            match p.elems() {
                [a, b] if a == x => Ok((x.clone(), b.clone())),
                [a, b] if b == x => Ok((x.clone(), a.clone())),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// The couples of a graph, in canonical order of the couples.
pub fn pairs(g: &HfSet) -> Result<Vec<(HfSet, HfSet)>, HfError> {
    g.iter().map(decouple).collect()
}

fn from_pairs(it: impl IntoIterator<Item = (HfSet, HfSet)>) -> HfSet {
    it.into_iter().map(|(x, y)| couple(&x, &y)).collect()
}

pub fn product(a: &HfSet, b: &HfSet) -> HfSet {
    from_pairs(a.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))))
}

pub fn diagonal(e: &HfSet) -> HfSet {
    from_pairs(e.iter().map(|x| (x.clone(), x.clone())))
}

pub fn graph_inverse(g: &HfSet) -> Result<HfSet, HfError> {
    Ok(from_pairs(pairs(g)?.into_iter().map(|(x, y)| (y, x))))
}

/// `H ∘ G = {(x, z) | ∃y (x, y) ∈ G and (y, z) ∈ H}`.
pub fn graph_compose(h: &HfSet, g: &HfSet) -> Result<HfSet, HfError> {
    let mut h_from: BTreeMap<HfSet, Vec<HfSet>> = BTreeMap::new();
    for (y, z) in pairs(h)? {
        h_from.entry(y).or_default().push(z);
    }
    let mut out = Vec::new();
    for (x, y) in pairs(g)? {
        for z in h_from.get(&y).into_iter().flatten() {
            out.push((x.clone(), z.clone()));
        }
    }
    Ok(from_pairs(out))
}

/// `G⟨X⟩`.
pub fn graph_image(g: &HfSet, x: &HfSet) -> Result<HfSet, HfError> {
    Ok(pairs(g)?.into_iter().filter(|(a, _)| x.contains(a)).map(|(_, b)| b).collect())
}

/// `G⁻¹⟨X⟩`.
pub fn preimage(g: &HfSet, x: &HfSet) -> Result<HfSet, HfError> {
    Ok(pairs(g)?.into_iter().filter(|(_, b)| x.contains(b)).map(|(a, _)| a).collect())
}

pub fn pr1_set(g: &HfSet) -> Result<HfSet, HfError> {
    Ok(pairs(g)?.into_iter().map(|(a, _)| a).collect())
}

pub fn pr2_set(g: &HfSet) -> Result<HfSet, HfError> {
    Ok(pairs(g)?.into_iter().map(|(_, b)| b).collect())
}

pub fn is_functional(g: &HfSet) -> Result<bool, HfError> {
    let mut seen: BTreeMap<HfSet, HfSet> = BTreeMap::new();
    for (a, b) in pairs(g)? {
        if let Some(prev) = seen.insert(a, b.clone()) {
            if prev != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `G(x)` for a functional graph.
pub fn apply(g: &HfSet, x: &HfSet) -> Result<HfSet, HfError> {
    if !is_functional(g)? {
        return Err(HfError::NotFunctional);
    }
    pairs(g)?
        .into_iter()
        .find(|(a, _)| a == x)
        .map(|(_, b)| b)
        .ok_or_else(|| HfError::OutsideDomain(x.compact().to_string()))
}

/// A graph with explicit source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    graph: HfSet,
    source: HfSet,
    target: HfSet,
}

impl Correspondence {
    pub fn new(graph: HfSet, source: HfSet, target: HfSet) -> Result<Self, HfError> {
        if !pr1_set(&graph)?.is_subset(&source) || !pr2_set(&graph)?.is_subset(&target) {
            return Err(HfError::BadCorrespondence);
        }
        Ok(Correspondence { graph, source, target })
    }

    pub fn graph(&self) -> &HfSet {
        &self.graph
    }

    pub fn source(&self) -> &HfSet {
        &self.source
    }

    pub fn target(&self) -> &HfSet {
        &self.target
    }

    pub fn image(&self, x: &HfSet) -> HfSet {
        graph_image(&self.graph, x).expect("graph checked on construction")
    }

    pub fn inverse(&self) -> Correspondence {
        Correspondence {
            graph: graph_inverse(&self.graph).expect("graph checked on construction"),
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// `self ∘ other`, defined when the target of `other` is the source of
    /// `self`.
    pub fn compose(&self, other: &Correspondence) -> Option<Correspondence> {
        (other.target == self.source).then(|| Correspondence {
            graph: graph_compose(&self.graph, &other.graph).expect("graphs checked on construction"),
            source: other.source.clone(),
            target: self.target.clone(),
        })
    }

    /// Functional with domain the whole source.
    pub fn is_mapping(&self) -> bool {
        is_functional(&self.graph).expect("graph checked on construction")
            && pr1_set(&self.graph).expect("graph checked on construction") == self.source
    }
}
