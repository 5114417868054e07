//! Formative constructions: sequences in which every assembly is a letter or
//! is obtained from earlier ones by `¬`, `∨`, `τ_x`, or a relational sign.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::assembly::{Assembly, Letter, Node};
use crate::linear::{delinearize, LinearAssembly};

/// Justification of one step, labelled a) to e) as in the formative rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// a) a letter
    Letter,
    /// b) `¬A` with `A` an earlier relation
    Negation,
    /// c) `∨AB` with `A`, `B` earlier relations
    Disjunction,
    /// d) `τ_x(A)` with `A` an earlier relation
    TauBinding,
    /// e) `=AB` or `∈AB` with `A`, `B` earlier terms
    Relational,
}

impl Rule {
    pub fn label(self) -> char {
        match self {
            Rule::Letter => 'a',
            Rule::Negation => 'b',
            Rule::Disjunction => 'c',
            Rule::TauBinding => 'd',
            Rule::Relational => 'e',
        }
    }

    fn is_term(self) -> bool {
        matches!(self, Rule::Letter | Rule::TauBinding)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::Letter => "letter",
            Rule::Negation => "negation",
            Rule::Disjunction => "disjunction",
            Rule::TauBinding => "tau-binding",
            Rule::Relational => "relational sign",
        };
        write!(f, "{} ({name})", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormativeStep {
    /// 1-based position in the sequence.
    pub index: usize,
    pub rule: Rule,
    /// 1-based positions of the antecedents used.
    pub antecedents: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormativeFailure {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormativeReport {
    pub steps: Vec<FormativeStep>,
    pub failure: Option<FormativeFailure>,
}

impl FormativeReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.steps.iter().map(|s| s.rule).collect()
    }
}

impl fmt::Display for FormativeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            write!(f, "{}: {}", step.index, step.rule)?;
            if !step.antecedents.is_empty() {
                let ante: Vec<String> = step.antecedents.iter().map(usize::to_string).collect();
                write!(f, " from {}", ante.join(", "))?;
            }
            writeln!(f)?;
        }
        match &self.failure {
            None => writeln!(f, "valid"),
            Some(fail) => writeln!(f, "invalid at element {}: {}", fail.index, fail.reason),
        }
    }
}

/// Check a sequence given in linear form. A malformed element is reported as
/// the failure at its position.
pub fn verify_formative(seq: &[LinearAssembly]) -> FormativeReport {
    let mut parsed = Vec::with_capacity(seq.len());
    for (i, lin) in seq.iter().enumerate() {
        match delinearize(lin) {
            Ok(a) => parsed.push(a),
            Err(e) => {
                let mut report = verify_assemblies(&parsed);
                if report.failure.is_none() {
                    report.failure = Some(FormativeFailure {
                        index: i + 1,
                        reason: format!("not an assembly: {e}"),
                    });
                }
                return report;
            }
        }
    }
    verify_assemblies(&parsed)
}

pub fn verify_assemblies(seq: &[Assembly]) -> FormativeReport {
    let mut steps = Vec::new();
    // earliest position of each justified assembly, and whether it is a term
    let mut seen: HashMap<&Assembly, (usize, bool)> = HashMap::new();
    let mut relations: Vec<(usize, &Assembly)> = Vec::new();

    for (i, a) in seq.iter().enumerate() {
        let index = i + 1;
        let lookup = |x: &Assembly, want_term: bool| seen.get(x).filter(|(_, t)| *t == want_term).map(|(p, _)| *p);
        let justified: Result<(Rule, Vec<usize>), String> = match a.node() {
            Node::Letter(_) => Ok((Rule::Letter, vec![])),
            Node::Bound(_) => Err("a square cannot stand alone".into()),
            Node::Not(b) => lookup(b, false)
                .map(|p| (Rule::Negation, vec![p]))
                .ok_or_else(|| "negated assembly is not an earlier relation".into()),
            Node::Or(l, r) => match (lookup(l, false), lookup(r, false)) {
                (Some(p), Some(q)) => Ok((Rule::Disjunction, vec![p, q])),
                _ => Err("disjuncts are not both earlier relations".into()),
            },
            Node::Rel(_, l, r) => match (lookup(l, true), lookup(r, true)) {
                (Some(p), Some(q)) => Ok((Rule::Relational, vec![p, q])),
                _ => Err("arguments of the relational sign are not both earlier terms".into()),
            },
            Node::Tau(_) => relations
                .iter()
                .find(|(_, rel)| tau_candidates(rel).any(|t| t == *a))
                .map(|(p, _)| (Rule::TauBinding, vec![*p]))
                .ok_or_else(|| "no earlier relation R and letter x give this tau_x(R)".into()),
        };
        match justified {
            Ok((rule, antecedents)) => {
                seen.entry(a).or_insert((index, rule.is_term()));
                if !rule.is_term() {
                    relations.push((index, a));
                }
                steps.push(FormativeStep { index, rule, antecedents });
            }
            Err(reason) => {
                return FormativeReport {
                    steps,
                    failure: Some(FormativeFailure { index, reason }),
                }
            }
        }
    }
    FormativeReport { steps, failure: None }
}

/// Every `τ_x(R)` for `x` free in `R`, plus the vacuous binding `τ(R)`.
fn tau_candidates(rel: &Assembly) -> impl Iterator<Item = Assembly> + '_ {
    let vacuous = Assembly::tau_raw(rel.clone());
    std::iter::once(vacuous).chain(rel.free_letters().into_iter().map(move |x| Assembly::tau_bind(&x, rel)))
}

/// A canonical formative construction ending in `a`: subassemblies in
/// post-order without repeats, each `τ` preceded by its body opened with a
/// fresh letter.
pub fn formative_construction(a: &Assembly) -> Vec<Assembly> {
    let used = a.free_letters();
    let mut fresh = FreshLetters { used, by_depth: vec![] };
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    construct(a, 0, &mut fresh, &mut out, &mut seen);
    out
}

struct FreshLetters {
    used: BTreeSet<Letter>,
    by_depth: Vec<Letter>,
}

impl FreshLetters {
    fn at(&mut self, depth: usize) -> Letter {
        while self.by_depth.len() <= depth {
            let mut k = self.by_depth.len();
            let letter = loop {
                let candidate = Letter::new(&format!("_f{k}")).expect("valid reserved name");
                if !self.used.contains(&candidate) {
                    break candidate;
                }
                k += 1;
            };
            self.used.insert(letter.clone());
            self.by_depth.push(letter);
        }
        self.by_depth[depth].clone()
    }
}

fn construct(a: &Assembly, depth: usize, fresh: &mut FreshLetters, out: &mut Vec<Assembly>, seen: &mut HashSet<Assembly>) {
    if seen.contains(a) {
        return;
    }
    match a.node() {
        Node::Letter(_) | Node::Bound(_) => {}
        Node::Not(b) => construct(b, depth, fresh, out, seen),
        Node::Or(l, r) | Node::Rel(_, l, r) => {
            construct(l, depth, fresh, out, seen);
            construct(r, depth, fresh, out, seen);
        }
        Node::Tau(body) => {
            let x = fresh.at(depth);
            let opened = Assembly::open(body, &x);
            construct(&opened, depth + 1, fresh, out, seen);
        }
    }
    seen.insert(a.clone());
    out.push(a.clone());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::linearize;

    fn v(n: &str) -> Assembly {
        Assembly::var(n)
    }

    #[test]
    fn letters_then_membership() {
        let seq = [v("x"), v("y"), Assembly::elem(v("x"), v("y"))];
        let report = verify_assemblies(&seq);
        assert!(report.is_valid());
        assert_eq!(report.rules(), vec![Rule::Letter, Rule::Letter, Rule::Relational]);
    }

    #[test]
    fn missing_antecedent() {
        let seq = [v("x"), Assembly::elem(v("x"), v("y"))];
        let report = verify_assemblies(&seq);
        assert_eq!(report.failure.as_ref().unwrap().index, 2);
    }

    #[test]
    fn tau_over_earlier_relation() {
        let r = Assembly::elem(v("x"), v("y"));
        let x = Letter::new("x").unwrap();
        let seq = [v("x"), v("y"), r.clone(), Assembly::tau_bind(&x, &r)];
        let report = verify_assemblies(&seq);
        assert!(report.is_valid());
        assert_eq!(*report.rules().last().unwrap(), Rule::TauBinding);
    }

    #[test]
    fn tau_over_term_is_rejected() {
        let x = Letter::new("x").unwrap();
        let seq = [v("x"), Assembly::tau_bind(&x, &v("x"))];
        assert!(!verify_assemblies(&seq).is_valid());
    }

    #[test]
    fn linear_input_with_garbage() {
        let seq: Vec<LinearAssembly> = vec!["signs: x".parse().unwrap(), "signs: in x".parse().unwrap()];
        let report = verify_formative(&seq);
        assert_eq!(report.failure.unwrap().index, 2);
    }

    #[test]
    fn construction_of_nested_taus_verifies() {
        let x = Letter::new("x").unwrap();
        let y = Letter::new("y").unwrap();
        let inner = Assembly::tau_bind(&y, &Assembly::elem(v("y"), v("x")));
        let outer = Assembly::tau_bind(&x, &Assembly::eq(inner, v("x")));
        let seq = formative_construction(&outer);
        assert_eq!(seq.last(), Some(&outer));
        let lin: Vec<_> = seq.iter().map(linearize).collect();
        assert!(verify_formative(&lin).is_valid());
    }
}
