//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use bourbaki::expr::Expression;
use bourbaki::fixpoint::{tuple_set, InjectionPair, MonotoneMap};
use bourbaki::hf::HfSet;
use bourbaki::ordinal::FiniteOrder;
use bourbaki::{Assembly, Letter};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LETTERS: [&str; 4] = ["x", "y", "z", "w"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letter(name: &str) -> Letter {
    Letter::new(name).unwrap()
}

fn pick_letter(r: &mut ChaCha8Rng) -> Letter {
    letter(LETTERS[r.gen_range(0..LETTERS.len())])
}

pub fn term(r: &mut ChaCha8Rng, depth: u32) -> Assembly {
    if depth == 0 || r.gen_bool(0.45) {
        Assembly::letter(pick_letter(r))
    } else {
        let x = pick_letter(r);
        Assembly::tau_bind(&x, &relation(r, depth - 1))
    }
}

pub fn relation(r: &mut ChaCha8Rng, depth: u32) -> Assembly {
    let d = depth.saturating_sub(1);
    match if depth == 0 { r.gen_range(2..4) } else { r.gen_range(0..4) } {
        0 => Assembly::not(relation(r, d)),
        1 => Assembly::or(relation(r, d), relation(r, d)),
        2 => Assembly::eq(term(r, d), term(r, d)),
        _ => Assembly::elem(term(r, d), term(r, d)),
    }
}

pub fn assembly(r: &mut ChaCha8Rng, depth: u32) -> Assembly {
    if r.gen_bool(0.5) {
        term(r, depth)
    } else {
        relation(r, depth)
    }
}

fn bx(e: Expression) -> Box<Expression> {
    Box::new(e)
}

fn elet(r: &mut ChaCha8Rng) -> Expression {
    Expression::Letter(pick_letter(r))
}

/// Term-sorted expression using every term abbreviation.
pub fn term_expr(r: &mut ChaCha8Rng, depth: u32) -> Expression {
    if depth == 0 {
        return match r.gen_range(0..4) {
            0 => Expression::Empty,
            1 => Expression::Numeral(r.gen_range(0..2)),
            _ => elet(r),
        };
    }
    let d = depth - 1;
    match r.gen_range(0..11) {
        0 => elet(r),
        1 => Expression::Tau(pick_letter(r), bx(rel_expr(r, d))),
        2 => Expression::SetOf(pick_letter(r), bx(rel_expr(r, d))),
        3 => Expression::Enum((0..r.gen_range(1..4)).map(|_| term_expr(r, d)).collect()),
        4 => Expression::Singleton(bx(term_expr(r, d))),
        5 => Expression::Couple(bx(term_expr(r, d)), bx(term_expr(r, d))),
        6 => Expression::Union(bx(term_expr(r, d)), bx(term_expr(r, d))),
        7 => Expression::Succ(bx(term_expr(r, d))),
        8 => Expression::Numeral(r.gen_range(0..3)),
        9 => Expression::Subst(bx(term_expr(r, d)), pick_letter(r), bx(term_expr(r, d))),
        _ => Expression::Empty,
    }
}

/// Relation-sorted expression using every relation abbreviation.
pub fn rel_expr(r: &mut ChaCha8Rng, depth: u32) -> Expression {
    let d = depth.saturating_sub(1);
    let choice = if depth == 0 { r.gen_range(5..9) } else { r.gen_range(0..15) };
    match choice {
        0 => Expression::Not(bx(rel_expr(r, d))),
        1 => Expression::Or(bx(rel_expr(r, d)), bx(rel_expr(r, d))),
        2 => Expression::And(bx(rel_expr(r, d)), bx(rel_expr(r, d))),
        3 => Expression::Implies(bx(rel_expr(r, d)), bx(rel_expr(r, d))),
        4 => Expression::Iff(bx(rel_expr(r, d)), bx(rel_expr(r, d))),
        5 => Expression::Eq(bx(term_expr(r, d)), bx(term_expr(r, d))),
        6 => Expression::In(bx(term_expr(r, d)), bx(term_expr(r, d))),
        7 => Expression::NotIn(bx(term_expr(r, d)), bx(term_expr(r, d))),
        8 => Expression::Neq(bx(term_expr(r, d)), bx(term_expr(r, d))),
        9 => Expression::Subset(bx(term_expr(r, d)), bx(term_expr(r, d))),
        10 => Expression::Forall(pick_letter(r), bx(rel_expr(r, d))),
        11 => Expression::Exists(pick_letter(r), bx(rel_expr(r, d))),
        12 => Expression::Coll(pick_letter(r), bx(rel_expr(r, d))),
        _ => Expression::Subst(bx(rel_expr(r, d)), pick_letter(r), bx(term_expr(r, d))),
    }
}

pub fn expression(r: &mut ChaCha8Rng, depth: u32) -> Expression {
    if r.gen_bool(0.5) {
        term_expr(r, depth)
    } else {
        rel_expr(r, depth)
    }
}

/// Random set of rank at most `rank`.
pub fn hf_set(r: &mut ChaCha8Rng, rank: u32, width: usize) -> HfSet {
    if rank == 0 {
        return HfSet::empty();
    }
    let n = r.gen_range(0..=width);
    (0..n).map(|_| hf_set(r, rank - 1, width)).collect()
}

pub fn numerals(n: u64) -> HfSet {
    HfSet::numeral(n)
}

/// Random subset of `s`.
pub fn subset_of(r: &mut ChaCha8Rng, s: &HfSet) -> HfSet {
    s.filter(|_| r.gen_bool(0.5))
}

/// Atoms for sets of size up to 12: numerals followed by singletons.
pub fn atoms(n: usize, offset: u64) -> Vec<HfSet> {
    (0..n as u64).map(|k| HfSet::numeral(k + offset)).collect()
}

fn random_injection(r: &mut ChaCha8Rng, dom: &[HfSet], cod: &[HfSet]) -> BTreeMap<HfSet, HfSet> {
    let mut targets = cod.to_vec();
    targets.shuffle(r);
    dom.iter().cloned().zip(targets).collect()
}

/// Random pair of injections between sets with at most `max` elements.
/// `E` holds numerals, `F` singletons of numerals.
pub fn injection_pair(r: &mut ChaCha8Rng, max: usize) -> InjectionPair {
    let n = r.gen_range(0..=max);
    let e = atoms(n, 0);
    let f: Vec<HfSet> = atoms(n, r.gen_range(0..4)).into_iter().map(HfSet::singleton).collect();
    let fm = random_injection(r, &e, &f);
    let gm = random_injection(r, &f, &e);
    InjectionPair::new(e.into_iter().collect(), f.into_iter().collect(), fm, gm).unwrap()
}

/// Random monotone self-map of the subsets of `{0, …, base-1}`, built by
/// closing a random table upward.
pub fn monotone_powerset_map(r: &mut ChaCha8Rng, base: u64) -> MonotoneMap {
    let d = FiniteOrder::powerset(&numerals(base)).unwrap();
    let n = d.len();
    // by size: predecessors first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| d.elements()[i].len());
    let mut table = vec![usize::MAX; n];
    for &i in &order {
        let below = (0..n).filter(|&j| j != i && d.le(j, i)).fold(d.inf(d.full_mask()).unwrap(), |acc, j| {
            d.sup(1 << acc | 1 << table[j]).unwrap()
        });
        let candidates: Vec<usize> = (0..n).filter(|&k| d.le(below, k)).collect();
        table[i] = *candidates.choose(r).unwrap();
    }
    MonotoneMap::new(d, table).unwrap()
}

pub struct KoenigInstance {
    pub b: Vec<HfSet>,
    pub a: Vec<HfSet>,
}

/// Random instance with `|Bᵢ| ≤ 4`, at most 4 indices and `|Aᵢ| < |Bᵢ|`.
pub fn koenig_instance(r: &mut ChaCha8Rng) -> KoenigInstance {
    let k = r.gen_range(0..=4);
    let b: Vec<HfSet> = (0..k)
        .map(|_| {
            let size = r.gen_range(1..=4);
            atoms(size, r.gen_range(0..3)).into_iter().collect()
        })
        .collect();
    let a = b
        .iter()
        .map(|bi| {
            let size = r.gen_range(0..bi.len());
            (0..size)
                .map(|_| {
                    let t: Vec<HfSet> = b.iter().map(|bj| bj.elems().choose(r).unwrap().clone()).collect();
                    tuple_set(&t)
                })
                .collect::<HfSet>()
        })
        .collect();
    KoenigInstance { b, a }
}
