mod common;

use bourbaki::hf::{couple, graph_image, HfSet};
use bourbaki::ordinal::{
    equipotence, is_decent, is_ordinal, is_ordinal_by_definition, is_transitive_set, lex_product, nat_arith,
    order_type, transfinite_recurse, transfinite_recurse_worklist, ArithOp, FiniteOrder,
};
use common::rng;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn n(k: u64) -> HfSet {
    HfSet::numeral(k)
}

/// Distinct random sets listed in a random order.
fn random_chain(r: &mut rand_chacha::ChaCha8Rng, len: usize) -> Vec<HfSet> {
    let mut pool: Vec<HfSet> = HfSet::numeral(3).powerset().unwrap().powerset().unwrap().elems().to_vec();
    pool.shuffle(r);
    pool.truncate(len);
    pool
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ordinals_are_transitive_and_decent(seed in any::<u64>()) {
        let s = common::hf_set(&mut rng(seed), 4, 3);
        if is_ordinal(&s) {
            prop_assert!(is_transitive_set(&s) && is_decent(&s));
        }
        prop_assert_eq!(is_ordinal_by_definition(&s).unwrap(), is_ordinal(&s));
    }

    #[test]
    fn order_type_ignores_labels(seed in any::<u64>(), len in 0usize..10) {
        let mut r = rng(seed);
        let a = random_chain(&mut r, len);
        let b = random_chain(&mut r, len);
        let ta = order_type(&FiniteOrder::chain(&a).unwrap()).unwrap();
        let tb = order_type(&FiniteOrder::chain(&b).unwrap()).unwrap();
        prop_assert_eq!(&ta, &tb);
        prop_assert_eq!(ta, n(len as u64));
    }

    #[test]
    fn recursion_routes_agree(seed in any::<u64>(), len in 0usize..9) {
        let chain = random_chain(&mut rng(seed), len);
        let o = FiniteOrder::chain(&chain).unwrap();
        // f(x) = number of even earlier values plus the size of the segment
        let phi = |r: &bourbaki::ordinal::Restriction<'_, u64>| {
            Ok(r.values().iter().filter(|v| *v % 2 == 0).count() as u64 + r.segment().len() as u64)
        };
        let w = o.as_well_order().unwrap();
        let mut direct = w.label(transfinite_recurse(&w, phi).unwrap());
        direct.sort();
        prop_assert_eq!(direct, transfinite_recurse_worklist(&o, phi).unwrap());
    }

    #[test]
    fn lex_products_of_chains_are_chains(seed in any::<u64>(), a in 1usize..4, b in 1usize..4) {
        let mut r = rng(seed);
        let x = FiniteOrder::chain(&random_chain(&mut r, a)).unwrap();
        let y = FiniteOrder::chain(&random_chain(&mut r, b)).unwrap();
        let p = lex_product(&[x, y]).unwrap();
        prop_assert!(p.is_well_order().unwrap());
        prop_assert_eq!(order_type(&p).unwrap(), n((a * b) as u64));
    }

    #[test]
    fn arithmetic_matches_native(m in 0u64..12, k in 0u64..6) {
        prop_assert_eq!(nat_arith(ArithOp::Add, m, k).unwrap(), m + k);
        prop_assert_eq!(nat_arith(ArithOp::Mul, m, k).unwrap(), m * k);
        prop_assert_eq!(nat_arith(ArithOp::Pow, m, k).unwrap(), m.pow(k as u32));
    }
}

#[test]
fn successor_is_injective_on_ordinals() {
    for a in 0..9 {
        for b in 0..9 {
            assert_eq!(n(a).successor() == n(b).successor(), a == b);
        }
    }
}

#[test]
fn cyclic_successor_has_no_stable_proper_part() {
    for k in 1..=8u64 {
        let f: HfSet = (0..k).map(|i| couple(&n(i), &n((i + 1) % k))).collect();
        for mask in 1u64..(1 << k) - 1 {
            let s = n(k).subset_by_mask(mask);
            assert!(!graph_image(&f, &s).unwrap().is_subset(&s), "n = {k}, S = {s:?}");
        }
    }
}

#[test]
fn finite_ordinals_are_not_equipotent_to_proper_parts() {
    for k in 0..=6 {
        for s in n(k).subsets().unwrap() {
            if s != n(k) {
                assert!(equipotence(&n(k), &s).is_none());
            }
        }
    }
}
