mod common;

use bourbaki::hf::{
    couple, equivalence_check, equivalence_closure, graph_compose, graph_image, graph_inverse, is_functional,
    pr1_set, pr2_set, preimage, product, quotient, HfSet,
};
use common::rng;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn small_graph(r: &mut rand_chacha::ChaCha8Rng, n: u64, density: f64) -> HfSet {
    product(&HfSet::numeral(n), &HfSet::numeral(n)).filter(|_| r.gen_bool(density))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extensionality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = common::hf_set(&mut r, 4, 4);
        let mut elems = s.elems().to_vec();
        let dups: Vec<HfSet> = elems.iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
        elems.extend(dups);
        elems.shuffle(&mut r);
        prop_assert_eq!(HfSet::make_set(elems), s);
    }

    #[test]
    fn couples_are_injective(seed in any::<u64>()) {
        let mut r = rng(seed);
        let xs: Vec<HfSet> = (0..4).map(|_| common::hf_set(&mut r, 3, 2)).collect();
        let same = couple(&xs[0], &xs[1]) == couple(&xs[2], &xs[3]);
        prop_assert_eq!(same, xs[0] == xs[2] && xs[1] == xs[3]);
        prop_assert_eq!(couple(&xs[0], &xs[1]) == couple(&xs[0], &xs[0]), xs[0] == xs[1]);
    }

    #[test]
    fn image_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_graph(&mut r, 4, 0.3);
        let y = common::subset_of(&mut r, &HfSet::numeral(4));
        let x = common::subset_of(&mut r, &y);
        prop_assert!(graph_image(&g, &x).unwrap().is_subset(&graph_image(&g, &y).unwrap()));
    }

    #[test]
    fn functional_criterion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_graph(&mut r, 3, 0.25);
        let all = pr2_set(&g).unwrap().subsets().unwrap().into_iter().all(|x| {
            graph_image(&g, &preimage(&g, &x).unwrap()).unwrap().is_subset(&x)
        });
        prop_assert_eq!(is_functional(&g).unwrap(), all);
    }

    #[test]
    fn composition_through_inverse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_graph(&mut r, 3, 0.3);
        let h = small_graph(&mut r, 3, 0.3);
        let gg = graph_compose(&graph_inverse(&g).unwrap(), &g).unwrap();
        let hgg = graph_compose(&h, &gg).unwrap();
        prop_assert_eq!(h.is_subset(&hgg), pr1_set(&h).unwrap().is_subset(&pr1_set(&g).unwrap()));
    }

    #[test]
    fn regular_graphs_give_equivalences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_graph(&mut r, 3, 0.3);
        let inv = graph_inverse(&g).unwrap();
        let ggg = graph_compose(&g, &graph_compose(&inv, &g).unwrap()).unwrap();
        if ggg == g {
            let gg = graph_compose(&inv, &g).unwrap();
            prop_assert!(equivalence_check(&pr1_set(&g).unwrap(), &gg).unwrap().verdict());
        }
    }

    #[test]
    fn closure_matches_union_find(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = HfSet::numeral(5);
        let g = small_graph(&mut r, 5, 0.1);
        let mut parent: Vec<usize> = (0..5).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let root = find(p, p[x]);
                p[x] = root;
            }
            p[x]
        }
        for (a, b) in bourbaki::hf::pairs(&g).unwrap() {
            let (a, b) = (a.as_numeral().unwrap() as usize, b.as_numeral().unwrap() as usize);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut want = Vec::new();
        for x in 0..5 {
            for y in 0..5 {
                if find(&mut parent, x) == find(&mut parent, y) {
                    want.push(couple(&HfSet::numeral(x as u64), &HfSet::numeral(y as u64)));
                }
            }
        }
        let c = equivalence_closure(&e, &g).unwrap();
        prop_assert_eq!(&c, &HfSet::make_set(want));
        let classes = quotient(&e, &c).unwrap();
        prop_assert_eq!(classes.big_union(), e);
        for (i, p) in classes.iter().enumerate() {
            prop_assert!(!p.is_empty());
            for q in classes.elems()[i + 1..].iter() {
                prop_assert!(p.intersection(q).is_empty());
            }
        }
    }
}

#[test]
fn criteria_agree_on_all_relations_over_three_points() {
    let e = HfSet::numeral(3);
    let square = product(&e, &e);
    for mask in 0u64..1 << square.len() {
        let g = square.subset_by_mask(mask);
        assert!(equivalence_check(&e, &g).unwrap().criteria_agree(), "{g:?}");
    }
}
