//! Randomized checks of the structural invariants.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use ringcomm::abelian::{
    invariant_factors_from_orders, is_isomorphic, isomorphisms, quotient, subgroup_generated,
    AbelianGroup,
};
use ringcomm::bounds::{
    check_chain, check_lemma_index, check_quotient_factorization, check_sandwich,
};
use ringcomm::corpus::builtin_family;
use ringcomm::isoclin::{
    find_isoclinism, verify_invariance, verify_witness, RingPair, SearchOptions,
};
use ringcomm::prob::{pr_centralizer_sum, pr_checked, pr_coset_form, pr_pair_count};
use ringcomm::ring::{
    center, centralizer, commutator_set, commutator_subgroup, element_commutator_subgroup,
    is_ideal, is_subring, relative_center, ring_from_structure, subring_closure, FiniteRing,
    Subring,
};

fn rings() -> &'static [FiniteRing] {
    static RINGS: OnceLock<Vec<FiniteRing>> = OnceLock::new();
    RINGS.get_or_init(|| {
        builtin_family(32)
            .iter()
            .map(|b| b.build().unwrap())
            .collect()
    })
}

fn small_rings() -> Vec<FiniteRing> {
    rings().iter().filter(|r| r.order() <= 9).cloned().collect()
}

/// A ring from the builtin family with up to three raw element picks.
fn ring_and_picks() -> impl Strategy<Value = (FiniteRing, Vec<usize>)> {
    (0..rings().len(), prop::collection::vec(any::<usize>(), 3)).prop_map(|(i, raw)| {
        let r = rings()[i].clone();
        let picks = raw.iter().map(|x| x % r.order()).collect();
        (r, picks)
    })
}

fn orders() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=8, 0..=3)
        .prop_filter("at most 256 elements", |v| v.iter().product::<u64>() <= 256)
}

fn closure(r: &FiniteRing, gens: &[usize]) -> Subring {
    subring_closure(r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrange_and_quotient_order(orders in orders(), raw in prop::collection::vec(any::<usize>(), 0..3)) {
        let g = AbelianGroup::new(orders).unwrap();
        let gens: Vec<usize> = raw.iter().map(|x| x % g.order()).collect();
        let h = subgroup_generated(&g, &gens).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        let q = quotient(&g, &h).unwrap();
        prop_assert_eq!(q.order() * h.order(), g.order());
        prop_assert_eq!(q.structure().cyclic_orders().iter().product::<u64>() as usize, g.order() / h.order());
    }

    #[test]
    fn invariant_factors_ignore_order_of_factors(orders in orders().prop_shuffle(), perm in any::<prop::sample::Index>()) {
        let g = AbelianGroup::new(orders.clone()).unwrap();
        let mut rotated = orders.clone();
        if !rotated.is_empty() {
            let k = perm.index(rotated.len());
            rotated.rotate_left(k);
        }
        let h = AbelianGroup::new(rotated).unwrap();
        prop_assert_eq!(g.invariant_factors(), h.invariant_factors());
        let by_orders = invariant_factors_from_orders(g.elements().map(|x| g.element_order(x)));
        prop_assert_eq!(g.invariant_factors(), by_orders);
    }

    #[test]
    fn isomorphism_is_an_equivalence(a in orders(), b in orders(), c in orders()) {
        let [a, b, c] = [a, b, c].map(|o| AbelianGroup::new(o).unwrap());
        prop_assert!(is_isomorphic(&a, &a));
        prop_assert_eq!(is_isomorphic(&a, &b), is_isomorphic(&b, &a));
        if is_isomorphic(&a, &b) && is_isomorphic(&b, &c) {
            prop_assert!(is_isomorphic(&a, &c));
        }
    }

    #[test]
    fn yielded_isomorphisms_are_additive_bijections(orders in orders().prop_filter("small", |v| v.iter().product::<u64>() <= 64)) {
        let g = AbelianGroup::new(orders).unwrap();
        let h = g.canonical();
        for iso in isomorphisms(&g, &h, 50).take(8) {
            let map = iso.unwrap().materialize();
            let image: BTreeSet<usize> = map.iter().copied().collect();
            prop_assert_eq!(image.len(), h.order());
            for x in g.elements() {
                for y in g.elements() {
                    prop_assert_eq!(map[g.add(x, y)], h.add(map[x], map[y]));
                }
            }
        }
    }

    #[test]
    fn ring_axioms_hold((r, p) in ring_and_picks()) {
        let (x, y, z) = (p[0], p[1], p[2]);
        prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
        prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
        prop_assert_eq!(r.mul(r.add(x, y), z), r.add(r.mul(x, z), r.mul(y, z)));
    }

    #[test]
    fn builtins_revalidate_from_their_constants(i in 0..rings().len()) {
        let r = &rings()[i];
        let again = ring_from_structure(r.additive().cyclic_orders().to_vec(), r.structure_constants().to_vec());
        prop_assert!(again.is_ok());
    }

    #[test]
    fn centralizers_and_commutators((r, p) in ring_and_picks()) {
        let s = closure(&r, &p[..1]);
        let c = centralizer(&s, p[1]).unwrap();
        prop_assert!(is_subring(&r, c.elements()));
        let z = center(&r);
        let expected: Vec<usize> = s.elements().iter().copied().filter(|&x| z.contains(x)).collect();
        let rel = relative_center(&s);
        prop_assert_eq!(rel.elements(), expected.as_slice());
        let g = element_commutator_subgroup(&r, p[2]).unwrap();
        for &a in g.elements() {
            prop_assert!(g.contains(r.neg(a)));
            for &b in g.elements() {
                prop_assert!(g.contains(r.add(a, b)));
            }
        }
        let k = commutator_set(&s);
        let gamma = commutator_subgroup(&s);
        prop_assert!(k.iter().all(|&x| gamma.contains(x)));
        let generated = subgroup_generated(r.additive(), &k).unwrap();
        prop_assert_eq!(generated.elements(), gamma.elements());
    }

    #[test]
    fn three_routes_agree((r, p) in ring_and_picks()) {
        let s = closure(&r, &p[..2]);
        let a = pr_pair_count(&s);
        prop_assert_eq!(a, pr_centralizer_sum(&s).unwrap());
        prop_assert_eq!(a, pr_coset_form(&s));
        prop_assert_eq!(a.is_one(), relative_center(&s).order() == s.order());
    }

    #[test]
    fn pr_survives_relabeling((r, p) in ring_and_picks(), shift in 0usize..3) {
        // Rotating the basis gives an isomorphic ring on permuted coordinates.
        let k = r.rank();
        prop_assume!(k > 0);
        let perm: Vec<usize> = (0..k).map(|i| (i + shift) % k).collect();
        let orders: Vec<u64> = perm.iter().map(|&i| r.additive().cyclic_orders()[i]).collect();
        let constants = r.structure_constants();
        let table: Vec<Vec<Vec<u64>>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| perm.iter().map(|&l| constants[i][j][l]).collect()).collect())
            .collect();
        let relabeled = ring_from_structure(orders, table).unwrap();
        let map = |x: usize| {
            let c = r.additive().coords(x);
            let permuted: Vec<u64> = perm.iter().map(|&i| c[i]).collect();
            relabeled.additive().index_of_coords(&permuted).unwrap()
        };
        let s = closure(&r, &p[..1]);
        let image: Vec<usize> = s.elements().iter().map(|&x| map(x)).collect();
        let t = closure(&relabeled, &image);
        prop_assert_eq!(t.order(), s.order());
        prop_assert_eq!(pr_checked(&s).unwrap(), pr_checked(&t).unwrap());
    }

    #[test]
    fn bounds_hold_on_random_inputs((r, p) in ring_and_picks()) {
        let s1 = closure(&r, &p[..1]);
        let s2 = closure(&r, &p[..2]);
        prop_assert!(check_lemma_index(&s2, p[2]).unwrap().passed());
        prop_assert!(check_sandwich(&s2).unwrap().passed());
        prop_assert!(check_chain(&s1, &s2).unwrap().passed());
        let n = closure(&r, &[p[2]]);
        if is_ideal(&r, n.elements()) {
            prop_assert!(check_quotient_factorization(&r.whole(), &n).unwrap().passed());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn isoclinism_search_is_sound_and_symmetric(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), gi in any::<usize>(), gj in any::<usize>()) {
        let pool = small_rings();
        let (r1, r2) = (&pool[i.index(pool.len())], &pool[j.index(pool.len())]);
        let a = RingPair::new(closure(r1, &[gi % r1.order()])).unwrap();
        let b = RingPair::new(closure(r2, &[gj % r2.order()])).unwrap();
        let opts = SearchOptions::default();
        let ab = find_isoclinism(&a, &b, opts).unwrap();
        let ba = find_isoclinism(&b, &a, opts).unwrap();
        prop_assert_eq!(ab.witness().is_some(), ba.witness().is_some());
        let unfiltered = find_isoclinism(&a, &b, SearchOptions { prefilter: false, ..opts }).unwrap();
        prop_assert_eq!(ab.witness().is_some(), unfiltered.witness().is_some());
        if let Some(w) = ab.witness() {
            prop_assert!(verify_witness(&a, &b, w).is_ok());
            prop_assert!(verify_invariance(&a, &b, w).unwrap().passed());
        }
        prop_assert!(find_isoclinism(&a, &a, opts).unwrap().witness().is_some());
    }
}
