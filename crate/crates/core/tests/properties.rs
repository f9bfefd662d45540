//! Invariants checked against brute-force oracles written independently of
//! the library code paths.

use std::collections::BTreeSet;

use cayley_spectra::algebra::{
    atom_of, atom_partition, in_boolean_algebra, iterated_sumset, sumset,
};
use cayley_spectra::graph::{bfs_distances, distance_power_shift, CayleyGraph, Distance};
use cayley_spectra::group::{
    add, cyclic_subgroup, enumerate_elements, neg, order_of, subgroup_generated, Element,
    GroupSpec, GroupSubset,
};
use cayley_spectra::spectral::{
    integrality_verdict, recover_subset, spectrum, Spectrum, INTEGRALITY_TOL,
};
use cayley_spectra::verify::{cross_check_suite, numeric_eigenvalues, Budget};
use proptest::prelude::*;

fn group_strategy(max_order: usize) -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(1usize..=8, 1..=3)
        .prop_filter("order cap", move |m| {
            m.iter().product::<usize>() <= max_order
        })
        .prop_map(|m| GroupSpec::new(m).unwrap())
}

fn group_and_mask(max_order: usize) -> impl Strategy<Value = (GroupSpec, Vec<bool>)> {
    group_strategy(max_order).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(any::<bool>(), n))
    })
}

fn symmetrize(g: &GroupSpec, mask: &[bool]) -> GroupSubset {
    let s = GroupSubset::from_mask(g, mask.to_vec()).unwrap();
    s.union(&s.negated()).unwrap()
}

/// Smallest m >= 1 with m a = 0, by repeated addition.
fn order_by_iteration(g: &GroupSpec, a: &Element) -> usize {
    let mut cur = a.clone();
    let mut m = 1;
    while !cur.is_zero() {
        cur = add(g, &cur, a).unwrap();
        m += 1;
    }
    m
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generators of <a>: multiples k a with gcd(k, ord) = 1, by repeated addition.
fn atom_by_enumeration(g: &GroupSpec, a: &Element) -> BTreeSet<Element> {
    let ord = order_by_iteration(g, a);
    let mut out = BTreeSet::new();
    let mut cur = a.clone();
    for k in 1..=ord {
        if gcd(k, ord) == 1 {
            out.insert(cur.clone());
        }
        cur = add(g, &cur, a).unwrap();
    }
    out
}

/// All sums s + t by pair enumeration.
fn sumset_by_pairs(s: &GroupSubset, t: &GroupSubset) -> BTreeSet<Element> {
    let g = s.group();
    let mut out = BTreeSet::new();
    for a in s.elements() {
        for b in t.elements() {
            out.insert(add(g, &a, &b).unwrap());
        }
    }
    out
}

fn as_set(s: &GroupSubset) -> BTreeSet<Element> {
    s.elements().into_iter().collect()
}

#[test]
fn derived_examples_match_brute_force() {
    let z6: GroupSpec = "6".parse().unwrap();
    let g23: GroupSpec = "2x3".parse().unwrap();
    assert_eq!(order_by_iteration(&z6, &z6.element(vec![2]).unwrap()), 3);
    assert_eq!(
        order_by_iteration(&g23, &g23.element(vec![1, 1]).unwrap()),
        6
    );

    let atom: Vec<usize> = atom_by_enumeration(&z6, &z6.element(vec![1]).unwrap())
        .iter()
        .map(|e| e.coords()[0])
        .collect();
    assert_eq!(atom, vec![1, 5]);

    let s = GroupSubset::parse(&z6, "1,5").unwrap();
    let two_s: Vec<usize> = sumset_by_pairs(&s, &s)
        .iter()
        .map(|e| e.coords()[0])
        .collect();
    assert_eq!(two_s, vec![0, 2, 4]);
    let three_s: Vec<usize> = sumset_by_pairs(&iterated_sumset(&s, 2), &s)
        .iter()
        .map(|e| e.coords()[0])
        .collect();
    assert_eq!(three_s, vec![1, 3, 5]);

    // 4-cycle and 5-cycle spectra by the numeric eigensolver
    let z4: GroupSpec = "4".parse().unwrap();
    let c4 = CayleyGraph::new(GroupSubset::parse(&z4, "1,3").unwrap()).unwrap();
    let eig = numeric_eigenvalues(&to_f64(&c4.adjacency())).unwrap();
    for (got, want) in eig.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let z5: GroupSpec = "5".parse().unwrap();
    let c5 = CayleyGraph::new(GroupSubset::parse(&z5, "1,4").unwrap()).unwrap();
    let eig = numeric_eigenvalues(&to_f64(&c5.adjacency())).unwrap();
    assert!(eig
        .iter()
        .any(|v| (v - 0.618_033_988_749_894_8).abs() < 1e-9));
}

fn to_f64(m: &[Vec<u8>]) -> Vec<Vec<f64>> {
    m.iter()
        .map(|r| r.iter().map(|&x| f64::from(x)).collect())
        .collect()
}

#[test]
fn lagrange_and_cyclic_subgroups_exhaustive() {
    for n in 1..=24 {
        for g in cayley_spectra::verify::decompositions(n) {
            let first = enumerate_elements(&g);
            assert_eq!(first, enumerate_elements(&g));
            assert_eq!(first.len(), n);
            assert!(first[0].is_zero());
            for a in &first {
                let ord = order_of(&g, a).unwrap();
                assert_eq!(ord, order_by_iteration(&g, a));
                assert_eq!(n % ord, 0);
                let h = cyclic_subgroup(&g, a).unwrap();
                assert_eq!(h.len(), ord);
                let single = GroupSubset::from_elements(&g, [a]).unwrap();
                assert_eq!(h, subgroup_generated(&single));
                assert_eq!(neg(&g, &neg(&g, a).unwrap()).unwrap(), *a);
            }
        }
    }
}

#[test]
fn atoms_match_enumeration_exhaustive() {
    for n in 1..=64 {
        for g in cayley_spectra::verify::decompositions(n) {
            let part = atom_partition(&g);
            let total: usize = part.atoms().iter().map(GroupSubset::len).sum();
            assert_eq!(total, n);
            if n <= 24 {
                for a in g.elements() {
                    assert_eq!(
                        as_set(&atom_of(&g, &a).unwrap()),
                        atom_by_enumeration(&g, &a)
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn addition_is_commutative_and_associative(
        (g, picks) in group_strategy(64).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), prop::collection::vec(0..n, 3))
        })
    ) {
        let [a, b, c] = [0, 1, 2].map(|k| g.element_at(picks[k]).unwrap());
        prop_assert_eq!(add(&g, &a, &b).unwrap(), add(&g, &b, &a).unwrap());
        let left = add(&g, &add(&g, &a, &b).unwrap(), &c).unwrap();
        let right = add(&g, &a, &add(&g, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sumset_matches_pair_enumeration((g, masks) in group_strategy(36).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n)))
    })) {
        let s = GroupSubset::from_mask(&g, masks.0).unwrap();
        let t = GroupSubset::from_mask(&g, masks.1).unwrap();
        prop_assert_eq!(as_set(&sumset(&s, &t).unwrap()), sumset_by_pairs(&s, &t));
    }

    #[test]
    fn integrality_equivalence((g, mask) in group_and_mask(48)) {
        let s = symmetrize(&g, &mask);
        let verdict = integrality_verdict(&s, INTEGRALITY_TOL);
        prop_assert!(verdict.agrees(), "{} S={}: {:?}", g, s, verdict);
    }

    #[test]
    fn atom_unions_are_integral((g, mask) in group_strategy(48).prop_flat_map(|g| {
        let k = atom_partition(&g).len();
        (Just(g), prop::collection::vec(any::<bool>(), k))
    })) {
        let part = atom_partition(&g);
        let s = part.union_of((0..part.len()).filter(|&i| mask[i]));
        prop_assert!(in_boolean_algebra(&s));
        prop_assert!(s.is_symmetric());
        prop_assert!(spectrum(&s).unwrap().is_integral(INTEGRALITY_TOL));
    }

    #[test]
    fn recovery_inverts_spectrum((g, mask) in group_and_mask(64)) {
        let s = symmetrize(&g, &mask);
        let spec = spectrum(&s).unwrap();
        prop_assert_eq!(recover_subset(&spec).unwrap(), s.clone());
        let back = Spectrum::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn spectrum_matches_eigensolver((g, mask) in group_and_mask(24)) {
        let s = symmetrize(&g, &mask);
        let graph = CayleyGraph::new(s.clone()).unwrap();
        let numeric = numeric_eigenvalues(&to_f64(&graph.adjacency())).unwrap();
        let reals = spectrum(&s).unwrap().sorted_real_parts();
        for (a, b) in numeric.iter().zip(&reals) {
            prop_assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn distance_shift_agrees_with_bfs((g, mask, dbits) in group_and_mask(40).prop_flat_map(|(g, m)| {
        (Just(g), Just(m), any::<u8>())
    })) {
        let s = symmetrize(&g, &mask);
        let graph = CayleyGraph::new(s).unwrap();
        let dist = bfs_distances(&graph);
        let candidates = [
            Distance::Finite(0), Distance::Finite(1), Distance::Finite(2), Distance::Finite(3),
            Distance::Finite(4), Distance::Finite(5), Distance::Finite(9), Distance::Infinite,
        ];
        let d: BTreeSet<Distance> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| dbits >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        let shift = distance_power_shift(&graph, &d);
        for (j, &dj) in dist[0].iter().enumerate() {
            prop_assert_eq!(shift.contains_index(j), d.contains(&dj));
        }
    }
}

#[test]
fn suite_passes_on_assorted_groups() {
    for label in ["1", "7", "2x4", "3x3", "12", "2x2x3", "4x4", "18"] {
        let g: GroupSpec = label.parse().unwrap();
        let report = cross_check_suite(&g, &Budget::default());
        assert!(report.passes(), "{label}: {:?}", report.failures);
    }
}

#[test]
fn suite_catches_five_cycle_correctly() {
    let z5: GroupSpec = "5".parse().unwrap();
    let s = GroupSubset::parse(&z5, "1,4").unwrap();
    let v = integrality_verdict(&s, INTEGRALITY_TOL);
    assert!(!v.structural && !v.spectral);
    assert!(cross_check_suite(&z5, &Budget::default()).passes());
}
