//! Test corpora: group decompositions, symmetric subsets and distance sets.

use std::collections::BTreeSet;

use rand::Rng;

use crate::algebra::AtomPartition;
use crate::graph::{Distance, DistanceProfile};
use crate::group::{GroupSpec, GroupSubset};

/// Orbits `{x, -x}` of negation, as canonical indices. Symmetric subsets are
/// exactly the unions of these orbits.
pub fn negation_orbits(g: &GroupSpec) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for i in 0..g.order() {
        if seen[i] {
            continue;
        }
        let j = g.neg_index(i);
        seen[i] = true;
        seen[j] = true;
        out.push(if i == j { vec![i] } else { vec![i, j] });
    }
    out
}

fn union_of_orbits(
    g: &GroupSpec,
    orbits: &[Vec<usize>],
    pick: impl Fn(usize) -> bool,
) -> GroupSubset {
    let members = orbits
        .iter()
        .enumerate()
        .filter(|(k, _)| pick(*k))
        .flat_map(|(_, o)| o.iter().copied());
    GroupSubset::from_indices(g, members).expect("orbit indices are in range")
}

/// Every symmetric subset of `g`. There are `2^orbits` of them.
pub fn symmetric_subsets(g: &GroupSpec) -> Vec<GroupSubset> {
    let orbits = negation_orbits(g);
    assert!(orbits.len() < 31, "too many symmetric subsets to enumerate");
    (0u32..(1 << orbits.len()))
        .map(|bits| union_of_orbits(g, &orbits, |k| bits >> k & 1 == 1))
        .collect()
}

/// A uniformly random symmetric subset.
pub fn random_symmetric_subset<R: Rng>(g: &GroupSpec, rng: &mut R) -> GroupSubset {
    let orbits = negation_orbits(g);
    let picks: Vec<bool> = (0..orbits.len()).map(|_| rng.gen()).collect();
    union_of_orbits(g, &orbits, |k| picks[k])
}

/// A uniformly random union of atoms.
pub fn random_atom_union<R: Rng>(atoms: &AtomPartition, rng: &mut R) -> GroupSubset {
    atoms.union_of((0..atoms.len()).filter(|_| rng.gen::<bool>()))
}

/// Every union of atoms (all of `B(G)`).
pub fn all_atom_unions(atoms: &AtomPartition) -> Vec<GroupSubset> {
    let k = atoms.len();
    assert!(k < 31, "too many atom unions to enumerate");
    (0u32..(1 << k))
        .map(|bits| atoms.union_of((0..k).filter(|i| bits >> i & 1 == 1)))
        .collect()
}

/// Decompositions of `n` as non-decreasing tuples of moduli `>= 2`
/// (just `[1]` for the trivial group).
pub fn decompositions(n: usize) -> Vec<GroupSpec> {
    fn rec(rest: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for f in min..=rest {
            if rest.is_multiple_of(f) {
                prefix.push(f);
                rec(rest / f, f, prefix, out);
                prefix.pop();
            }
        }
    }
    if n == 1 {
        return vec![GroupSpec::cyclic(1).expect("1 is a valid modulus")];
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|m| GroupSpec::new(m).expect("factors are positive"))
        .collect()
}

/// Distance sets to test against a profile: every subset when the profile
/// has at most `exhaustive_len` entries, otherwise all singletons plus
/// `samples` random subsets. One unattained distance is always included.
pub fn distance_sets<R: Rng>(
    profile: &DistanceProfile,
    exhaustive_len: usize,
    samples: usize,
    rng: &mut R,
) -> Vec<BTreeSet<Distance>> {
    let dists = profile.distances();
    let mut out: Vec<BTreeSet<Distance>> = Vec::new();
    if dists.len() <= exhaustive_len {
        for bits in 0u32..(1 << dists.len()) {
            out.push(
                (0..dists.len())
                    .filter(|i| bits >> i & 1 == 1)
                    .map(|i| dists[i])
                    .collect(),
            );
        }
    } else {
        out.push(BTreeSet::new());
        out.extend(dists.iter().map(|&d| BTreeSet::from([d])));
        for _ in 0..samples {
            out.push(
                dists
                    .iter()
                    .copied()
                    .filter(|_| rng.gen::<bool>())
                    .collect(),
            );
        }
    }
    let beyond = dists
        .iter()
        .filter_map(|d| match d {
            Distance::Finite(k) => Some(*k),
            Distance::Infinite => None,
        })
        .max()
        .unwrap_or(0)
        + 1;
    out.push(BTreeSet::from([Distance::Finite(beyond)]));
    out
}
