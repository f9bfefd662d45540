//! Brute-force set-family oracles.

use std::collections::{BTreeSet, HashSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{cyclic_subgroup, GroupSpec, GroupSubset};
use crate::spectral::character_sum;

/// Largest group accepted by [`boolean_closure_oracle`].
pub const CLOSURE_ORDER_CAP: usize = 24;

fn to_bits(s: &GroupSubset) -> u64 {
    s.indices().fold(0, |acc, i| acc | (1 << i))
}

fn from_bits(g: &GroupSpec, bits: u64) -> GroupSubset {
    GroupSubset::from_indices(g, (0..g.order()).filter(|i| bits >> i & 1 == 1))
        .expect("bits stay below the order")
}

/// The cyclic subgroups of `g`, without repeats, in order of first generator.
pub fn cyclic_subgroups(g: &GroupSpec) -> Vec<GroupSubset> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in g.elements() {
        let h = cyclic_subgroup(g, &a).expect("element of g");
        if seen.insert(h.mask().to_vec()) {
            out.push(h);
        }
    }
    out
}

/// `B(G)` as the fixed point of closing all cyclic subgroups under union,
/// intersection and complement.
///
/// The work is quadratic in the size of the family, which is `2^atoms`.
pub fn boolean_closure_oracle(g: &GroupSpec) -> Result<BTreeSet<Vec<bool>>> {
    g.check_cap(CLOSURE_ORDER_CAP)?;
    let full: u64 = (1u64 << g.order()) - 1;
    let mut family: Vec<u64> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut queue: Vec<u64> = Vec::new();
    for h in cyclic_subgroups(g) {
        let bits = to_bits(&h);
        if seen.insert(bits) {
            queue.push(bits);
        }
    }
    while let Some(x) = queue.pop() {
        let mut fresh = vec![full & !x];
        for &y in &family {
            fresh.push(x | y);
            fresh.push(x & y);
        }
        family.push(x);
        for z in fresh {
            if seen.insert(z) {
                queue.push(z);
            }
        }
    }
    Ok(family
        .into_iter()
        .map(|bits| from_bits(g, bits).mask().to_vec())
        .collect())
}

/// `f(U_1 u ... u U_k)` by inclusion and exclusion, with `f` the character
/// `psi_alpha` and every intersection formed setwise.
pub fn inclusion_exclusion_f(
    g: &GroupSpec,
    subgroups: &[GroupSubset],
    alpha: &crate::group::Element,
) -> Result<Complex64> {
    for u in subgroups {
        if u.group() != g {
            return Err(Error::GroupMismatch {
                left: g.label(),
                right: u.group().label(),
            });
        }
    }
    let k = subgroups.len();
    let mut total = Complex64::new(0.0, 0.0);
    for pick in 1u32..(1u32 << k) {
        let mut inter = GroupSubset::full(g);
        for (i, u) in subgroups.iter().enumerate() {
            if pick >> i & 1 == 1 {
                inter = inter.intersection(u)?;
            }
        }
        let sign = if pick.count_ones() % 2 == 1 {
            1.0
        } else {
            -1.0
        };
        total += character_sum(g, alpha, &inter)? * sign;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn idx(group: &GroupSpec, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(group, xs.iter().copied()).unwrap()
    }

    #[test]
    fn closure_sizes() {
        let z1 = boolean_closure_oracle(&g("1")).unwrap();
        assert_eq!(z1, BTreeSet::from([vec![false], vec![true]]));
        let z5 = g("5");
        let fam = boolean_closure_oracle(&z5).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(fam.contains(idx(&z5, &[1, 2, 3, 4]).mask()));
        assert!(fam.contains(idx(&z5, &[0]).mask()));
        assert_eq!(boolean_closure_oracle(&g("6")).unwrap().len(), 16);
        assert!(matches!(
            boolean_closure_oracle(&g("25")),
            Err(Error::OrderCap { .. })
        ));
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let z6 = g("6");
        let u1 = idx(&z6, &[0, 2, 4]);
        let u2 = idx(&z6, &[0, 3]);
        let v = inclusion_exclusion_f(&z6, std::slice::from_ref(&u1), &z6.identity()).unwrap();
        assert!((v.re - 3.0).abs() < 1e-12);
        let v = inclusion_exclusion_f(&z6, &[u1.clone(), u2.clone()], &z6.identity()).unwrap();
        assert!((v.re - 4.0).abs() < 1e-12 && v.im.abs() < 1e-12);
        let one = z6.element(vec![1]).unwrap();
        let v = inclusion_exclusion_f(&z6, &[u1, u2], &one).unwrap();
        assert!((v.re + 1.0).abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn cyclic_subgroup_catalog() {
        assert_eq!(cyclic_subgroups(&g("6")).len(), 4);
        assert_eq!(cyclic_subgroups(&g("2x2")).len(), 4);
        assert_eq!(cyclic_subgroups(&g("2x2x2")).len(), 8);
    }
}
