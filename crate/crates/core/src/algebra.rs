//! The Boolean algebra `B(G)` generated by the subgroups of a finite abelian
//! group, its atoms, sumsets, and the gcd-set sub-algebra.
//!
//! The atom of `a` is the set of generators of the cyclic group `<a>`. Atoms
//! partition the group and `B(G)` is exactly the family of unions of atoms,
//! which is how membership is decided here.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{element_order, Element, GroupSpec, GroupSubset};

/// `{k a : 1 <= k <= ord(a), gcd(k, ord(a)) = 1}`.
pub fn atom_of(g: &GroupSpec, a: &Element) -> Result<GroupSubset> {
    let a = g.element(a.coords().to_vec())?;
    Ok(atom_of_index(g, g.index_of(&a)))
}

pub(crate) fn atom_of_index(g: &GroupSpec, i: usize) -> GroupSubset {
    let ord = element_order(g, &g.decode(i));
    let mut out = GroupSubset::empty(g);
    let mut multiple = i;
    for k in 1..=ord {
        if k.gcd(&ord) == 1 {
            out.insert_index(multiple);
        }
        multiple = g.add_index(multiple, i);
    }
    out
}

/// The atoms of `B(G)` with a per-element lookup.
#[derive(Clone, Debug)]
pub struct AtomPartition {
    group: GroupSpec,
    atoms: Vec<GroupSubset>,
    atom_index: Vec<usize>,
}

/// Summary row for one atom.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AtomInfo {
    pub representative: Element,
    pub order: usize,
    pub size: usize,
    pub elements: GroupSubset,
}

impl AtomPartition {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Atoms ordered by their smallest member; `{0}` comes first.
    pub fn atoms(&self) -> &[GroupSubset] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Position of the atom containing the element with canonical index `i`.
    pub fn atom_position(&self, i: usize) -> usize {
        self.atom_index[i]
    }

    pub fn atom_containing(&self, a: &Element) -> &GroupSubset {
        &self.atoms[self.atom_index[self.group.index_of(a)]]
    }

    /// Whether `s` is a union of whole atoms.
    pub fn is_union_of_atoms(&self, s: &GroupSubset) -> bool {
        if s.group() != &self.group {
            return false;
        }
        let mut seen = vec![false; self.atoms.len()];
        for i in s.indices() {
            let pos = self.atom_index[i];
            if !seen[pos] {
                seen[pos] = true;
                if !self.atoms[pos].is_subset_of(s) {
                    return false;
                }
            }
        }
        true
    }

    /// Union of the atoms at the given positions.
    pub fn union_of(&self, selected: impl IntoIterator<Item = usize>) -> GroupSubset {
        let mut out = GroupSubset::empty(&self.group);
        for pos in selected {
            for i in self.atoms[pos].indices() {
                out.insert_index(i);
            }
        }
        out
    }

    pub fn describe(&self) -> Vec<AtomInfo> {
        self.atoms
            .iter()
            .map(|atom| {
                let first = atom.indices().next().expect("atoms are nonempty");
                let representative = self.group.decode(first);
                AtomInfo {
                    order: element_order(&self.group, &representative),
                    representative,
                    size: atom.len(),
                    elements: atom.clone(),
                }
            })
            .collect()
    }
}

pub fn atom_partition(g: &GroupSpec) -> AtomPartition {
    let n = g.order();
    let mut atom_index = vec![usize::MAX; n];
    let mut atoms = Vec::new();
    for i in 0..n {
        if atom_index[i] != usize::MAX {
            continue;
        }
        let atom = atom_of_index(g, i);
        for j in atom.indices() {
            atom_index[j] = atoms.len();
        }
        atoms.push(atom);
    }
    AtomPartition {
        group: g.clone(),
        atoms,
        atom_index,
    }
}

/// Membership in `B(G)`: every `s` in `S` brings its whole atom along.
pub fn in_boolean_algebra(s: &GroupSubset) -> bool {
    let g = s.group();
    let mut checked = vec![false; g.order()];
    for i in s.indices() {
        if checked[i] {
            continue;
        }
        let atom = atom_of_index(g, i);
        if !atom.is_subset_of(s) {
            return false;
        }
        for j in atom.indices() {
            checked[j] = true;
        }
    }
    true
}

/// `S + T = {s + t}`; the empty set absorbs.
pub fn sumset(s: &GroupSubset, t: &GroupSubset) -> Result<GroupSubset> {
    s.same_group(t)?;
    let g = s.group();
    let mut out = GroupSubset::empty(g);
    let ts: Vec<usize> = t.indices().collect();
    for a in s.indices() {
        for &b in &ts {
            out.insert_index(g.add_index(a, b));
        }
    }
    Ok(out)
}

/// `dS`, the d-fold sumset, with `0S = {0}`.
pub fn iterated_sumset(s: &GroupSubset, d: usize) -> GroupSubset {
    let mut acc = GroupSubset::from_indices(s.group(), [0]).expect("0 is always an element");
    for _ in 0..d {
        acc = sumset(&acc, s).expect("same group");
    }
    acc
}

/// A tuple `(d_1, ..., d_r)` with `d_i | m_i` for the group moduli `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DivisorTuple(Vec<usize>);

impl DivisorTuple {
    pub fn new(g: &GroupSpec, divisors: Vec<usize>) -> Result<Self> {
        let ok = divisors.len() == g.rank()
            && divisors
                .iter()
                .zip(g.moduli())
                .all(|(&d, &m)| d >= 1 && m % d == 0);
        if ok {
            Ok(Self(divisors))
        } else {
            Err(Error::NotDivisor {
                divisors,
                moduli: g.moduli().to_vec(),
            })
        }
    }

    pub fn divisors(&self) -> &[usize] {
        &self.0
    }
}

/// Componentwise `gcd(x_i, m_i)`, with `gcd(0, m) = m`.
pub fn gcd_type(g: &GroupSpec, x: &Element) -> Result<DivisorTuple> {
    let x = g.element(x.coords().to_vec())?;
    Ok(gcd_type_unchecked(g, &x))
}

fn gcd_type_unchecked(g: &GroupSpec, x: &Element) -> DivisorTuple {
    DivisorTuple(
        x.coords()
            .iter()
            .zip(g.moduli())
            .map(|(&xi, &m)| xi.gcd(&m))
            .collect(),
    )
}

/// `S_G(d) = {x : gcd(x, m) = d}`.
pub fn elementary_gcd_set(g: &GroupSpec, d: &DivisorTuple) -> Result<GroupSubset> {
    let d = DivisorTuple::new(g, d.0.clone())?;
    let mut out = GroupSubset::empty(g);
    for (i, x) in g.elements().enumerate() {
        if gcd_type_unchecked(g, &x) == d {
            out.insert_index(i);
        }
    }
    Ok(out)
}

/// All divisor tuples of the moduli, lexicographic with divisors ascending.
pub fn divisor_tuples(g: &GroupSpec) -> Vec<DivisorTuple> {
    let per_factor: Vec<Vec<usize>> = g
        .moduli()
        .iter()
        .map(|&m| (1..=m).filter(|d| m % d == 0).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for divs in &per_factor {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                divs.iter().map(move |&d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(DivisorTuple).collect()
}

/// Every elementary gcd-set paired with its divisor tuple. All of them are
/// nonempty, and together they partition the group.
pub fn elementary_gcd_sets(g: &GroupSpec) -> Vec<(DivisorTuple, GroupSubset)> {
    let mut by_type: HashMap<DivisorTuple, GroupSubset> = HashMap::new();
    for (i, x) in g.elements().enumerate() {
        by_type
            .entry(gcd_type_unchecked(g, &x))
            .or_insert_with(|| GroupSubset::empty(g))
            .insert_index(i);
    }
    divisor_tuples(g)
        .into_iter()
        .filter_map(|d| by_type.remove(&d).map(|s| (d, s)))
        .collect()
}

/// Whether `S` is a union of whole elementary gcd-sets.
pub fn is_gcd_set(s: &GroupSubset) -> bool {
    let g = s.group();
    let types: Vec<DivisorTuple> = g.elements().map(|x| gcd_type_unchecked(g, &x)).collect();
    let mut verdict: HashMap<&DivisorTuple, bool> = HashMap::new();
    for (i, t) in types.iter().enumerate() {
        let member = s.contains_index(i);
        match verdict.get(t) {
            Some(&v) if v != member => return false,
            Some(_) => {}
            None => {
                verdict.insert(t, member);
            }
        }
    }
    true
}
