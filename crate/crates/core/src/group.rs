//! Finite abelian groups written as direct sums of cyclic groups.
//!
//! A group `Z_{n_1} + ... + Z_{n_k}` is described by its ordered moduli. Elements
//! are residue tuples and are enumerated lexicographically with the rightmost
//! coordinate running fastest, so element `0` always has index `0`. Every dense
//! structure in this crate (subsets, matrices, spectra) is laid out in that order.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Dense structures (n x n matrices) are refused above this order by default.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// A finite abelian group `Z_{n_1} + ... + Z_{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<usize>,
    order: usize,
}

impl GroupSpec {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::GroupSyntax(String::new()));
        }
        if moduli.contains(&0) {
            return Err(Error::ZeroModulus);
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or(Error::OrderOverflow)?;
        Ok(Self { moduli, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic_decomposition(&self) -> bool {
        self.moduli.len() == 1
    }

    /// Least common multiple of the moduli; every element order divides it.
    pub fn exponent(&self) -> usize {
        self.moduli.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    /// Fails with [`Error::OrderCap`] when the order exceeds `cap`.
    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.order > cap {
            Err(Error::OrderCap {
                order: self.order,
                cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    /// Builds an element, validating coordinate count and ranges.
    pub fn element(&self, coords: Vec<usize>) -> Result<Element> {
        self.check_coords(&coords)?;
        Ok(Element(coords))
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::CoordinateCount {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        Ok(Element(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| x.rem_euclid(m as i64) as usize)
                .collect(),
        ))
    }

    /// The unit element `e_i` (coordinate 1 in position `i`).
    pub fn unit(&self, i: usize) -> Element {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1 % self.moduli[i];
        Element(coords)
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(Error::CoordinateCount {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        for (&value, &modulus) in coords.iter().zip(&self.moduli) {
            if value >= modulus {
                return Err(Error::CoordinateRange { value, modulus });
            }
        }
        Ok(())
    }

    /// Position of `a` in the canonical enumeration.
    pub fn index_of(&self, a: &Element) -> usize {
        a.0.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &m)| acc * m + x)
    }

    /// Element at position `index` of the canonical enumeration.
    pub fn element_at(&self, index: usize) -> Result<Element> {
        if index >= self.order {
            return Err(Error::IndexRange {
                index,
                order: self.order,
            });
        }
        Ok(self.decode(index))
    }

    pub(crate) fn decode(&self, mut index: usize) -> Element {
        let mut coords = vec![0; self.rank()];
        for (slot, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = index % m;
            index /= m;
        }
        Element(coords)
    }

    /// All elements in canonical order, identity first.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.decode(i))
    }

    /// Index-level addition, for dense inner loops.
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        let (mut i, mut j) = (i, j);
        let mut out = 0;
        let mut stride = 1;
        for &m in self.moduli.iter().rev() {
            let digit = (i % m + j % m) % m;
            out += digit * stride;
            stride *= m;
            i /= m;
            j /= m;
        }
        out
    }

    pub fn neg_index(&self, i: usize) -> usize {
        let mut i = i;
        let mut out = 0;
        let mut stride = 1;
        for &m in self.moduli.iter().rev() {
            let digit = (m - i % m) % m;
            out += digit * stride;
            stride *= m;
            i /= m;
        }
        out
    }

    /// Index of `j - i`.
    pub fn sub_index(&self, j: usize, i: usize) -> usize {
        self.add_index(j, self.neg_index(i))
    }

    /// Text form: moduli joined by `x`, e.g. `2x4x3`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let moduli = trimmed
            .split(['x', 'X'])
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::GroupSyntax(s.to_string()));
                }
                tok.parse::<usize>()
                    .map_err(|_| Error::GroupSyntax(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }
}

/// A residue tuple, one coordinate per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<usize>);

impl Element {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

fn check_member(g: &GroupSpec, a: &Element) -> Result<()> {
    g.check_coords(&a.0)
}

/// Lists every element of `g` once, in canonical order.
pub fn enumerate_elements(g: &GroupSpec) -> Vec<Element> {
    g.elements().collect()
}

/// Coordinatewise sum.
pub fn add(g: &GroupSpec, a: &Element, b: &Element) -> Result<Element> {
    check_member(g, a)?;
    check_member(g, b)?;
    Ok(Element(
        a.0.iter()
            .zip(&b.0)
            .zip(&g.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect(),
    ))
}

pub fn neg(g: &GroupSpec, a: &Element) -> Result<Element> {
    check_member(g, a)?;
    Ok(Element(
        a.0.iter()
            .zip(&g.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect(),
    ))
}

/// `k * a` for a non-negative multiplier.
pub fn scale(g: &GroupSpec, k: usize, a: &Element) -> Result<Element> {
    check_member(g, a)?;
    Ok(Element(
        a.0.iter()
            .zip(&g.moduli)
            .map(|(&x, &m)| ((k % m) * x) % m)
            .collect(),
    ))
}

/// Order of `a`: `lcm_i(n_i / gcd(x_i, n_i))`.
pub fn order_of(g: &GroupSpec, a: &Element) -> Result<usize> {
    check_member(g, a)?;
    Ok(element_order(g, a))
}

pub(crate) fn element_order(g: &GroupSpec, a: &Element) -> usize {
    a.0.iter()
        .zip(&g.moduli)
        .fold(1, |acc, (&x, &m)| acc.lcm(&(m / x.gcd(&m))))
}

/// The cyclic subgroup `<a>`.
pub fn cyclic_subgroup(g: &GroupSpec, a: &Element) -> Result<GroupSubset> {
    check_member(g, a)?;
    let step = g.index_of(a);
    let mut out = GroupSubset::empty(g);
    let mut cur = 0;
    loop {
        out.insert_index(cur);
        cur = g.add_index(cur, step);
        if cur == 0 {
            break;
        }
    }
    Ok(out)
}

/// Smallest subgroup containing `s`; the empty set generates `{0}`.
pub fn subgroup_generated(s: &GroupSubset) -> GroupSubset {
    let g = s.group();
    let gens: Vec<usize> = s.indices().flat_map(|i| [i, g.neg_index(i)]).collect();
    let mut out = GroupSubset::empty(g);
    out.insert_index(0);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &step in &gens {
            let y = g.add_index(x, step);
            if !out.contains_index(y) {
                out.insert_index(y);
                stack.push(y);
            }
        }
    }
    out
}

/// A subset of a group, stored as a membership mask over the canonical order.
///
/// The mask doubles as the characteristic vector used by the spectral code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: GroupSpec,
    members: Vec<bool>,
}

impl GroupSubset {
    pub fn empty(g: &GroupSpec) -> Self {
        Self {
            group: g.clone(),
            members: vec![false; g.order()],
        }
    }

    pub fn full(g: &GroupSpec) -> Self {
        Self {
            group: g.clone(),
            members: vec![true; g.order()],
        }
    }

    pub fn from_mask(g: &GroupSpec, members: Vec<bool>) -> Result<Self> {
        if members.len() != g.order() {
            return Err(Error::IndexRange {
                index: members.len(),
                order: g.order(),
            });
        }
        Ok(Self {
            group: g.clone(),
            members,
        })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(g: &GroupSpec, indices: I) -> Result<Self> {
        let mut out = Self::empty(g);
        for i in indices {
            if i >= g.order() {
                return Err(Error::IndexRange {
                    index: i,
                    order: g.order(),
                });
            }
            out.members[i] = true;
        }
        Ok(out)
    }

    pub fn from_elements<'a, I>(g: &GroupSpec, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut out = Self::empty(g);
        for a in elements {
            check_member(g, a)?;
            out.members[g.index_of(a)] = true;
        }
        Ok(out)
    }

    /// Parses the command-line element list syntax.
    ///
    /// Accepted forms: the empty string (the empty set), comma-separated
    /// canonical indices (`1,5`), or `;`-separated coordinate tuples
    /// (`(1,2);(0,1)`).
    pub fn parse(g: &GroupSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty(g));
        }
        let bad = || Error::SubsetSyntax(text.to_string());
        if text.contains('(') {
            let mut elems = Vec::new();
            for tok in text.split(';') {
                let tok = tok.trim();
                let inner = tok
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let coords = inner
                    .split(',')
                    .map(|c| c.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                elems.push(g.element(coords)?);
            }
            Self::from_elements(g, &elems)
        } else {
            let indices = text
                .split(',')
                .map(|c| c.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Self::from_indices(g, indices)
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn contains(&self, a: &Element) -> bool {
        check_member(&self.group, a).is_ok() && self.members[self.group.index_of(a)]
    }

    pub fn insert_index(&mut self, i: usize) {
        self.members[i] = true;
    }

    pub fn remove_index(&mut self, i: usize) {
        self.members[i] = false;
    }

    /// Member indices in ascending canonical order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn elements(&self) -> Vec<Element> {
        self.indices().map(|i| self.group.decode(i)).collect()
    }

    /// `-S`.
    pub fn negated(&self) -> Self {
        let mut out = Self::empty(&self.group);
        for i in self.indices() {
            out.members[self.group.neg_index(i)] = true;
        }
        out
    }

    /// Whether `S = -S`.
    pub fn is_symmetric(&self) -> bool {
        self.indices()
            .all(|i| self.members[self.group.neg_index(i)])
    }

    pub fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.label(),
                right: other.group.label(),
            })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self {
            group: self.group.clone(),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        Self {
            group: self.group.clone(),
            members: self.members.iter().map(|&b| !b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.group == other.group
            && self
                .members
                .iter()
                .zip(&other.members)
                .all(|(&a, &b)| !a || b)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.group == other.group
            && self
                .members
                .iter()
                .zip(&other.members)
                .all(|(&a, &b)| !(a && b))
    }

    /// Parses the JSON form produced by serialization: a list of coordinate arrays.
    pub fn from_json(g: &GroupSpec, json: &str) -> Result<Self> {
        let lists: Vec<Vec<usize>> =
            serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))?;
        let elems = lists
            .into_iter()
            .map(|c| g.element(c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(g, &elems)
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Serializes as the sorted list of member coordinate tuples.
impl Serialize for GroupSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.indices() {
            seq.serialize_element(&self.group.decode(i))?;
        }
        seq.end()
    }
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
    fn parse_rejects_zero_and_garbage() {
        assert_eq!("0".parse::<GroupSpec>(), Err(Error::ZeroModulus));
        assert!("2x0".parse::<GroupSpec>().is_err());
        assert!("2xa".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert!("-3".parse::<GroupSpec>().is_err());
        assert!("2xx3".parse::<GroupSpec>().is_err());
        assert_eq!(g("2x4x3").moduli(), &[2, 4, 3]);
        assert_eq!(g("2x4x3").order(), 24);
        assert_eq!(g("2x4x3").to_string(), "2x4x3");
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_elements(&g("1")), vec![Element(vec![0])]);
        let klein: Vec<Vec<usize>> = enumerate_elements(&g("2x2"))
            .into_iter()
            .map(|e| e.0)
            .collect();
        assert_eq!(klein, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let z6: Vec<usize> = enumerate_elements(&g("6")).iter().map(|e| e.0[0]).collect();
        assert_eq!(z6, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn arithmetic_examples() {
        let z6 = g("6");
        let a = z6.element(vec![4]).unwrap();
        let b = z6.element(vec![5]).unwrap();
        assert_eq!(add(&z6, &a, &b).unwrap().coords(), &[3]);
        assert!(neg(&z6, &z6.identity()).unwrap().is_zero());
        let g23 = g("2x3");
        let x = g23.element(vec![1, 2]).unwrap();
        assert_eq!(add(&g23, &x, &x).unwrap().coords(), &[0, 1]);
        let wrong = Element(vec![1]);
        assert!(matches!(
            add(&g23, &x, &wrong),
            Err(Error::CoordinateCount { .. })
        ));
    }

    #[test]
    fn order_examples() {
        let z6 = g("6");
        assert_eq!(order_of(&z6, &z6.identity()).unwrap(), 1);
        assert_eq!(order_of(&z6, &z6.element(vec![2]).unwrap()).unwrap(), 3);
        let g23 = g("2x3");
        assert_eq!(
            order_of(&g23, &g23.element(vec![1, 1]).unwrap()).unwrap(),
            6
        );
    }

    #[test]
    fn cyclic_subgroup_examples() {
        let z6 = g("6");
        assert_eq!(
            cyclic_subgroup(&z6, &z6.identity()).unwrap(),
            idx(&z6, &[0])
        );
        assert_eq!(
            cyclic_subgroup(&z6, &z6.element(vec![2]).unwrap()).unwrap(),
            idx(&z6, &[0, 2, 4])
        );
        let klein = g("2x2");
        assert_eq!(
            cyclic_subgroup(&klein, &klein.element(vec![1, 1]).unwrap()).unwrap(),
            idx(&klein, &[0, 3])
        );
    }

    #[test]
    fn generated_subgroup_examples() {
        let z6 = g("6");
        assert_eq!(subgroup_generated(&GroupSubset::empty(&z6)), idx(&z6, &[0]));
        assert_eq!(subgroup_generated(&idx(&z6, &[3])), idx(&z6, &[0, 3]));
        assert_eq!(
            subgroup_generated(&idx(&z6, &[2, 3])),
            GroupSubset::full(&z6)
        );
    }

    #[test]
    fn subset_text_forms() {
        let g23 = g("2x3");
        let a = GroupSubset::parse(&g23, "5").unwrap();
        let b = GroupSubset::parse(&g23, "(1,2)").unwrap();
        assert_eq!(a, b);
        let c = GroupSubset::parse(&g23, "(1,2);(0,1)").unwrap();
        assert_eq!(c, idx(&g23, &[1, 5]));
        assert!(GroupSubset::parse(&g23, "").unwrap().is_empty());
        assert!(GroupSubset::parse(&g23, "6").is_err());
        assert!(GroupSubset::parse(&g23, "(2,0)").is_err());
        assert!(GroupSubset::parse(&g23, "1,,2").is_err());
    }

    #[test]
    fn subset_json_is_sorted_coordinate_lists() {
        let g23 = g("2x3");
        let s = idx(&g23, &[5, 1]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[[0,1],[1,2]]");
        assert_eq!(GroupSubset::from_json(&g23, &json).unwrap(), s);
    }

    #[test]
    fn symmetric_predicate() {
        let z6 = g("6");
        assert!(idx(&z6, &[1, 5]).is_symmetric());
        assert!(!idx(&z6, &[1]).is_symmetric());
        assert!(GroupSubset::empty(&z6).is_symmetric());
    }

    #[test]
    fn index_arithmetic_matches_element_arithmetic() {
        let grp = g("2x4x3");
        for i in 0..grp.order() {
            let a = grp.decode(i);
            assert_eq!(grp.index_of(&a), i);
            assert_eq!(grp.neg_index(i), grp.index_of(&neg(&grp, &a).unwrap()));
            for j in 0..grp.order() {
                let b = grp.decode(j);
                assert_eq!(
                    grp.add_index(i, j),
                    grp.index_of(&add(&grp, &a, &b).unwrap())
                );
            }
        }
    }
}
