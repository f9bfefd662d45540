//! Cayley graphs, their distances, distance powers and generalized distance
//! matrices.
//!
//! Distances ignore loops, so `d(x, x) = 0` even when `0` is in the shift set.
//! Because Cayley graphs are vertex-transitive, one BFS from `0` determines all
//! distances: `d(x, y) = d(0, y - x)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::algebra::sumset;
use crate::error::{Error, Result};
use crate::group::{subgroup_generated, GroupSpec, GroupSubset};
use crate::spectral::{CharacterTable, Spectrum};

/// A graph distance; `Infinite` sorts above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Distance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "inf" | "Inf" | "INF" | "infinity" | "∞" => Ok(Distance::Infinite),
            _ => t
                .parse::<usize>()
                .map(Distance::Finite)
                .map_err(|_| Error::DistanceSyntax(s.to_string())),
        }
    }
}

/// Finite distances serialize as numbers, `Infinite` as the string `"inf"`.
impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => serializer.serialize_u64(*d as u64),
            Distance::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Parses a comma-separated distance set such as `1,2,inf`. The empty string is `{}`.
pub fn parse_distance_set(text: &str) -> Result<BTreeSet<Distance>> {
    if text.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    text.split(',').map(str::parse).collect()
}

/// `Cay(G, S)` for a symmetric shift set `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGraph {
    shift: GroupSubset,
}

impl CayleyGraph {
    pub fn new(shift: GroupSubset) -> Result<Self> {
        if !shift.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { shift })
    }

    pub fn group(&self) -> &GroupSpec {
        self.shift.group()
    }

    pub fn shift(&self) -> &GroupSubset {
        &self.shift
    }

    pub fn order(&self) -> usize {
        self.group().order()
    }

    /// `a[i][j] = 1` iff `v_j - v_i` is in the shift set.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let g = self.group();
        let n = g.order();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| u8::from(self.shift.contains_index(g.sub_index(j, i))))
                    .collect()
            })
            .collect()
    }

    /// Distances from `0` to every vertex, in canonical order.
    pub fn distances_from_zero(&self) -> Vec<Distance> {
        let g = self.group();
        let steps: Vec<usize> = self.shift.indices().filter(|&i| i != 0).collect();
        let mut dist = vec![Distance::Infinite; g.order()];
        dist[0] = Distance::Finite(0);
        let mut frontier = vec![0];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for &s in &steps {
                    let y = g.add_index(x, s);
                    if dist[y] == Distance::Infinite {
                        dist[y] = Distance::Finite(level);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}

/// All-pairs distances, derived from one BFS by translation.
pub fn bfs_distances(graph: &CayleyGraph) -> Vec<Vec<Distance>> {
    let g = graph.group();
    let row0 = graph.distances_from_zero();
    let n = g.order();
    (0..n)
        .map(|i| (0..n).map(|j| row0[g.sub_index(j, i)]).collect())
        .collect()
}

/// Sorted distinct distances `0 = d_0 < d_1 < ... < d_r`, possibly ending in `inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DistanceProfile(Vec<Distance>);

impl DistanceProfile {
    pub fn distances(&self) -> &[Distance] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        !self.0.contains(&Distance::Infinite)
    }

    pub fn position(&self, d: Distance) -> Option<usize> {
        self.0.iter().position(|&x| x == d)
    }
}

pub fn distance_profile(graph: &CayleyGraph) -> DistanceProfile {
    let set: BTreeSet<Distance> = graph.distances_from_zero().into_iter().collect();
    DistanceProfile(set.into_iter().collect())
}

/// Shift sets `S^(d)` for `d = 0, 1, 2, ...` up to `max_d`, computed purely
/// from sumsets: `S^(d) = dS \ (0S u ... u (d-1)S)`.
///
/// Stops early once the union of the `kS` stops growing, since every later
/// shift set is then empty.
fn finite_shift_sets(s: &GroupSubset, max_d: usize) -> Vec<GroupSubset> {
    let g = s.group();
    let zero = GroupSubset::from_indices(g, [0]).expect("0 is an element");
    let mut shifts = vec![zero.clone()];
    let mut reached = zero.clone();
    let mut multiple = zero;
    for _ in 1..=max_d {
        multiple = sumset(&multiple, s).expect("same group");
        let fresh = multiple.difference(&reached).expect("same group");
        if fresh.is_empty() {
            break;
        }
        reached = reached.union(&fresh).expect("same group");
        shifts.push(fresh);
    }
    shifts
}

/// `S^(D)`: the shift set of the distance power `G^D`.
///
/// `S^(0) = {0}`, `S^(inf)` is the complement of `<S>` (empty when connected),
/// and distances not attained contribute nothing.
pub fn distance_power_shift(graph: &CayleyGraph, d: &BTreeSet<Distance>) -> GroupSubset {
    let g = graph.group();
    let s = graph.shift();
    let mut out = GroupSubset::empty(g);
    let max_finite = d
        .iter()
        .filter_map(|x| match x {
            Distance::Finite(k) => Some(*k),
            Distance::Infinite => None,
        })
        .max();
    if let Some(max_d) = max_finite {
        let shifts = finite_shift_sets(s, max_d);
        for dist in d {
            if let Distance::Finite(k) = dist {
                if let Some(layer) = shifts.get(*k) {
                    out = out.union(layer).expect("same group");
                }
            }
        }
    }
    if d.contains(&Distance::Infinite) {
        out = out
            .union(&subgroup_generated(s).complement())
            .expect("same group");
    }
    out
}

/// The distance power `G^D = Cay(G, S^(D))`.
pub fn distance_power(graph: &CayleyGraph, d: &BTreeSet<Distance>) -> CayleyGraph {
    CayleyGraph::new(distance_power_shift(graph, d)).expect("distance-power shifts are symmetric")
}

/// Shift sets `S^(d_t)` for every distance in the profile. They partition the group.
pub fn profile_shift_sets(graph: &CayleyGraph) -> Vec<(Distance, GroupSubset)> {
    distance_profile(graph)
        .distances()
        .iter()
        .map(|&d| (d, distance_power_shift(graph, &BTreeSet::from([d]))))
        .collect()
}

/// Integer weights `(k_0, ..., k_r)`, one per entry of a distance profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DistanceWeights(Vec<i64>);

impl DistanceWeights {
    pub fn new(weights: Vec<i64>) -> Self {
        Self(weights)
    }

    /// `(0, 1, ..., r)`: the ordinary distance matrix of a connected graph.
    pub fn ordinary(profile: &DistanceProfile) -> Self {
        Self((0..profile.len() as i64).collect())
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// Parses a comma-separated integer list.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::SubsetSyntax(text.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    fn check(&self, profile: &DistanceProfile) -> Result<()> {
        if self.0.len() != profile.len() {
            return Err(Error::WeightLength {
                expected: profile.len(),
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

/// `DM(k, G)`: entry `(i, j)` is `k_t` where `d(v_i, v_j) = d_t`.
pub fn generalized_distance_matrix(
    graph: &CayleyGraph,
    weights: &DistanceWeights,
) -> Result<Vec<Vec<i64>>> {
    let profile = distance_profile(graph);
    weights.check(&profile)?;
    let g = graph.group();
    let row0: Vec<i64> = graph
        .distances_from_zero()
        .into_iter()
        .map(|d| weights.0[profile.position(d).expect("attained")])
        .collect();
    let n = g.order();
    Ok((0..n)
        .map(|i| (0..n).map(|j| row0[g.sub_index(j, i)]).collect())
        .collect())
}

/// Spectrum of `DM(k, G)`: at character `alpha`, `sum_t k_t psi_alpha(S^(d_t))`.
pub fn dm_spectrum(graph: &CayleyGraph, weights: &DistanceWeights) -> Result<Spectrum> {
    let profile = distance_profile(graph);
    weights.check(&profile)?;
    let g = graph.group();
    let table = CharacterTable::new(g);
    let mut values = vec![Complex64::new(0.0, 0.0); g.order()];
    for ((_, shift), &k) in profile_shift_sets(graph).iter().zip(&weights.0) {
        if k == 0 {
            continue;
        }
        for (slot, sum) in values.iter_mut().zip(table.sums(shift)) {
            *slot += sum * k as f64;
        }
    }
    Spectrum::from_values(g, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Distance::{Finite, Infinite};

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn idx(group: &GroupSpec, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(group, xs.iter().copied()).unwrap()
    }

    fn cay(group: &str, xs: &[usize]) -> CayleyGraph {
        CayleyGraph::new(idx(&g(group), xs)).unwrap()
    }

    fn dset(xs: &[Distance]) -> BTreeSet<Distance> {
        xs.iter().copied().collect()
    }

    #[test]
    fn rejects_asymmetric_shift() {
        assert_eq!(
            CayleyGraph::new(idx(&g("6"), &[1])),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn adjacency_has_loops_for_zero() {
        let a = cay("4", &[0, 1, 3]).adjacency();
        assert_eq!(a[0], vec![1, 1, 0, 1]);
        assert_eq!(a[2], vec![0, 1, 1, 1]);
    }

    #[test]
    fn bfs_examples() {
        let empty = bfs_distances(&cay("4", &[]));
        for (i, row) in empty.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                assert_eq!(d, if i == j { Finite(0) } else { Infinite });
            }
        }
        assert_eq!(bfs_distances(&cay("6", &[1, 5]))[0][3], Finite(3));
        assert_eq!(bfs_distances(&cay("6", &[3]))[0][1], Infinite);
        // loops never shorten paths
        assert_eq!(bfs_distances(&cay("6", &[0, 1, 5]))[2][2], Finite(0));
    }

    #[test]
    fn profile_examples() {
        let p = distance_profile(&cay("6", &[1, 5]));
        assert_eq!(p.distances(), &[Finite(0), Finite(1), Finite(2), Finite(3)]);
        let p = distance_profile(&cay("6", &[3]));
        assert_eq!(p.distances(), &[Finite(0), Finite(1), Infinite]);
        assert!(!p.is_connected());
        let p = distance_profile(&cay("6", &[1, 2, 3, 4, 5]));
        assert_eq!(p.distances(), &[Finite(0), Finite(1)]);
    }

    #[test]
    fn shift_examples() {
        let c6 = cay("6", &[1, 5]);
        let z6 = g("6");
        assert_eq!(
            distance_power_shift(&c6, &dset(&[Finite(1)])),
            idx(&z6, &[1, 5])
        );
        assert_eq!(
            distance_power_shift(&c6, &dset(&[Finite(2)])),
            idx(&z6, &[2, 4])
        );
        assert_eq!(
            distance_power_shift(&c6, &dset(&[Finite(0)])),
            idx(&z6, &[0])
        );
        assert_eq!(
            distance_power_shift(&cay("6", &[3]), &dset(&[Infinite])),
            idx(&z6, &[1, 2, 4, 5])
        );
        assert!(distance_power_shift(&c6, &dset(&[Infinite])).is_empty());
        assert!(distance_power_shift(&c6, &dset(&[Finite(7)])).is_empty());
        // loop graph: S^(1) drops the loop
        let looped = cay("6", &[0, 1, 5]);
        assert_eq!(
            distance_power_shift(&looped, &dset(&[Finite(1)])),
            idx(&z6, &[1, 5])
        );
    }

    #[test]
    fn distance_power_examples() {
        let c6 = cay("6", &[1, 5]);
        assert!(distance_power(&c6, &BTreeSet::new()).shift().is_empty());
        assert_eq!(
            distance_power(&c6, &dset(&[Finite(0)])).shift(),
            &idx(&g("6"), &[0])
        );
        assert_eq!(
            distance_power(&c6, &dset(&[Finite(1), Finite(2)])).shift(),
            &idx(&g("6"), &[1, 2, 4, 5])
        );
    }

    #[test]
    fn distance_matrix_examples() {
        let c4 = cay("4", &[1, 3]);
        let dm = generalized_distance_matrix(&c4, &DistanceWeights::new(vec![0, 1, 2])).unwrap();
        assert_eq!(dm[0], vec![0, 1, 2, 1]);
        assert_eq!(dm[1], vec![1, 0, 1, 2]);

        let id = generalized_distance_matrix(&c4, &DistanceWeights::new(vec![1, 0, 0])).unwrap();
        for (i, row) in id.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, i64::from(i == j));
            }
        }

        let halves = cay("6", &[3]);
        let dm =
            generalized_distance_matrix(&halves, &DistanceWeights::new(vec![0, 1, 5])).unwrap();
        assert_eq!(dm[0], vec![0, 5, 5, 1, 5, 5]);
        assert_eq!(dm[4], vec![5, 1, 5, 5, 0, 5]);

        assert_eq!(
            generalized_distance_matrix(&c4, &DistanceWeights::new(vec![0, 1])),
            Err(Error::WeightLength {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn dm_spectrum_examples() {
        let c4 = cay("4", &[1, 3]);
        let zero = dm_spectrum(&c4, &DistanceWeights::new(vec![0, 0, 0])).unwrap();
        assert!(zero.values().iter().all(|v| v.norm() == 0.0));

        let spec = dm_spectrum(&c4, &DistanceWeights::new(vec![0, 1, 2])).unwrap();
        assert_eq!(spec.rounded(1e-9), Some(vec![4, -2, 0, -2]));

        let c6 = cay("6", &[1, 5]);
        let spec = dm_spectrum(&c6, &DistanceWeights::new(vec![0, 1, 2, 3])).unwrap();
        assert!(spec.is_integral(1e-9));
    }

    #[test]
    fn distance_text() {
        assert_eq!(
            parse_distance_set("2, inf,0").unwrap(),
            dset(&[Finite(0), Finite(2), Infinite])
        );
        assert!(parse_distance_set("").unwrap().is_empty());
        assert!(parse_distance_set("x").is_err());
        assert_eq!(
            serde_json::to_string(&vec![Finite(2), Infinite]).unwrap(),
            r#"[2,"inf"]"#
        );
    }
}
