//! Cross-checks every structural and spectral property of one group against
//! independent oracles.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::corpus::{
    all_atom_unions, distance_sets, negation_orbits, random_atom_union, random_symmetric_subset,
    symmetric_subsets,
};
use super::jacobi::numeric_eigenvalues;
use super::oracles::{
    boolean_closure_oracle, cyclic_subgroups, inclusion_exclusion_f, CLOSURE_ORDER_CAP,
};
use crate::algebra::{
    atom_of, atom_partition, elementary_gcd_set, elementary_gcd_sets, gcd_type, in_boolean_algebra,
    is_gcd_set, sumset, AtomPartition,
};
use crate::graph::{
    bfs_distances, distance_power_shift, distance_profile, dm_spectrum,
    generalized_distance_matrix, profile_shift_sets, CayleyGraph, Distance, DistanceWeights,
};
use crate::group::{cyclic_subgroup, element_order, scale, GroupSpec, GroupSubset};
use crate::spectral::{
    character_matrix, character_sum, character_value, integrality_verdict, recover_subset,
    spectrum, CharacterMatrix, IDENTITY_TOL_PER_ORDER, INTEGRALITY_TOL,
};

/// How much work [`cross_check_suite`] may do.
#[derive(Clone, Debug, Serialize)]
pub struct Budget {
    /// Enumerate every symmetric subset when the group has at most this many negation orbits.
    pub exhaustive_orbits: usize,
    /// Otherwise, this many random symmetric subsets (plus a quarter as many random atom unions).
    pub random_subsets: usize,
    /// Random weight tuples per integral graph for the distance-matrix check.
    pub dm_weights: usize,
    /// Distance profiles up to this length are tested with every distance set.
    pub exhaustive_profile: usize,
    /// Random distance sets for longer profiles.
    pub distance_samples: usize,
    /// Checks that materialize n x n matrices are skipped above this order.
    pub dense_order_limit: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            exhaustive_orbits: 12,
            random_subsets: 200,
            dm_weights: 3,
            exhaustive_profile: 5,
            distance_samples: 16,
            dense_order_limit: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub check: String,
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of a suite run; it passes iff `failures` is empty.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub group: String,
    pub seed: u64,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
}

impl OracleReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

struct Recorder {
    checks_run: usize,
    failures: Vec<Failure>,
}

impl Recorder {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> (String, String, String)) {
        self.checks_run += 1;
        if !ok {
            let (input, expected, actual) = detail();
            self.failures.push(Failure {
                check: name.to_string(),
                input,
                expected,
                actual,
            });
        }
    }
}

/// Runs every property check for `g` within `budget`. Deterministic for a fixed seed.
pub fn cross_check_suite(g: &GroupSpec, budget: &Budget) -> OracleReport {
    let mut rec = Recorder {
        checks_run: 0,
        failures: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let n = g.order();
    let id_tol = IDENTITY_TOL_PER_ORDER * n as f64;
    let atoms = atom_partition(g);
    let dense = n <= budget.dense_order_limit;

    check_atoms(&mut rec, g, &atoms);
    check_sumsets_of_atoms(&mut rec, &atoms);
    check_gcd_sets(&mut rec, g, &atoms);
    check_subgroup_sums(&mut rec, g);

    let matrix = if dense {
        character_matrix(g).ok()
    } else {
        None
    };
    if let Some(h) = &matrix {
        let defect = h.orthogonality_defect();
        rec.check("characters.orthogonality", defect < id_tol, || {
            (g.label(), format!("< {id_tol:e}"), format!("{defect:e}"))
        });
    }

    if n <= CLOSURE_ORDER_CAP && atoms.len() <= 12 {
        let closure = boolean_closure_oracle(g).expect("order under cap");
        let unions: BTreeSet<Vec<bool>> = all_atom_unions(&atoms)
            .into_iter()
            .map(|s| s.mask().to_vec())
            .collect();
        rec.check("oracle.boolean_closure", closure == unions, || {
            (
                g.label(),
                format!("{} atom unions", unions.len()),
                format!("{} closure sets", closure.len()),
            )
        });
    }

    check_inclusion_exclusion(&mut rec, g, &mut rng, id_tol);

    let mut subsets = if negation_orbits(g).len() <= budget.exhaustive_orbits {
        symmetric_subsets(g)
    } else {
        let mut v: Vec<GroupSubset> = (0..budget.random_subsets)
            .map(|_| random_symmetric_subset(g, &mut rng))
            .collect();
        v.extend(
            (0..budget.random_subsets.div_ceil(4)).map(|_| random_atom_union(&atoms, &mut rng)),
        );
        v.push(GroupSubset::empty(g));
        v.push(GroupSubset::full(g));
        v
    };
    subsets.dedup();
    for s in &subsets {
        check_subset(&mut rec, s, &atoms, matrix.as_ref(), budget, &mut rng);
    }

    rec.failures.sort();
    OracleReport {
        group: g.label(),
        seed: budget.seed,
        checks_run: rec.checks_run,
        failures: rec.failures,
    }
}

fn check_atoms(rec: &mut Recorder, g: &GroupSpec, atoms: &AtomPartition) {
    let n = g.order();
    let mut hits = vec![0usize; n];
    for atom in atoms.atoms() {
        for i in atom.indices() {
            hits[i] += 1;
        }
    }
    let total: usize = atoms.atoms().iter().map(GroupSubset::len).sum();
    rec.check(
        "atoms.partition",
        hits.iter().all(|&h| h == 1) && total == n,
        || (g.label(), format!("cover of size {n}"), format!("{hits:?}")),
    );
    let zero_atom = &atoms.atoms()[atoms.atom_position(0)];
    rec.check("atoms.zero_singleton", zero_atom.indices().eq([0]), || {
        (g.label(), "{0}".into(), zero_atom.to_string())
    });
    for atom in atoms.atoms() {
        let orders: BTreeSet<usize> = atom
            .elements()
            .iter()
            .map(|e| element_order(g, e))
            .collect();
        rec.check("atoms.equal_orders", orders.len() == 1, || {
            (atom.to_string(), "one order".into(), format!("{orders:?}"))
        });
    }

    // generators of <a> = <a> minus its proper subgroups <d a>, d | ord(a), d > 1
    for a in g.elements() {
        let ord = element_order(g, &a);
        let mut expected = cyclic_subgroup(g, &a).expect("member");
        for d in (2..=ord).filter(|d| ord.is_multiple_of(*d)) {
            let proper = cyclic_subgroup(g, &scale(g, d, &a).expect("member")).expect("member");
            expected = expected.difference(&proper).expect("same group");
        }
        let got = atom_of(g, &a).expect("member");
        rec.check(
            "atoms.generators_of_cyclic_subgroup",
            got == expected,
            || (a.to_string(), expected.to_string(), got.to_string()),
        );
        rec.check(
            "atoms.matches_partition",
            atoms.atom_containing(&a) == &got,
            || {
                (
                    a.to_string(),
                    got.to_string(),
                    atoms.atom_containing(&a).to_string(),
                )
            },
        );
    }
}

fn check_sumsets_of_atoms(rec: &mut Recorder, atoms: &AtomPartition) {
    for a in atoms.atoms() {
        for b in atoms.atoms() {
            let sum = sumset(a, b).expect("same group");
            rec.check("algebra.sumset_of_atoms", in_boolean_algebra(&sum), || {
                (
                    format!("{a} + {b}"),
                    "union of atoms".into(),
                    sum.to_string(),
                )
            });
        }
    }
}

fn check_gcd_sets(rec: &mut Recorder, g: &GroupSpec, atoms: &AtomPartition) {
    let elementary = elementary_gcd_sets(g);
    let total: usize = elementary.iter().map(|(_, s)| s.len()).sum();
    rec.check("gcd.partition", total == g.order(), || {
        (g.label(), g.order().to_string(), total.to_string())
    });
    for (d, s) in &elementary {
        rec.check("gcd.in_boolean_algebra", atoms.is_union_of_atoms(s), || {
            (format!("{d:?}"), "union of atoms".into(), s.to_string())
        });
    }
    if g.is_cyclic_decomposition() {
        let from_gcd: BTreeSet<Vec<bool>> =
            elementary.iter().map(|(_, s)| s.mask().to_vec()).collect();
        let from_atoms: BTreeSet<Vec<bool>> =
            atoms.atoms().iter().map(|s| s.mask().to_vec()).collect();
        rec.check("gcd.cyclic_equals_atoms", from_gcd == from_atoms, || {
            (
                g.label(),
                format!("{} atoms", from_atoms.len()),
                format!("{} gcd-sets", from_gcd.len()),
            )
        });
    }
    if g.rank() >= 2 {
        let factors: Vec<GroupSpec> = g
            .moduli()
            .iter()
            .map(|&m| GroupSpec::cyclic(m).expect("modulus >= 1"))
            .collect();
        for x in g.elements() {
            let d = gcd_type(g, &x).expect("member");
            let whole = elementary_gcd_set(g, &d).expect("divisor tuple of g");
            let per_factor: Vec<GroupSubset> = factors
                .iter()
                .zip(x.coords())
                .map(|(f, &xi)| {
                    let xe = f.element(vec![xi]).expect("in range");
                    elementary_gcd_set(f, &gcd_type(f, &xe).expect("member")).expect("divides")
                })
                .collect();
            let product = GroupSubset::from_indices(
                g,
                g.elements().enumerate().filter_map(|(i, y)| {
                    y.coords()
                        .iter()
                        .zip(&per_factor)
                        .all(|(&yi, set)| set.contains_index(yi))
                        .then_some(i)
                }),
            )
            .expect("in range");
            rec.check("gcd.product_structure", whole == product, || {
                (x.to_string(), product.to_string(), whole.to_string())
            });
        }
    }
    for (da, a) in &elementary {
        for (db, b) in &elementary {
            let sum = sumset(a, b).expect("same group");
            rec.check("gcd.sumset_closure", is_gcd_set(&sum), || {
                (
                    format!("{da:?} + {db:?}"),
                    "gcd-set".into(),
                    sum.to_string(),
                )
            });
        }
    }
}

fn check_subgroup_sums(rec: &mut Recorder, g: &GroupSpec) {
    let tol = IDENTITY_TOL_PER_ORDER * g.order() as f64;
    for h in cyclic_subgroups(g) {
        for alpha in g.elements() {
            let sum = character_sum(g, &alpha, &h).expect("same group");
            let trivial_on_h = h.elements().iter().all(|x| {
                (character_value(g, &alpha, x).expect("member") - Complex64::new(1.0, 0.0)).norm()
                    < 1e-9
            });
            let want = if trivial_on_h { h.len() as f64 } else { 0.0 };
            rec.check(
                "characters.subgroup_sum",
                (sum - Complex64::new(want, 0.0)).norm() < tol,
                || {
                    (
                        format!("alpha={alpha} H={h}"),
                        want.to_string(),
                        sum.to_string(),
                    )
                },
            );
        }
    }
}

fn check_inclusion_exclusion<R: Rng>(rec: &mut Recorder, g: &GroupSpec, rng: &mut R, tol: f64) {
    let subgroups = cyclic_subgroups(g);
    for _ in 0..24 {
        let k = rng.gen_range(1..=3usize.min(subgroups.len()));
        let family: Vec<GroupSubset> = (0..k)
            .map(|_| subgroups[rng.gen_range(0..subgroups.len())].clone())
            .collect();
        let union = family.iter().fold(GroupSubset::empty(g), |acc, u| {
            acc.union(u).expect("same group")
        });
        let alpha = g.element_at(rng.gen_range(0..g.order())).expect("in range");
        let via_ie = inclusion_exclusion_f(g, &family, &alpha).expect("same group");
        let direct = character_sum(g, &alpha, &union).expect("same group");
        rec.check(
            "characters.inclusion_exclusion",
            (via_ie - direct).norm() < tol,
            || {
                (
                    format!("alpha={alpha} family of {k}"),
                    direct.to_string(),
                    via_ie.to_string(),
                )
            },
        );
    }
}

/// Independent all-pairs BFS over the materialized adjacency matrix.
fn bfs_from_every_vertex(adj: &[Vec<u8>]) -> Vec<Vec<Distance>> {
    let n = adj.len();
    (0..n)
        .map(|src| {
            let mut dist = vec![Distance::Infinite; n];
            dist[src] = Distance::Finite(0);
            let mut queue = std::collections::VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                let Distance::Finite(du) = dist[u] else {
                    unreachable!()
                };
                for v in 0..n {
                    if adj[u][v] == 1 && dist[v] == Distance::Infinite {
                        dist[v] = Distance::Finite(du + 1);
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

fn check_subset<R: Rng>(
    rec: &mut Recorder,
    s: &GroupSubset,
    atoms: &AtomPartition,
    matrix: Option<&CharacterMatrix>,
    budget: &Budget,
    rng: &mut R,
) {
    let g = s.group();
    let n = g.order();
    let id_tol = IDENTITY_TOL_PER_ORDER * n as f64;
    let label = || format!("{g} S={s}");
    let spec = spectrum(s).expect("corpus subsets are symmetric");
    let values = spec.values();

    let verdict = integrality_verdict(s, INTEGRALITY_TOL);
    rec.check("integrality.equivalence", verdict.agrees(), || {
        (
            label(),
            format!("structural={}", verdict.structural),
            format!("spectral={}", verdict.spectral),
        )
    });
    if verdict.spectral {
        let closed = s
            .elements()
            .iter()
            .all(|a| atom_of(g, a).expect("member").is_subset_of(s));
        rec.check("integrality.atoms_contained", closed, || {
            (
                label(),
                "every atom of S inside S".into(),
                "missing atom".into(),
            )
        });
    }
    if verdict.structural {
        let ok = atoms
            .atoms()
            .iter()
            .all(|a| a.is_subset_of(s) || a.is_disjoint(s));
        rec.check("atoms.dichotomy", ok, || {
            (
                label(),
                "atoms inside or disjoint".into(),
                "atom split".into(),
            )
        });
        let worst = values
            .iter()
            .map(|z| ((z.re - z.re.round()).abs()).max(z.im.abs()))
            .fold(0.0, f64::max);
        rec.check("integrality.integer_character_sums", worst < id_tol, || {
            (label(), format!("< {id_tol:e}"), format!("{worst:e}"))
        });
    }

    let recovered = recover_subset(&spec);
    rec.check(
        "spectrum.recovery_roundtrip",
        recovered.as_ref() == Ok(s),
        || (label(), s.to_string(), format!("{recovered:?}")),
    );

    if n > budget.dense_order_limit {
        return;
    }
    let graph = CayleyGraph::new(s.clone()).expect("symmetric");
    let adj = graph.adjacency();
    let adj_f: Vec<Vec<f64>> = adj
        .iter()
        .map(|r| r.iter().map(|&x| f64::from(x)).collect())
        .collect();

    if let Some(h) = matrix {
        let mut worst = 0.0f64;
        for (row, &lambda) in h.rows().iter().zip(&values) {
            for (i, a_row) in adj_f.iter().enumerate() {
                let av: Complex64 = a_row.iter().zip(row).map(|(&a, v)| v * a).sum();
                worst = worst.max((av - lambda * row[i]).norm());
            }
        }
        rec.check("spectrum.character_eigenvector", worst < id_tol, || {
            (label(), format!("< {id_tol:e}"), format!("{worst:e}"))
        });
    }

    let numeric = numeric_eigenvalues(&adj_f).expect("adjacency is symmetric");
    let reals = spec.sorted_real_parts();
    let gap = numeric
        .iter()
        .zip(&reals)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    rec.check("oracle.numeric_eigenvalues", gap < INTEGRALITY_TOL, || {
        (label(), format!("{reals:?}"), format!("{numeric:?}"))
    });

    let oracle = bfs_from_every_vertex(&adj);
    let fast = bfs_distances(&graph);
    rec.check("graph.bfs_all_sources", oracle == fast, || {
        (
            label(),
            "per-source BFS".into(),
            "translated BFS differs".into(),
        )
    });
    let mut row0 = fast[0].clone();
    row0.sort();
    let transitive = fast.iter().all(|row| {
        let mut r = row.clone();
        r.sort();
        r == row0
    });
    rec.check("graph.vertex_transitivity", transitive, || {
        (label(), "rows permute row 0".into(), "row mismatch".into())
    });

    let shifts = profile_shift_sets(&graph);
    let mut cover = vec![0usize; n];
    for (_, set) in &shifts {
        for i in set.indices() {
            cover[i] += 1;
        }
    }
    rec.check(
        "graph.shift_partition",
        cover.iter().all(|&c| c == 1),
        || {
            (
                label(),
                "each element in one S^(d)".into(),
                format!("{cover:?}"),
            )
        },
    );

    let profile = distance_profile(&graph);
    let structural = verdict.structural;
    let gcd = is_gcd_set(s);
    for d in distance_sets(
        &profile,
        budget.exhaustive_profile,
        budget.distance_samples,
        rng,
    ) {
        let shift = distance_power_shift(&graph, &d);
        let ok = (0..n).all(|i| {
            (0..n).all(|j| shift.contains_index(g.sub_index(j, i)) == d.contains(&oracle[i][j]))
        });
        rec.check("distance_power.adjacency", ok, || {
            (
                format!("{} D={d:?}", label()),
                "BFS membership".into(),
                shift.to_string(),
            )
        });
        if structural {
            rec.check(
                "distance_power.integral",
                in_boolean_algebra(&shift),
                || {
                    (
                        format!("{} D={d:?}", label()),
                        "union of atoms".into(),
                        shift.to_string(),
                    )
                },
            );
        }
        if gcd {
            rec.check("distance_power.gcd_closure", is_gcd_set(&shift), || {
                (
                    format!("{} D={d:?}", label()),
                    "gcd-set".into(),
                    shift.to_string(),
                )
            });
        }
    }

    if structural {
        for _ in 0..budget.dm_weights {
            let k: Vec<i64> = (0..profile.len()).map(|_| rng.gen_range(-5..=5)).collect();
            let weights = DistanceWeights::new(k.clone());
            let dm_spec = dm_spectrum(&graph, &weights).expect("aligned weights");
            rec.check(
                "distance_matrix.integral",
                dm_spec.is_integral(INTEGRALITY_TOL),
                || {
                    (
                        format!("{} k={k:?}", label()),
                        "integers".into(),
                        format!("{:?}", dm_spec.values()),
                    )
                },
            );
            let dm = generalized_distance_matrix(&graph, &weights).expect("aligned weights");
            let dm_f: Vec<Vec<f64>> = dm
                .iter()
                .map(|r| r.iter().map(|&x| x as f64).collect())
                .collect();
            let numeric = numeric_eigenvalues(&dm_f).expect("distance matrices are symmetric");
            let reals = dm_spec.sorted_real_parts();
            let gap = numeric
                .iter()
                .zip(&reals)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            rec.check(
                "distance_matrix.numeric_agreement",
                gap < INTEGRALITY_TOL,
                || {
                    (
                        format!("{} k={k:?}", label()),
                        format!("{reals:?}"),
                        format!("{numeric:?}"),
                    )
                },
            );
        }
    }
}
