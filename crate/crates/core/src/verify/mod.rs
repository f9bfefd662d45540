//! Independent oracles: a Jacobi eigensolver, the Boolean closure of the
//! cyclic subgroups, inclusion-exclusion character sums, and a suite that
//! runs every property of the other modules against them.

mod corpus;
mod jacobi;
mod oracles;
mod suite;

pub use corpus::{
    all_atom_unions, decompositions, distance_sets, negation_orbits, random_atom_union,
    random_symmetric_subset, symmetric_subsets,
};
pub use jacobi::numeric_eigenvalues;
pub use oracles::{
    boolean_closure_oracle, cyclic_subgroups, inclusion_exclusion_f, CLOSURE_ORDER_CAP,
};
pub use suite::{cross_check_suite, Budget, Failure, OracleReport};
