//! Integral Cayley graphs over finite abelian groups.
//!
//! A Cayley graph `Cay(G, S)` over an abelian group is integral exactly when
//! its shift set `S` is a union of atoms of the Boolean algebra generated by
//! the subgroups of `G`. This crate decides that structurally, computes the
//! spectrum exactly from group characters, and builds distance powers,
//! generalized distance matrices and gcd-graphs on top.
//!
//! ```
//! use cayley_spectra::{algebra, group::{GroupSpec, GroupSubset}, spectral};
//!
//! let z6: GroupSpec = "6".parse().unwrap();
//! let cycle = GroupSubset::parse(&z6, "1,5").unwrap();
//! assert!(algebra::in_boolean_algebra(&cycle));
//! assert!(spectral::is_integral_spectrum(&cycle, spectral::INTEGRALITY_TOL));
//! ```

pub mod algebra;
pub mod error;
pub mod graph;
pub mod group;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
