//! Exact counts of automorphism orbits of pairs in finite modules over a
//! discrete valuation ring, as polynomials in the residue field size `q`.
//!
//! For a partition `λ`, `M_λ = ⊕ (R/P^λ_i)^m_i`. The crate computes
//!
//! * the orbits of single elements, parametrized by order ideals of the
//!   fundamental poset ([`poset`]),
//! * the number of orbits of pairs `n_λ(q)` and the size distribution of
//!   those orbits ([`orbit`]),
//! * the same counts restricted to `M*_I × M*_L` ([`refined`]),
//! * the number `R_{n,1}(q)` of isomorphism classes of triples `(A, x, y)`
//!   up to simultaneous change of basis ([`quiver`]),
//!
//! and checks all of them against brute-force orbit enumeration on explicit
//! finite abelian p-groups ([`oracle`]).

pub mod cli;
pub mod error;
pub mod oracle;
pub mod orbit;
pub mod poly;
pub mod poset;
pub mod quiver;
pub mod refined;
pub mod store;

pub use error::{Error, Result};
pub use orbit::{
    alpha, canonical_split, n_lambda, n_lambda_direct, orbit_census, orbit_size, per_ideal_total,
    submodule_size, x_count, CanonicalSplit, Census,
};
pub use poly::QPoly;
pub use poset::{enumerate_ideals, partitions_of, IdealLattice, OrderIdeal, Partition, Point};
pub use store::ResultStore;
