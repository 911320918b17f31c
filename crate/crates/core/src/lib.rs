//! Order complexes of the reduced partition and subset lattices, their
//! quotients by free permutation actions, and exact homology.
//!
//! The pipeline is:
//!
//! 1. build a poset ([`poset::build_reduced_partition_lattice`],
//!    [`poset::build_reduced_subset_lattice`]),
//! 2. take its order complex ([`complex::order_complex`]),
//! 3. act on it by a permutation group and form the quotient by a free
//!    action ([`action::quotient_complex`]),
//! 4. compute homology over `Z`, `Q`, or `F_q` ([`homology::homology`]),
//! 5. compare against closed-form predictions ([`verify`]).
//!
//! See the `examples/` directory for one runnable program per stage.

pub mod action;
pub mod cache;
pub mod cli;
pub mod complex;
pub mod error;
pub mod group;
pub mod homology;
pub mod json;
pub mod poset;
pub mod verify;

pub use error::{Error, Result};
