//! Constructions and verification machinery for 2-geodesic transitive graphs
//! of prime-power order.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`perm`]: permutations, orbits and Schreier–Sims stabilizer chains,
//! * [`grp`]: small finite groups by multiplication table, including the
//!   extraspecial group `E(p^3)` of exponent `p`, and their automorphisms,
//! * [`graph`]: bit-row simple graphs with distance machinery,
//! * [`autsearch`]: automorphism groups and canonical forms by partition
//!   refinement and backtracking,
//! * [`families`]: every named graph family of the classification,
//! * [`analyze`]: transitivity reports and catalog identification.

#![no_std]

extern crate alloc;

pub mod analyze;
pub mod autsearch;
pub mod families;
pub mod graph;
pub mod grp;
pub mod perm;

pub use analyze::{transitivity_report, TransitivityReport};
pub use autsearch::{CanonicalKey, SearchOptions};
pub use families::FamilySpec;
pub use graph::Graph;
pub use grp::{ConnectionSet, FiniteGroup};
pub use perm::{Perm, PermGroup};
