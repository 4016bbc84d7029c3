//! Exact-arithmetic toolkit for rank-3 lattices invariant under finite
//! orthogonal groups and for regular polyhedra in the 3-torus obtained as
//! quotients of the regular polyhedra of Euclidean 3-space.
//!
//! Everything geometric is computed over the field Q(sqrt3); no floating
//! point participates in any decision. The crate provides:
//!
//! - [`surd`], [`geom`], [`isometry`]: the exact scalar field, vectors,
//!   matrices and affine isometries with exact classification;
//! - [`lattice`], [`classify`]: lattices of rank 1..3, the named families
//!   (cubic, bcc, fcc, triangular...), invariance tests and the constructive
//!   classification of lattices preserved by the octahedral group and the
//!   pyramidal reflection groups C_nv;
//! - [`groups`]: finite closure, special groups, the plane-reflection group
//!   governing invariant lattices, Coxeter-relation verification and torus
//!   isometries;
//! - [`catalog`]: the 36 in-scope regular polyhedra of E^3 (finite, planar,
//!   blended and pure) with their generator triples, patch generation, the
//!   Petrie operation and translation subgroups;
//! - [`torus`]: quotient construction in T^3, polyhedron-axiom and
//!   regularity checking, and the lifting construction back to E^3;
//! - [`params`]: the parameter tables, their predicates, and brute-force
//!   oracle scans with table calibration;
//! - [`report`], [`off`]: machine-readable JSON reports and OFF mesh export.
//!
//! See the `examples/` directory for a runnable tour of each capability; the
//! thin `polytorus` binary exposes the same operations for scripting.

pub mod catalog;
pub mod classify;
pub mod geom;
pub mod groups;
pub mod hnf;
pub mod isometry;
pub mod lattice;
pub mod off;
pub mod params;
pub mod rat;
pub mod report;
pub mod surd;
pub mod torus;

pub use geom::{Mat2, Mat3, Vec2, Vec3};
pub use isometry::{Iso2, Iso3, IsometryKind, Order};
pub use lattice::{Lattice2, Lattice3, LatticeFamily};
pub use rat::Rat;
pub use surd::Surd;
