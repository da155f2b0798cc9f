//! Exact and numerical tools for invariant forms on finite-dimensional Lie
//! algebras and the periods of the associated cocycles.
//!
//! * [`lie`], [`exact`]: algebras by structure constants over exact rationals.
//! * [`invariants`]: the universal invariant form `V(k) = S²(k)/k·S²(k)`,
//!   factorization of invariant forms, the centroid.
//! * [`cohomology`]: Chevalley–Eilenberg cochains, the Cartan 3-cocycle,
//!   coboundary certificates.
//! * [`periods`]: periods of the Cartan 3-form over maps `S³ → SU(2)` and the
//!   loop-period relation for twisted families.
//! * [`twisted_loop`]: cokernels of `φ − id`, the twisted loop cocycle and the
//!   integration isomorphism on sampled sections.
//! * [`lattice`]: rank and discreteness certificates for finitely generated
//!   subgroups of `Rⁿ` (Hermite normal form, LLL).
//! * [`connection`]: curvature and commutator-loop holonomy on a local patch.
//! * [`json`], [`reproduce`], [`random`]: file formats, the acceptance table
//!   and seeded inputs.

#![allow(clippy::needless_range_loop)]

pub mod cohomology;
pub mod connection;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod json;
pub mod lattice;
pub mod lie;
pub mod periods;
pub mod quadrature;
pub mod quaternion;
pub mod random;
pub mod reproduce;
pub mod twisted_loop;
