//! Minimum-mass shell structures on tetrahedral meshes.
//!
//! Given a tetrahedralized solid with an embedded skeleton, boundary
//! conditions, and external-force descriptions, this crate computes a
//! minimum-mass shell (single inner cavity, intersection-free inner
//! boundary) whose maximum von Mises stress stays below an allowable
//! stress. The shell is parametrized by a harmonic temperature field:
//! Dirichlet values on the boundary and skeleton determine an interior
//! field whose level set at a cut-off temperature forms the inner cavity
//! boundary. A gradient-free loop adjusts a global temperature budget from
//! the critical stress and redistributes it over the boundary by projected
//! stress.
//!
//! Module map:
//! - [`mesh`]: the fixed volumetric mesh, vertex classes, quadratic
//!   overlay, graph distances
//! - [`heat`]: Laplace solve with a reusable interior factorization
//! - [`density`]: temperature -> per-element density, isosurface extraction
//! - [`fem`]: SIMP-interpolated linear elasticity on 10-node tets
//! - [`ebs`]: max-stress envelope and effective boundary stress
//! - [`optimizer`]: the outer budget loop
//! - [`surrogate`]: force-location-uncertainty stress estimation
//! - [`config`]: problem configuration and its flat key-value format

pub mod error;
pub mod fixtures;
pub mod mesh;
pub mod par;
pub mod sparse;

pub use error::{Error, Result};
