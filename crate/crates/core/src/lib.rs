//! Discrete models of surfaces whose diameter stays small while every
//! area-balanced separating cycle is forced to be long.
//!
//! The crate builds triangulated surfaces with edge lengths and face areas as
//! the primitive data (embedding coordinates are advisory), measures their
//! graph metric, searches for minimum-length balanced cuts, and evaluates the
//! combinatorial certificates that relate cut length to the height of the
//! ternary tree glued into the surface.
//!
//! Module map:
//!
//! - [`hyperbolic`] — closed-form geometry of the curvature `-K^2` disc and
//!   selection of the minimal curvature meeting the gluing constraints.
//! - [`tree`] — ternary tree combinatorics, Euler tours, interval pairing.
//! - [`mesh`] — the [`mesh::SurfaceMesh`] data structure, validation,
//!   diameter normalization, and the `SMESH` text format.
//! - [`builder`] — mesh constructors: glued hyperbolic sphere, flat cone,
//!   round sphere, flat torus, genus-g polygon gluings.
//! - [`metric`] — graph geodesics: shortest paths, eccentricities, diameter,
//!   distances between tagged edge chains.
//! - [`cuts`] — balanced separating cycles (exact and heuristic), Z2 filling
//!   areas, arc decompositions and the certificate inequalities.
//! - [`powergap`] — exact verification of the signed power-sum gap bound.
//! - [`subdivide`] — constructive pipeline splitting any surface into two
//!   near-equal-area regions by a short curve: greedy homology basis,
//!   cut-to-disc, recursive balanced splitting, shelling.

pub mod builder;
pub mod cuts;
pub mod error;
pub mod hyperbolic;
pub mod mesh;
pub mod metric;
pub mod powergap;
pub mod subdivide;
#[doc(hidden)]
pub mod testutil;
pub mod tree;

pub use error::{Error, Result};
