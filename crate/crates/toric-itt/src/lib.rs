//! Jacobian rings, interior (mixed-Hodge) modules and period-map kernels
//! for nondegenerate Laurent-polynomial hypersurfaces in the algebraic
//! torus, computed exactly from lattice-polytope data.
//!
//! The pipeline: a lattice polytope Δ and a Laurent polynomial f with
//! Newton polytope Δ determine a graded jacobian ring whose pieces carry
//! the Hodge data of the hypersurface {f = 0}. The kernel of the period-map
//! differential is computed twice, by a closed-form facet-shift enumeration
//! and by a definitional brute-force linear system, and the two are checked
//! against each other. An audit layer verifies the supporting empty-simplex
//! combinatorics and GIT stability criteria.

pub mod audit;
pub mod cache;
pub mod cli;
pub mod error;
pub mod jacobian;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod period;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
