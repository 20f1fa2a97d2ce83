//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by polytope, polynomial and ring computations.
#[derive(Debug, Error)]
pub enum Error {
    /// The affine hull of the input points is a proper subspace of R^n.
    #[error("point set is not full-dimensional: affine hull has dimension {found} < {ambient}")]
    NotFullDimensional { ambient: usize, found: usize },

    /// Points of differing ambient dimension were mixed.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A polynomial support point lies outside the target polytope.
    #[error("support point {point:?} lies outside the polytope")]
    SupportOutsidePolytope { point: Vec<i64> },

    /// The Newton polytope of the realized polynomial differs from the target,
    /// typically because a vertex coefficient is zero.
    #[error("Newton polytope mismatch: {reason}")]
    NewtonPolytopeMismatch { reason: String },

    /// No n+1 facets with (offset, normal) rows of rank n+1 exist. Cannot
    /// happen for a full-dimensional polytope; kept as a defensive check.
    #[error("no choice of {needed} facets with independent (offset, normal) rows")]
    NoIndependentFacetChoice { needed: usize },

    /// The span of the interior-generator families differs from the graded
    /// jacobian intersection; carries a coset witness in interior coordinates.
    #[error("proposition violated at grade {k}: span of generators is a proper subspace")]
    PropositionViolation { k: usize, witness: Vec<String> },

    /// A hypothesis required by the kernel theorem does not hold.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// A kernel element with pairing zero is nonzero in the jacobian quotient,
    /// or a pairing -1 element does not match any root representative.
    #[error("classification inconsistency: {0}")]
    ClassificationInconsistency(String),

    /// The base tetrahedron of an empty-simplex normal form has extra lattice
    /// points, so the (p, q) pair is outside the classified family.
    #[error("tetrahedron for (p={p}, q={q}) is not empty: {count} lattice points")]
    FormNotEmpty { p: i64, q: i64, count: usize },

    /// Invalid argument to a library entry point.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed input file or inline specification.
    #[error("parse error: {0}")]
    Parse(String),

    /// Filesystem failure while reading inputs or writing reports.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
