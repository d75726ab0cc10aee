//! Exact-arithmetic combinatorics and desk-scale geometry of stable curves.
//!
//! The crate is organized around five subsystems:
//!
//! - [`graph`]: genus-decorated multigraphs (dual graphs of stable curves),
//!   with validated construction, normalization, stabilization, canonical
//!   forms and exhaustive enumeration per genus.
//! - [`spin`]: admissible node sets, exponents and exponent sets, per-support
//!   spin counts, multiplicity sets, split-curve statistics, the split/polygonal
//!   classification, and the domination order on integer sets.
//! - [`git`]: exact rational evaluation of the stability criterion for the
//!   hyperplane configurations attached to split and hyperelliptic-split
//!   curves, with an independent brute-force incidence oracle.
//! - [`geom`]: complex-numeric construction of projective split curves, their
//!   theta-hyperplanes of the two extreme types, degenerate hyperelliptic
//!   configurations, and reconstruction of the curve from its configuration
//!   at genus 3 and 4.
//! - [`bundle`]: splitting-type calculus for bundles on the projective line
//!   and the negativity certificates for the restricted modified normal
//!   bundle of a split curve.
//!
//! All combinatorial routines use exact integer arithmetic (`u128`/`i128`
//! wide enough for every supported genus); stability comparisons use exact
//! rationals; only the projective geometry in [`geom`] works in complex
//! floating point, with explicit tolerances.

pub mod bundle;
pub mod enumerate;
pub mod exact;
pub mod geom;
pub mod git;
pub mod graph;
pub mod spin;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed graph data: bad index, disconnected where connectivity is
    /// required, stability violation, genus out of range.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    /// Malformed operation input (bad edge index, mismatched ranks, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The request is out of the supported range (enumeration genus, mask width).
    #[error("infeasible request: {0}")]
    Infeasible(String),
    /// A numerical solve was too ill-conditioned to trust.
    #[error("numerical conditioning failure: {0}")]
    Numerical(String),
    /// A genericity assumption failed on concrete data (coincident solutions,
    /// degenerate intersections, tangency at a node).
    #[error("genericity failure: {0}")]
    Genericity(String),
    /// Reconstruction from a configuration failed with diagnostics.
    #[error("reconstruction failure: {0}")]
    Reconstruction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
