//! Numerical projective geometry of split curves over the complex numbers:
//! explicit rational normal curves, theta-hyperplanes of the two extreme
//! types, the degenerate hyperelliptic configurations, and the
//! reconstruction of a split curve from its configuration at genus 3 and 4.
//!
//! Everything here works in complex double precision; exactness claims live
//! in the combinatorial modules. All solves reduce to small linear systems,
//! quadratics and cubic pencils, and all acceptance thresholds are explicit
//! in [`Tolerances`].

pub mod config;
pub mod curve;
pub mod linalg;
pub mod poly;
pub mod reconstruct;
pub mod theta;

pub use config::{configuration_distance, ConfigEntry, HyperplaneConfiguration};
pub use curve::{build_split_curve, random_split_curve, ProjectiveSplitCurve, RationalNormalCurve};
pub use reconstruct::{recover_nodes, reconstruct_g3, reconstruct_g4};
pub use theta::{theta_hat, theta_hat_hyperelliptic, theta_type_g1, theta_type_g3};

/// Numeric thresholds used by the geometry routines.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// A point lies on a hyperplane when the normalized pairing residual is
    /// below this.
    pub containment: f64,
    /// A restriction is tangent when its discriminant residual is below this.
    pub tangency: f64,
    /// Candidate intersection points closer than this are one point.
    pub clustering: f64,
    /// Distinct configurations must be at least this far apart.
    pub uniqueness: f64,
    /// Construction-time consistency residuals (nodes on both components).
    pub construction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            containment: 1e-8,
            tangency: 1e-8,
            clustering: 1e-6,
            uniqueness: 1e-3,
            construction: 1e-10,
        }
    }
}
