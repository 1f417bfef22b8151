//! Preperiodic points, torsion of Lattès curves, Julia-set samples and
//! their statistics.

pub mod cloud;
pub mod elliptic;
pub mod enumerate;
pub mod equidist;
pub mod esssupport;
pub mod julia;
pub mod roots;

pub use cloud::{chordal, to_sphere, CloudPoint, PointCloud, Provenance};
pub use elliptic::{torsion_x_points, EllipticCurveAB, MAX_TORSION};
pub use enumerate::{enumerate_rational_points, preperiodic_search, PreperiodicPoint};
pub use equidist::{equidistribution_discrepancy, sphere_coverage, Discrepancy, Reference};
pub use esssupport::{essential_support_sample, DEFAULT_BUDGET, DEFAULT_LADDER};
pub use julia::{backward_orbit_sample, is_exceptional, preimages};
pub use roots::{polynomial_roots, real_polynomial_roots, relative_residual};
