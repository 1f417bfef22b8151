//! Exact geometry of P^1: points, endomorphisms, resultants, orbits and
//! divisor pullback.

mod divisor;
mod form;
mod map;
mod orbit;
mod point;
mod resultant;

pub use divisor::{pullback_and_multiplier, DivisorP1, FormalProduct};
pub use form::BinaryForm;
pub use map::{ComplexMap, RationalMap};
pub use orbit::{is_preperiodic_alg, is_preperiodic_capped, is_preperiodic_exact, OrbitVerdict, DEFAULT_BIT_CAP};
pub use point::{AlgPoint, ProjPoint, QuadraticPoint};
pub use resultant::{bezout_identities, determinant, sylvester_matrix, sylvester_resultant, BezoutPair};
