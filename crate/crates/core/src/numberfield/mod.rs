//! Exact arithmetic: rationals, the quadratic order Z[e] with e^2 = 5e + 1,
//! general quadratic field elements, places of Q and p-adic valuations.

mod factor;
mod field;
pub mod padic;
mod place;
mod poly;
mod quadfield;
mod quadint;
mod rational;

pub use factor::{factor_rational_poly, primitive_integer_coeffs};
pub use field::{bigint_log, rational_log_abs, rational_to_f64, Field};
pub use padic::{padic_ord, quadratic_root_valuations};
pub use place::Place;
pub use poly::Poly;
pub use quadfield::{squarefree_decompose, QuadElem};
pub use quadint::{QuadInt, EPS_DISC};
pub use rational::{format_rational, is_integer, parse_rational, rational_from_f64};

/// Shorthand for the exact rationals.
pub type Q = num_rational::BigRational;

/// N(a + b e) = a^2 + 5ab - b^2.
pub fn quad_norm(x: &QuadInt) -> num_bigint::BigInt {
    x.norm()
}

pub fn is_unit(x: &QuadInt) -> bool {
    x.is_unit()
}
