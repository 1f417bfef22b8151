//! Canonical Green functions, canonical heights and preperiodic point sets
//! for endomorphisms of the projective line over Q and Q(sqrt 29), with
//! numerical checks for the failure of the Dirichlet property of canonical
//! compactified divisors.

pub mod canonical;
pub mod catalog;
pub mod dynsets;
pub mod error;
pub mod formats;
pub mod numberfield;
pub mod obstruction;
pub mod projline;

pub use error::{Error, Result};
