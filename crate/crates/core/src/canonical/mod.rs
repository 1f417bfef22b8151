//! Canonical local heights, Green functions and global canonical heights.

pub mod adelic;
pub mod bounds;
pub mod green;
pub mod height;
pub mod section;
pub mod speck;

pub use bounds::*;
pub use green::{escape_green, required_depth, truncation_bound, GreenEvaluator, GreenValue, MAX_DEPTH};
pub use height::{
    canonical_height, canonical_height_at_depth, canonical_height_k, naive_height_telescope, naive_weil_height, Depth,
    HeightContext, HeightValue,
};
pub use section::{section_norm, Section};
pub use speck::{principalize_spec_q, speck_degree, Exponent, LogReal, Principality, SpecKDivisor};
pub use adelic::AdelicDivisorP1;
