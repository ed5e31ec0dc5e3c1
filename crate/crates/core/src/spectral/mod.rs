//! Binary strings, splitting trees, binary and rational spectral
//! resolutions, the characterization check and expectation bounds.

mod dyadic;
mod expectation;
mod resolution;
mod tree;
mod verify;

pub use dyadic::{string_calc, BinaryString, Dyadic, StringCalc, MAX_LEVEL};
pub use expectation::{expectation_bounds, expectation_bounds_real};
pub use resolution::{binary_resolution, from_tree, rational_resolution, DyadicFamily, RationalValue, SpectralResolution};
pub use tree::{splitting_tree, Node, SplittingTree};
pub use verify::{apply_fw, commutes_iff_spectrum, verify_resolution, CLAUSES};

pub const DEFAULT_DEPTH_FINITE: u32 = 16;
pub const DEFAULT_DEPTH_MATRIX: u32 = 8;
