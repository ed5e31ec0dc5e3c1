//! Effect algebras with compression bases.
//!
//! The crate builds finite effect algebras (Boolean algebras, products of
//! Łukasiewicz chains, horizontal sums, explicit tables) and the algebra of
//! real symmetric effect matrices, checks compression bases on them, and
//! constructs binary and rational spectral resolutions together with the
//! oracles that cross-check them.

pub mod algebra;
pub mod budget;
pub mod comparability;
pub mod compbase;
pub mod error;
pub mod group;
pub mod instances;
pub mod matrix;
pub mod report;
pub mod spectral;

pub use algebra::{EffectAlgebra, FiniteAlgebra, State};
pub use budget::Budget;
pub use compbase::{CompressionBase, FiniteBase};
pub use error::{Error, Result};
pub use report::{Report, ScanMode};
