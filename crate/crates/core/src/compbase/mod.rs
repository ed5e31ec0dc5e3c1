//! Compressions, compression bases, commutants, blocks and projection covers.

mod blocks;
mod classify;
mod finite;
mod oml;
mod validate;

pub use blocks::{blocks, c_block};
pub use classify::{classify_map, MapClass};
pub use finite::{center, FiniteBase};
pub use oml::{check_oml, has_pcp};
pub use validate::{validate_base, validate_base_with};

use crate::algebra::EffectAlgebra;
use crate::error::Result;

/// An effect algebra together with a compression base `(J_p)_{p∈P}`.
pub trait CompressionBase: EffectAlgebra {
    fn is_projection(&self, p: &Self::Elem) -> bool;

    /// `J_p(a)`. `p` must be a projection.
    fn compress(&self, p: &Self::Elem, a: &Self::Elem) -> Self::Elem;

    /// `a ∈ C(p)`, i.e. `a = J_p(a) ⊕ J_{p'}(a)`.
    fn in_commutant(&self, a: &Self::Elem, p: &Self::Elem) -> bool {
        let pc = self.ortho(p);
        self.sum(&self.compress(p, a), &self.compress(&pc, a))
            .is_some_and(|s| self.same(&s, a))
    }

    /// The least projection above `a`.
    fn projection_cover(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// `(b - a)_+` for a commuting pair.
    fn positive_part(&self, b: &Self::Elem, a: &Self::Elem) -> Result<Self::Elem>;

    /// `eCf`: the bicommutants of `e` and `f` are pairwise compatible.
    fn commute(&self, e: &Self::Elem, f: &Self::Elem) -> Result<bool>;

    /// Meet of two commuting projections.
    fn meet_projections(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        self.compress(p, q)
    }

    /// The bicommutant `P(a)`.
    fn bicommutant(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>>;

    fn has_b_property(&self, a: &Self::Elem) -> Result<bool>;

    /// `P_≤(e, f)`.
    fn p_le_set(&self, e: &Self::Elem, f: &Self::Elem) -> Result<Vec<Self::Elem>>;
}
