//! Effect algebras: the abstract interface, the finite carriers and the
//! relations derived from the partial sum.

mod axioms;
mod finite;
mod relations;
pub mod state;

pub use axioms::{validate_axioms, validate_axioms_with};
pub use finite::{FiniteAlgebra, Side};
pub use relations::{
    is_archimedean, is_principal, mackey_compatible, meet_brute_force, sharp_elements, torsion_witness,
};
pub use state::State;

use std::fmt::Debug;

/// A (possibly infinite) effect algebra.
///
/// `sum` is the partial operation; everything else must agree with it. For
/// instances with a positive [`EffectAlgebra::tolerance`], `same` and `leq`
/// compare up to that tolerance.
pub trait EffectAlgebra {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    /// `a ⊕ b`, or `None` when the sum is undefined.
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// The orthosupplement `a'`, the unique element with `a ⊕ a' = 1`.
    fn ortho(&self, a: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// `b ⊖ a`, defined exactly when `a ≤ b`.
    fn ominus(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem>;

    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn tolerance(&self) -> f64 {
        0.0
    }

    fn is_archimedean(&self) -> bool;

    fn describe(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.same(a, &self.zero())
    }

    fn orthogonal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.sum(a, b).is_some()
    }

    /// `n·a` when the n-fold sum exists.
    fn multiple(&self, a: &Self::Elem, n: u64) -> Option<Self::Elem> {
        let mut acc = self.zero();
        for _ in 0..n {
            acc = self.sum(&acc, a)?;
        }
        Some(acc)
    }
}
