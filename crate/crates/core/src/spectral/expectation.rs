use super::dyadic::Dyadic;
use super::tree::splitting_tree;
use crate::algebra::state::Q;
use crate::algebra::State;
use crate::compbase::{CompressionBase, FiniteBase};
use crate::error::{Error, Result};
use num_traits::Zero;

/// `lo = Σ_{|w|=n} λ(w) s(u_w)` and `hi = lo + 2^{-n}`, exactly.
pub fn expectation_bounds(cb: &FiniteBase, a: usize, s: &State, n: u32) -> Result<(Q, Q)> {
    if s.values().len() != cb.algebra().size() {
        return Err(Error::InvalidState(format!(
            "state has {} values, carrier has {}",
            s.values().len(),
            cb.algebra().size()
        )));
    }
    if n > 30 {
        return Err(Error::InvalidParameter(format!("depth {n} exceeds 30 for exact bounds")));
    }
    let tree = splitting_tree(cb, &a, n)?;
    let mut lo = Q::zero();
    for node in tree.layer(n) {
        lo += Dyadic::new(node.k, n)?.to_ratio() * s.value(node.u);
    }
    Ok((lo, lo + Q::new(1, 1i64 << n)))
}

/// The same bounds for an instance whose states are real valued.
pub fn expectation_bounds_real<B, S>(cb: &B, a: &B::Elem, s: S, n: u32) -> Result<(f64, f64)>
where
    B: CompressionBase,
    S: Fn(&B::Elem) -> f64,
{
    let tree = splitting_tree(cb, a, n)?;
    let lo = tree
        .layer(n)
        .iter()
        .map(|node| Dyadic::new(node.k, n).map(|l| l.to_f64() * s(&node.u)))
        .sum::<Result<f64>>()?;
    Ok((lo, lo + (-(n as f64)).exp2()))
}
