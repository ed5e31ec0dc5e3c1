use super::dyadic::{BinaryString, Dyadic, MAX_LEVEL};
use super::tree::{splitting_tree, SplittingTree};
use crate::compbase::CompressionBase;
use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{One, Zero};

/// `p_λ` for every dyadic `λ` of level at most `depth`.
///
/// Each level stores the prefix sums `(a°)' ⊕ u_{k_1} ⊕ … ⊕ u_{k_i}` over its
/// nonzero nodes, so `p_{j/2^L}` is a binary search away.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResolution<T> {
    depth: u32,
    bottom: T,
    top: T,
    levels: Vec<(Vec<u64>, Vec<T>)>,
}

impl<T: Clone> SpectralResolution<T> {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `p_λ`; `None` when the level of `λ` exceeds the depth.
    pub fn get(&self, lambda: Dyadic) -> Option<T> {
        if lambda.is_one() {
            return Some(self.top.clone());
        }
        if lambda.level() == 0 {
            return Some(self.bottom.clone());
        }
        let (ks, prefix) = self.levels.get(lambda.level() as usize)?;
        let below = ks.partition_point(|&k| k < lambda.numerator());
        Some(prefix[below].clone())
    }

    /// All entries in increasing `λ`.
    pub fn entries(&self) -> impl Iterator<Item = (Dyadic, T)> + '_ {
        Dyadic::all_up_to(self.depth).map(move |l| (l, self.get(l).expect("level within depth")))
    }

    /// Dense family indexed by `j` for `λ = j/2^depth`.
    pub fn to_family(&self) -> DyadicFamily<T> {
        DyadicFamily {
            depth: self.depth,
            values: self.entries().map(|(_, p)| p).collect(),
        }
    }
}

/// A candidate family `{p_λ}` on the dyadics of level at most `depth`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicFamily<T> {
    pub depth: u32,
    pub values: Vec<T>,
}

impl<T: Clone> DyadicFamily<T> {
    pub fn get(&self, lambda: Dyadic) -> Option<&T> {
        self.values.get(lambda.at_level(self.depth)? as usize)
    }
}

/// The binary resolution of `a` to depth `n`.
pub fn binary_resolution<B: CompressionBase>(cb: &B, a: &B::Elem, n: u32) -> Result<SpectralResolution<B::Elem>> {
    let tree = splitting_tree(cb, a, n)?;
    from_tree(cb, a, &tree)
}

/// `p_{λ(w1)} = (a°)' ⊕ ⨁_{w̃ ≤ w0} u_w̃` at every level, then monotonicity.
pub fn from_tree<B: CompressionBase>(
    cb: &B,
    a: &B::Elem,
    tree: &SplittingTree<B::Elem>,
) -> Result<SpectralResolution<B::Elem>> {
    let bottom = cb.ortho(&cb.projection_cover(a)?);
    let mut levels = vec![(Vec::new(), vec![bottom.clone()])];
    for l in 1..=tree.depth() {
        let layer = tree.layer(l);
        let mut ks = Vec::with_capacity(layer.len());
        let mut prefix = vec![bottom.clone()];
        for node in layer {
            let next = cb.sum(prefix.last().expect("nonempty"), &node.u).ok_or_else(|| {
                Error::Inconsistent(format!("u_{} not orthogonal to p below it", BinaryString::new(node.k, l).expect("fits")))
            })?;
            ks.push(node.k);
            prefix.push(next);
        }
        levels.push((ks, prefix));
    }
    let res = SpectralResolution {
        depth: tree.depth(),
        bottom,
        top: cb.one(),
        levels,
    };
    let mut prev: Option<(Dyadic, B::Elem)> = None;
    for (l, p) in res.entries() {
        if !cb.is_projection(&p) {
            return Err(Error::Inconsistent(format!("p_{l} is not a projection")));
        }
        if let Some((m, q)) = &prev {
            if !cb.leq(q, &p) {
                return Err(Error::Inconsistent(format!("p_{m} ≰ p_{l}")));
            }
        }
        prev = Some((l, p));
    }
    Ok(res)
}

/// Outcome of a rational query.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalValue<T> {
    pub projection: T,
    pub depth: u32,
    pub stable: bool,
}

/// `⋀_{μ > λ} p_μ` over dyadic `μ` of level at most `n`, compared with the
/// same meet at level `n - 1`.
pub fn rational_resolution<B: CompressionBase>(
    cb: &B,
    a: &B::Elem,
    lambda: Ratio<i64>,
    n: u32,
) -> Result<RationalValue<B::Elem>> {
    if !cb.is_archimedean() {
        return Err(Error::NotArchimedean);
    }
    if lambda < Ratio::zero() || lambda > Ratio::one() {
        return Err(Error::InvalidParameter(format!("λ = {lambda} is outside [0, 1]")));
    }
    if n == 0 || n > MAX_LEVEL.min(40) {
        return Err(Error::InvalidParameter(format!("depth {n} out of range for a rational query")));
    }
    if lambda == Ratio::one() {
        return Ok(RationalValue { projection: cb.one(), depth: n, stable: true });
    }
    let res = binary_resolution(cb, a, n)?;
    let at = |level: u32| -> B::Elem {
        // smallest j with j/2^level > λ
        let scaled = lambda * Ratio::from_integer(1i64 << level);
        let first = scaled.floor().to_integer() as u64 + 1;
        let mut acc = cb.one();
        for j in first..=1u64 << level {
            let p = res.get(Dyadic::new(j, level).expect("in range")).expect("within depth");
            acc = cb.meet_projections(&acc, &p);
        }
        acc
    };
    let fine = at(n);
    let coarse = at(n - 1);
    if !cb.same(&fine, &coarse) {
        return Err(Error::Unstable(n));
    }
    Ok(RationalValue { projection: fine, depth: n, stable: true })
}
