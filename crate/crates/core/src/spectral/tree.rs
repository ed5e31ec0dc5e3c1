use super::dyadic::BinaryString;
use crate::comparability::split;
use crate::compbase::CompressionBase;
use crate::error::{Error, Result};

/// One nonzero node of a splitting tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Node<T> {
    pub k: u64,
    pub u: T,
    pub c: T,
}

/// The families `u_w`, `c_w` to depth `n`. Nodes with `u_w = 0` (and hence
/// `c_w = 0`) are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingTree<T> {
    depth: u32,
    levels: Vec<Vec<Node<T>>>,
    zero: T,
}

impl<T: Clone> SplittingTree<T> {
    /// Assembles a tree from explicit layers; entries must be sorted by `k`.
    pub fn from_levels(levels: Vec<Vec<Node<T>>>, zero: T) -> Self {
        SplittingTree {
            depth: levels.len() as u32 - 1,
            levels,
            zero,
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    fn node(&self, w: &BinaryString) -> Option<&Node<T>> {
        let level = self.levels.get(w.len() as usize)?;
        level
            .binary_search_by_key(&w.k(), |n| n.k)
            .ok()
            .map(|i| &level[i])
    }

    pub fn u(&self, w: &BinaryString) -> T {
        self.node(w).map_or_else(|| self.zero.clone(), |n| n.u.clone())
    }

    pub fn c(&self, w: &BinaryString) -> T {
        self.node(w).map_or_else(|| self.zero.clone(), |n| n.c.clone())
    }

    /// Nonzero nodes at length `n`, ordered by `k(w)`.
    pub fn layer(&self, n: u32) -> &[Node<T>] {
        &self.levels[n as usize]
    }
}

/// Builds the tree by repeated splitting and checks the layer partition,
/// nesting and `u_w ∈ P(a)`.
pub fn splitting_tree<B: CompressionBase>(cb: &B, a: &B::Elem, n: u32) -> Result<SplittingTree<B::Elem>> {
    if n > super::dyadic::MAX_LEVEL {
        return Err(Error::InvalidParameter(format!("depth {n} is too large")));
    }
    let zero = cb.zero();
    let root = cb.projection_cover(a)?;
    let mut levels = vec![Vec::new()];
    if !cb.is_zero(&root) {
        levels[0].push(Node { k: 0, u: root.clone(), c: a.clone() });
    }
    for l in 0..n as usize {
        let mut next = Vec::with_capacity(levels[l].len() * 2);
        for node in &levels[l] {
            let s = split(cb, &node.c, &node.u)?;
            for (bit, u, c) in [(0, s.u0, s.c0), (1, s.u1, s.c1)] {
                if !cb.is_zero(&u) {
                    next.push(Node { k: node.k * 2 + bit, u, c });
                } else if !cb.is_zero(&c) {
                    return Err(Error::Inconsistent(format!(
                        "c = {} under u = 0",
                        cb.describe(&c)
                    )));
                }
            }
        }
        levels.push(next);
    }
    let tree = SplittingTree::from_levels(levels, zero);
    check_tree(cb, a, &root, &tree)?;
    Ok(tree)
}

fn check_tree<B: CompressionBase>(cb: &B, a: &B::Elem, cover: &B::Elem, tree: &SplittingTree<B::Elem>) -> Result<()> {
    let pa = cb.bicommutant(a)?;
    for n in 0..=tree.depth() {
        let mut total = cb.zero();
        for node in tree.layer(n) {
            let w = BinaryString::new(node.k, n)?;
            total = cb.sum(&total, &node.u).ok_or_else(|| {
                Error::Inconsistent(format!("u_{w} is not orthogonal to the rest of its layer"))
            })?;
            if !cb.is_projection(&node.u) || !pa.iter().any(|p| cb.same(p, &node.u)) {
                return Err(Error::Inconsistent(format!("u_{w} = {} is not in P(a)", cb.describe(&node.u))));
            }
            if !cb.leq(&node.c, &node.u) {
                return Err(Error::Inconsistent(format!("c_{w} ≰ u_{w}")));
            }
            if n > 0 {
                let parent = BinaryString::new(node.k / 2, n - 1)?;
                if !cb.leq(&node.u, &tree.u(&parent)) {
                    return Err(Error::Inconsistent(format!("u_{w} ≰ u_{parent}")));
                }
            }
        }
        if !cb.same(&total, cover) {
            return Err(Error::Inconsistent(format!(
                "layer {n} sums to {}, not a° = {}",
                cb.describe(&total),
                cb.describe(cover)
            )));
        }
    }
    Ok(())
}
